#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/random.hpp"
#include "fisherrao/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace fisherrao::families {

/// Gamma distributions with shape kappa and mean gamma (rate nu = kappa / gamma).
/// Geometry runs in (kappa, gamma) coordinates, where the metric is diagonal.
struct GammaPoint {
  double kappa = 1.0;
  double gamma = 1.0;

  [[nodiscard]] Vector coords() const { return Vector{{kappa, gamma}}; }
  static GammaPoint from(const Vector& v) { return {v[0], v[1]}; }
};

class Gamma {
 public:
  static void check(const GammaPoint& p, const char* where) {
    if (!std::isfinite(p.kappa) || !std::isfinite(p.gamma) || !(p.kappa > 0.0) || !(p.gamma > 0.0)) {
      throw DomainError(std::string(where) + ": gamma parameters must be positive and finite");
    }
  }

  [[nodiscard]] static double log_pdf(const GammaPoint& p, double x) {
    check(p, "log_pdf");
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    const double k = p.kappa;
    return k * std::log(k / p.gamma) - numerics::ln_gamma(k) + (k - 1.0) * std::log(x) - k * x / p.gamma;
  }

  [[nodiscard]] static double pdf(const GammaPoint& p, double x) {
    if (!(x > 0.0)) {
      check(p, "pdf");
      return 0.0;
    }
    return std::exp(log_pdf(p, x));
  }

  /// (kappa, nu) -> (kappa, gamma = kappa / nu).
  [[nodiscard]] static Vector natural_to_scale(const Vector& natural) {
    if (natural.size() != 2 || !(natural[0] > 0.0) || !(natural[1] > 0.0)) {
      throw DomainError("natural_to_scale: expected (kappa, nu) with both positive");
    }
    return Vector{{natural[0], natural[0] / natural[1]}};
  }

  [[nodiscard]] static Vector scale_to_natural(const Vector& scale) {
    if (scale.size() != 2 || !(scale[0] > 0.0) || !(scale[1] > 0.0)) {
      throw DomainError("scale_to_natural: expected (kappa, gamma) with both positive");
    }
    return Vector{{scale[0], scale[0] / scale[1]}};
  }

  [[nodiscard]] static Matrix metric_matrix(const GammaPoint& p) {
    check(p, "metric_matrix");
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = numerics::trigamma(p.kappa) - 1.0 / p.kappa;
    g(1, 1) = p.kappa / (p.gamma * p.gamma);
    return g;
  }

  /// Metric of the (kappa, nu) chart.
  [[nodiscard]] static Matrix natural_metric_matrix(const Vector& natural) {
    const double k = natural[0];
    const double nu = natural[1];
    Matrix g(2, 2);
    g << numerics::trigamma(k), -1.0 / nu, -1.0 / nu, k / (nu * nu);
    return g;
  }

  [[nodiscard]] static ChristoffelTensor christoffels(const GammaPoint& p) {
    check(p, "christoffels");
    const double k = p.kappa;
    const double g = p.gamma;
    const double c = k * numerics::trigamma(k) - 1.0;
    ChristoffelTensor t(2);
    t(0, 0, 0) = (numerics::polygamma(2, k) * k * k + 1.0) / (2.0 * k * c);
    t(0, 1, 1) = -k / (2.0 * g * g * c);
    t(1, 1, 1) = -1.0 / g;
    t.set_symmetric(1, 0, 1, 1.0 / (2.0 * k));
    return t;
  }

  /// sqrt(kappa) |log(gamma1 / gamma2)|, the distance inside a fixed-shape slice.
  [[nodiscard]] static double fixed_kappa_dist(double gamma1, double gamma2, double kappa) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0) || !(kappa > 0.0)) {
      throw DomainError("fixed_kappa_dist: arguments must be positive");
    }
    return std::sqrt(kappa) * std::abs(std::log(gamma1 / gamma2));
  }

  [[nodiscard]] static double sectional_curvature(const GammaPoint& p) {
    check(p, "sectional_curvature");
    const double k = p.kappa;
    const double c = k * numerics::trigamma(k) - 1.0;
    return (numerics::trigamma(k) + k * numerics::polygamma(2, k)) / (4.0 * c * c);
  }

  [[nodiscard]] static std::vector<double> sample(const GammaPoint& p, int count, numerics::Rng& rng) {
    check(p, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(numerics::gamma_variate(rng, p.kappa, p.gamma / p.kappa));
    return out;
  }

  [[nodiscard]] static ManifoldSpec manifold() {
    ManifoldSpec spec;
    spec.name = "gamma";
    spec.dim = 2;
    spec.belongs = [](const Vector& x) { return x.size() == 2 && x.allFinite() && x[0] > 0.0 && x[1] > 0.0; };
    spec.metric = [](const Vector& x) { return metric_matrix(GammaPoint::from(x)); };
    spec.metric_derivative = [](const Vector& x) {
      const double k = x[0];
      const double g = x[1];
      Matrix dk = Matrix::Zero(2, 2);
      dk(0, 0) = numerics::polygamma(2, k) + 1.0 / (k * k);
      dk(1, 1) = 1.0 / (g * g);
      Matrix dg = Matrix::Zero(2, 2);
      dg(1, 1) = -2.0 * k / (g * g * g);
      return std::vector<Matrix>{dk, dg};
    };
    spec.christoffels = [](const Vector& x) { return christoffels(GammaPoint::from(x)); };
    spec.set_positive_orthant();
    return spec;
  }

  /// The same manifold in (kappa, nu) coordinates.
  [[nodiscard]] static ManifoldSpec natural_manifold() {
    ManifoldSpec spec;
    spec.name = "gamma (natural chart)";
    spec.dim = 2;
    spec.belongs = [](const Vector& x) { return x.size() == 2 && x.allFinite() && x[0] > 0.0 && x[1] > 0.0; };
    spec.metric = [](const Vector& x) { return natural_metric_matrix(x); };
    spec.metric_derivative = [](const Vector& x) {
      const double k = x[0];
      const double nu = x[1];
      Matrix dk = Matrix::Zero(2, 2);
      dk(0, 0) = numerics::polygamma(2, k);
      dk(1, 1) = 1.0 / (nu * nu);
      Matrix dnu(2, 2);
      dnu << 0.0, 1.0 / (nu * nu), 1.0 / (nu * nu), -2.0 * k / (nu * nu * nu);
      return std::vector<Matrix>{dk, dnu};
    };
    spec.set_positive_orthant();
    return spec;
  }
};

}  // namespace fisherrao::families
