#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/quadrature.hpp"
#include "fisherrao/numerics/random.hpp"
#include "fisherrao/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace fisherrao::families {

/// Dirichlet distributions on the (n-1)-simplex, parameterized by the
/// concentrations alpha in (0, inf)^n. The beta family is the case n = 2.
class Dirichlet {
 public:
  static constexpr double kSimplexTolerance = 1e-9;
  static constexpr double kMaxConcentration = 1e8;

  explicit Dirichlet(int n) : n_(n) {
    if (n < 2) throw DomainError("dirichlet: need at least 2 concentration parameters");
  }
  static Dirichlet beta() { return Dirichlet(2); }

  [[nodiscard]] int n() const { return n_; }

  [[nodiscard]] bool belongs(const Vector& alpha) const {
    return alpha.size() == n_ && alpha.allFinite() && (alpha.array() > 0.0).all();
  }

  void check(const Vector& alpha, const char* where) const {
    if (alpha.size() != n_) {
      throw DomainError(std::string(where) + ": expected " + std::to_string(n_) + " concentration parameters, got " +
                        std::to_string(alpha.size()));
    }
    if (!belongs(alpha)) {
      throw DomainError(std::string(where) + ": concentrations " + fisherrao::detail::format_vector(alpha) +
                        " must be positive");
    }
  }

  [[nodiscard]] double log_pdf(const Vector& alpha, const Vector& x) const {
    check(alpha, "pdf");
    if (x.size() != n_ || !x.allFinite() || (x.array() < 0.0).any() || std::abs(x.sum() - 1.0) > kSimplexTolerance) {
      throw DomainError("pdf: " + fisherrao::detail::format_vector(x) + " is not on the simplex");
    }
    double out = numerics::ln_gamma(alpha.sum());
    for (int i = 0; i < n_; ++i) {
      out -= numerics::ln_gamma(alpha[i]);
      if (alpha[i] != 1.0) out += (alpha[i] - 1.0) * std::log(x[i]);
    }
    return out;
  }

  [[nodiscard]] double pdf(const Vector& alpha, const Vector& x) const { return std::exp(log_pdf(alpha, x)); }

  /// Beta(a, b) density at x in [0, 1].
  [[nodiscard]] static double beta_pdf(double a, double b, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta pdf: x = " + std::to_string(x) + " is outside [0, 1]");
    return Dirichlet(2).pdf(Vector{{a, b}}, Vector{{x, 1.0 - x}});
  }

  /// diag(psi'(alpha_i)) - psi'(sum alpha) 1 1^T.
  [[nodiscard]] Matrix metric_matrix(const Vector& alpha) const {
    check(alpha, "metric_matrix");
    return metric_unchecked(alpha);
  }

  /// eta(x) = integral from 1 to x of sqrt(psi'(t)) dt; eta(1) = 0.
  [[nodiscard]] static double minkowski_coord(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("minkowski_coord: argument must be positive");
    return numerics::integrate_adaptive([](double t) { return std::sqrt(numerics::trigamma(t)); }, 1.0, x);
  }

  /// (eta(alpha_1), ..., eta(alpha_n), eta(sum alpha)); the manifold is
  /// isometric to its image with the last coordinate timelike.
  [[nodiscard]] Vector minkowski_embedding(const Vector& alpha) const {
    check(alpha, "minkowski_embedding");
    Vector out(n_ + 1);
    for (int i = 0; i < n_; ++i) out[i] = minkowski_coord(alpha[i]);
    out[n_] = minkowski_coord(alpha.sum());
    return out;
  }

  /// Differential of the embedding applied to a tangent vector.
  [[nodiscard]] Vector minkowski_pushforward(const Vector& alpha, const Vector& v) const {
    check(alpha, "minkowski_pushforward");
    Vector out(n_ + 1);
    for (int i = 0; i < n_; ++i) out[i] = std::sqrt(numerics::trigamma(alpha[i])) * v[i];
    out[n_] = std::sqrt(numerics::trigamma(alpha.sum())) * v.sum();
    return out;
  }

  [[nodiscard]] static double minkowski_inner(const Vector& a, const Vector& b) {
    const Eigen::Index last = a.size() - 1;
    return a.head(last).dot(b.head(last)) - a[last] * b[last];
  }

  [[nodiscard]] std::vector<Vector> sample(const Vector& alpha, int count, numerics::Rng& rng) const {
    check(alpha, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) {
      Vector x(n_);
      for (int i = 0; i < n_; ++i) x[i] = numerics::gamma_variate(rng, alpha[i]);
      out.push_back(x / x.sum());
    }
    return out;
  }

  /// -Gamma(v, v). The lowered symbols are
  /// Gamma_{k,ij} = (delta_ijk psi''(alpha_k) - psi''(sum alpha)) / 2, and the
  /// metric is diagonal minus rank one, so the solve is Sherman-Morrison.
  [[nodiscard]] Vector acceleration(const Vector& alpha, const Vector& v) const {
    const double total = alpha.sum();
    const double c = numerics::trigamma(total);
    const double c2 = numerics::polygamma(2, total);
    const double vs = v.sum();
    Vector d(n_);
    Vector h(n_);
    for (int k = 0; k < n_; ++k) {
      d[k] = numerics::trigamma(alpha[k]);
      h[k] = 0.5 * (numerics::polygamma(2, alpha[k]) * v[k] * v[k] - c2 * vs * vs);
    }
    const Vector dh = h.cwiseQuotient(d);
    const Vector d1 = d.cwiseInverse();
    const double denom = 1.0 - c * d1.sum();
    if (!(std::abs(denom) > 0.0)) throw SingularMetric("dirichlet: metric is numerically singular");
    return -(dh + d1 * (c * dh.sum() / denom));
  }

  [[nodiscard]] ManifoldSpec manifold() const {
    ManifoldSpec spec;
    const Dirichlet self = *this;
    const int n = n_;
    spec.name = n == 2 ? "beta" : "dirichlet(" + std::to_string(n) + ")";
    spec.dim = n;
    spec.belongs = [self](const Vector& a) { return self.belongs(a); };
    spec.metric = [self](const Vector& a) { return self.metric_unchecked(a); };
    spec.metric_derivative = [n](const Vector& a) {
      const double c2 = numerics::polygamma(2, a.sum());
      std::vector<Matrix> out(static_cast<std::size_t>(n), Matrix::Constant(n, n, -c2));
      for (int l = 0; l < n; ++l) out[static_cast<std::size_t>(l)](l, l) += numerics::polygamma(2, a[l]);
      return out;
    };
    spec.geodesic_acceleration = [self](const Vector& a, const Vector& v) { return self.acceleration(a, v); };
    spec.set_positive_orthant();
    // Beyond this the metric is a difference of nearly equal trigamma values
    // and keeps only a few significant digits; geodesics are stopped there.
    spec.upper_bounds = Vector::Constant(n, kMaxConcentration);
    return spec;
  }

 private:
  [[nodiscard]] Matrix metric_unchecked(const Vector& alpha) const {
    Matrix g = Matrix::Constant(n_, n_, -numerics::trigamma(alpha.sum()));
    for (int i = 0; i < n_; ++i) g(i, i) += numerics::trigamma(alpha[i]);
    return g;
  }

  int n_;
};

}  // namespace fisherrao::families
