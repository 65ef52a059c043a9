#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/quadrature.hpp"
#include "fisherrao/numerics/random.hpp"
#include "fisherrao/numerics/special.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace fisherrao::families {

/// One-parameter families whose Fisher-Rao geometry is flat in an arclength
/// coordinate phi, so that d(a, b) = |phi(a) - phi(b)|.
///
///   poisson      (mean lambda)        phi = 2 sqrt(lambda)
///   exponential  (rate lambda)        phi = log(lambda)
///   binomial(n)  (success prob. p)    phi = 2 sqrt(n) asin(sqrt(p))
///   bernoulli    (binomial with n=1)
///   geometric    (success prob. p)    phi = -2 atanh(sqrt(1 - p))
class ScalarFamily {
 public:
  enum class Kind { kPoisson, kExponential, kBinomial, kGeometric };

  static ScalarFamily poisson() { return {Kind::kPoisson, 0, "poisson"}; }
  static ScalarFamily exponential() { return {Kind::kExponential, 0, "exponential"}; }
  static ScalarFamily binomial(std::int64_t n) {
    if (n < 1) throw DomainError("binomial: index n must be a positive integer");
    return {Kind::kBinomial, n, "binomial"};
  }
  static ScalarFamily bernoulli() { return {Kind::kBinomial, 1, "bernoulli"}; }
  static ScalarFamily geometric() { return {Kind::kGeometric, 0, "geometric"}; }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] const std::string& name() const { return name_; }

  bool operator==(const ScalarFamily& o) const { return kind_ == o.kind_ && n_ == o.n_; }

  /// Parameter strictly inside its open interval.
  [[nodiscard]] bool belongs(double theta) const {
    if (!std::isfinite(theta) || theta <= 0.0) return false;
    return has_unit_interval() ? theta < 1.0 : true;
  }

  void check(double theta, const char* where) const {
    if (!belongs(theta)) {
      throw DomainError(std::string(where) + ": parameter " + std::to_string(theta) + " is outside the " + name_ +
                        " parameter space");
    }
  }

  /// log of the p.m.f./p.d.f. at x; -infinity outside the support.
  [[nodiscard]] double log_density(double theta, double x) const {
    switch (kind_) {
      case Kind::kPoisson:
        if (x < 0 || x != std::floor(x)) return -std::numeric_limits<double>::infinity();
        return x * std::log(theta) - theta - numerics::ln_gamma(x + 1.0);
      case Kind::kExponential:
        if (x < 0) return -std::numeric_limits<double>::infinity();
        return std::log(theta) - theta * x;
      case Kind::kBinomial: {
        const double n = static_cast<double>(n_);
        if (x < 0 || x > n || x != std::floor(x)) return -std::numeric_limits<double>::infinity();
        return numerics::ln_gamma(n + 1) - numerics::ln_gamma(x + 1) - numerics::ln_gamma(n - x + 1) +
               x * std::log(theta) + (n - x) * std::log1p(-theta);
      }
      case Kind::kGeometric:
        if (x < 1 || x != std::floor(x)) return -std::numeric_limits<double>::infinity();
        return (x - 1.0) * std::log1p(-theta) + std::log(theta);
    }
    return 0.0;
  }

  /// p.m.f. or p.d.f. at a sample value; DomainError outside the sample space.
  [[nodiscard]] double density(double theta, double x) const {
    check(theta, "density");
    if (!in_sample_space(x)) {
      throw DomainError("density: " + std::to_string(x) + " is outside the " + name_ + " sample space");
    }
    return std::exp(log_density(theta, x));
  }

  [[nodiscard]] bool in_sample_space(double x) const {
    if (!std::isfinite(x)) return false;
    switch (kind_) {
      case Kind::kPoisson: return x >= 0 && x == std::floor(x);
      case Kind::kExponential: return x >= 0;
      case Kind::kBinomial: return x >= 0 && x <= static_cast<double>(n_) && x == std::floor(x);
      case Kind::kGeometric: return x >= 1 && x == std::floor(x);
    }
    return false;
  }

  /// Support as an expectation rule (the exponential's is truncated far into the tail).
  [[nodiscard]] numerics::QuadratureRule support(double theta) const {
    switch (kind_) {
      case Kind::kPoisson: return numerics::QuadratureRule::discrete(0);
      case Kind::kExponential: return numerics::QuadratureRule::continuous(0.0, 80.0 / theta, 200);
      case Kind::kBinomial: return numerics::QuadratureRule::discrete(0, n_);
      case Kind::kGeometric: return numerics::QuadratureRule::discrete(1);
    }
    return {};
  }

  [[nodiscard]] double fisher_information(double theta) const {
    check(theta, "fisher_information");
    switch (kind_) {
      case Kind::kPoisson: return 1.0 / theta;
      case Kind::kExponential: return 1.0 / (theta * theta);
      case Kind::kBinomial: return static_cast<double>(n_) / (theta * (1.0 - theta));
      case Kind::kGeometric: return 1.0 / (theta * theta * (1.0 - theta));
    }
    return 0.0;
  }

  [[nodiscard]] double fisher_information_derivative(double theta) const {
    switch (kind_) {
      case Kind::kPoisson: return -1.0 / (theta * theta);
      case Kind::kExponential: return -2.0 / (theta * theta * theta);
      case Kind::kBinomial: {
        const double q = theta * (1.0 - theta);
        return -static_cast<double>(n_) * (1.0 - 2.0 * theta) / (q * q);
      }
      case Kind::kGeometric: {
        const double q = 1.0 - theta;
        return -2.0 / (theta * theta * theta * q) + 1.0 / (theta * theta * q * q);
      }
    }
    return 0.0;
  }

  /// phi(theta). Accepts the closed parameter interval where phi stays finite.
  [[nodiscard]] double arclength(double theta) const {
    switch (kind_) {
      case Kind::kPoisson:
        if (!(theta >= 0.0) || !std::isfinite(theta)) break;
        return 2.0 * std::sqrt(theta);
      case Kind::kExponential:
        if (!(theta > 0.0) || !std::isfinite(theta)) break;
        return std::log(theta);
      case Kind::kBinomial:
        if (!(theta >= 0.0 && theta <= 1.0)) break;
        return 2.0 * std::sqrt(static_cast<double>(n_)) * std::asin(std::sqrt(theta));
      case Kind::kGeometric:
        if (theta == 0.0) {
          throw DomainError("geometric: parameter p = 0 lies at infinite Fisher-Rao distance from every point");
        }
        if (!(theta > 0.0 && theta <= 1.0)) break;
        return -2.0 * std::atanh(std::sqrt(1.0 - theta));
    }
    throw DomainError("arclength: parameter " + std::to_string(theta) + " has no finite arclength coordinate on " +
                      name_);
  }

  /// Open range of phi over the parameter space.
  [[nodiscard]] std::pair<double, double> arclength_range() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case Kind::kPoisson: return {0.0, inf};
      case Kind::kExponential: return {-inf, inf};
      case Kind::kBinomial: return {0.0, std::sqrt(static_cast<double>(n_)) * std::numbers::pi};
      case Kind::kGeometric: return {-inf, 0.0};
    }
    return {-inf, inf};
  }

  /// Inverse of phi on its open range.
  [[nodiscard]] double from_arclength(double phi) const {
    const auto [lo, hi] = arclength_range();
    if (!(phi > lo && phi < hi)) {
      throw DomainError("from_arclength: " + std::to_string(phi) + " is outside the arclength range of " + name_);
    }
    switch (kind_) {
      case Kind::kPoisson: return 0.25 * phi * phi;
      case Kind::kExponential: return std::exp(phi);
      case Kind::kBinomial: {
        const double s = std::sin(phi / (2.0 * std::sqrt(static_cast<double>(n_))));
        return s * s;
      }
      case Kind::kGeometric: {
        const double c = std::cosh(0.5 * phi);
        return 1.0 / (c * c);
      }
    }
    return 0.0;
  }

  /// d phi / d theta = sqrt(I(theta)).
  [[nodiscard]] double arclength_derivative(double theta) const { return std::sqrt(fisher_information(theta)); }

  [[nodiscard]] double dist(double a, double b) const { return std::abs(arclength(a) - arclength(b)); }

  /// Constant-speed geodesic: inverse phi of the affine interpolation of phi.
  [[nodiscard]] double geodesic(double a, double b, double t) const {
    check(a, "geodesic");
    check(b, "geodesic");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return from_arclength((1.0 - t) * arclength(a) + t * arclength(b));
  }

  [[nodiscard]] std::vector<double> sample(double theta, int count, numerics::Rng& rng) const {
    check(theta, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      switch (kind_) {
        case Kind::kPoisson: out.push_back(static_cast<double>(numerics::poisson_variate(rng, theta))); break;
        case Kind::kExponential: out.push_back(numerics::exponential_variate(rng, theta)); break;
        case Kind::kBinomial: out.push_back(static_cast<double>(numerics::binomial_variate(rng, n_, theta))); break;
        case Kind::kGeometric: out.push_back(static_cast<double>(numerics::geometric_variate(rng, theta))); break;
      }
    }
    return out;
  }

  /// The family as a one-dimensional manifold for the generic engine.
  [[nodiscard]] ManifoldSpec manifold() const {
    ManifoldSpec spec;
    spec.name = name_ == "binomial" ? name_ + "(" + std::to_string(n_) + ")" : name_;
    spec.dim = 1;
    const ScalarFamily fam = *this;
    spec.belongs = [fam](const Vector& x) { return x.size() == 1 && fam.belongs(x[0]); };
    spec.metric = [fam](const Vector& x) { return Matrix::Constant(1, 1, fam.fisher_information(x[0])); };
    spec.metric_derivative = [fam](const Vector& x) {
      return std::vector<Matrix>{Matrix::Constant(1, 1, fam.fisher_information_derivative(x[0]))};
    };
    spec.distance = [fam](const Vector& a, const Vector& b) { return fam.dist(a[0], b[0]); };
    spec.log_map = [fam](const Vector& x, const Vector& y) {
      return Vector::Constant(1, (fam.arclength(y[0]) - fam.arclength(x[0])) / fam.arclength_derivative(x[0]));
    };
    spec.geodesic_flow = [fam](const Vector& x, const Vector& v, double t) {
      const double speed = v[0] * fam.arclength_derivative(x[0]);
      const double phi0 = fam.arclength(x[0]);
      const double phi = phi0 + t * speed;
      const auto [lo, hi] = fam.arclength_range();
      if (!(phi > lo && phi < hi)) {
        const double edge = phi <= lo ? lo : hi;
        throw IncompleteGeodesic("geodesic leaves the " + fam.name() + " parameter space", (edge - phi0) / speed);
      }
      const double theta = fam.from_arclength(phi);
      return std::pair<Vector, Vector>{Vector::Constant(1, theta),
                                       Vector::Constant(1, speed / fam.arclength_derivative(theta))};
    };
    spec.lower_bounds = Vector::Zero(1);
    spec.upper_bounds = Vector::Constant(1, has_unit_interval() ? 1.0 : std::numeric_limits<double>::infinity());
    return spec;
  }

 private:
  ScalarFamily(Kind kind, std::int64_t n, std::string name) : kind_(kind), n_(n), name_(std::move(name)) {}

  [[nodiscard]] bool has_unit_interval() const { return kind_ == Kind::kBinomial || kind_ == Kind::kGeometric; }

  Kind kind_;
  std::int64_t n_;
  std::string name_;
};

/// A parameter value tagged with its family.
struct ScalarFamilyPoint {
  ScalarFamily family;
  double value;
};

inline double dist(const ScalarFamilyPoint& a, const ScalarFamilyPoint& b) {
  if (!(a.family == b.family)) {
    throw DomainError("dist: points belong to different families (" + a.family.name() + ", " + b.family.name() + ")");
  }
  return a.family.dist(a.value, b.value);
}

}  // namespace fisherrao::families
