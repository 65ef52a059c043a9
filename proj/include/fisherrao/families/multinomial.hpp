#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/random.hpp"
#include "fisherrao/numerics/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace fisherrao::families {

/// Multinomial distributions with k outcomes and n trials (n = 1: categorical).
///
/// Points are probability vectors theta in the open simplex. The Fisher-Rao
/// metric n sum d theta_i^2 / theta_i is the pullback of the Euclidean metric on
/// the sphere of radius 2 sqrt(n) through theta -> 2 sqrt(n theta), which gives
/// closed forms for distance, geodesics and curvature.
///
/// For matrix-valued operations the simplex is charted by its first k - 1
/// coordinates (theta_k = 1 - sum of the others).
class Multinomial {
 public:
  static constexpr double kSimplexTolerance = 1e-9;

  Multinomial(int k, std::int64_t n) : k_(k), n_(n) {
    if (k < 2) throw DomainError("multinomial: need at least two outcomes");
    if (n < 1) throw DomainError("multinomial: trial count must be a positive integer");
  }
  static Multinomial categorical(int k) { return {k, 1}; }

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] double radius() const { return 2.0 * std::sqrt(static_cast<double>(n_)); }

  /// Interior of the simplex.
  [[nodiscard]] bool belongs(const Vector& theta) const {
    return theta.size() == k_ && theta.allFinite() && theta.minCoeff() > 0.0 &&
           std::abs(theta.sum() - 1.0) <= kSimplexTolerance;
  }

  /// Closed simplex, accepted by the distance.
  [[nodiscard]] bool in_closed_simplex(const Vector& theta) const {
    return theta.size() == k_ && theta.allFinite() && theta.minCoeff() >= 0.0 &&
           std::abs(theta.sum() - 1.0) <= kSimplexTolerance;
  }

  void check(const Vector& theta, const char* where) const {
    if (!belongs(theta)) {
      throw DomainError(std::string(where) + ": " + fisherrao::detail::format_vector(theta) +
                        " is not in the open simplex of dimension " + std::to_string(k_ - 1));
    }
  }

  [[nodiscard]] double log_pmf(const Vector& theta, const Vector& counts) const {
    check(theta, "pmf");
    if (counts.size() != k_) throw DomainError("pmf: count vector has the wrong length");
    double total = 0.0;
    double out = numerics::ln_gamma(static_cast<double>(n_) + 1.0);
    for (int i = 0; i < k_; ++i) {
      const double x = counts[i];
      if (x < 0 || x != std::floor(x) || x > static_cast<double>(n_)) {
        throw DomainError("pmf: counts must be integers in {0..n}");
      }
      total += x;
      out += -numerics::ln_gamma(x + 1.0) + (x > 0 ? x * std::log(theta[i]) : 0.0);
    }
    if (total != static_cast<double>(n_)) {
      throw DomainError("pmf: counts sum to " + std::to_string(total) + ", expected n = " + std::to_string(n_));
    }
    return out;
  }

  [[nodiscard]] double pmf(const Vector& theta, const Vector& counts) const { return std::exp(log_pmf(theta, counts)); }

  /// Metric matrix in the chart of the first k - 1 coordinates:
  /// g_ij = n (delta_ij / theta_i + 1 / theta_k).
  [[nodiscard]] Matrix metric_matrix(const Vector& theta) const {
    check(theta, "metric_matrix");
    const double n = static_cast<double>(n_);
    Matrix g = Matrix::Constant(k_ - 1, k_ - 1, n / theta[k_ - 1]);
    for (int i = 0; i < k_ - 1; ++i) g(i, i) += n / theta[i];
    return g;
  }

  /// Inner product of full-length tangent vectors (components summing to 0).
  [[nodiscard]] double inner_product(const Vector& theta, const Vector& u, const Vector& v) const {
    check(theta, "inner_product");
    check_tangent(u);
    check_tangent(v);
    return static_cast<double>(n_) * (u.array() * v.array() / theta.array()).sum();
  }

  void check_tangent(const Vector& u) const {
    if (u.size() != k_) throw DomainError("multinomial: tangent vector has the wrong length");
    if (std::abs(u.sum()) > kSimplexTolerance) {
      throw DomainError("multinomial: tangent vector components must sum to zero (got " + std::to_string(u.sum()) +
                        ")");
    }
  }

  /// theta -> 2 sqrt(n theta); the image lies on the sphere sum r_i^2 = 4n.
  [[nodiscard]] Vector sphere_map(const Vector& theta) const {
    if (!in_closed_simplex(theta)) throw DomainError("sphere_map: point is not in the simplex");
    return (4.0 * static_cast<double>(n_) * theta).cwiseSqrt();
  }

  [[nodiscard]] Vector sphere_map_inverse(const Vector& r) const {
    if (r.size() != k_ || !r.allFinite() || r.minCoeff() <= 0.0) {
      throw DomainError("sphere_map_inverse: sphere coordinates must be positive");
    }
    return r.cwiseProduct(r) / (4.0 * static_cast<double>(n_));
  }

  /// Pushforward of a tangent vector u at theta through the sphere map.
  [[nodiscard]] Vector sphere_pushforward(const Vector& theta, const Vector& u) const {
    return std::sqrt(static_cast<double>(n_)) * u.cwiseQuotient(theta.cwiseSqrt());
  }

  /// 2 sqrt(n) arccos(sum sqrt(a_i b_i)); defined on the closed simplex.
  [[nodiscard]] double dist(const Vector& a, const Vector& b) const {
    if (!in_closed_simplex(a) || !in_closed_simplex(b)) {
      throw DomainError("dist: points must lie in the simplex of dimension " + std::to_string(k_ - 1));
    }
    const double c = std::clamp((a.cwiseProduct(b)).cwiseSqrt().sum(), -1.0, 1.0);
    return radius() * std::acos(c);
  }

  /// Great-circle interpolation between the sphere images, pulled back.
  [[nodiscard]] Vector geodesic(const Vector& a, const Vector& b, double t) const {
    check(a, "geodesic");
    check(b, "geodesic");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    const Vector ra = sphere_map(a) / radius();
    const Vector rb = sphere_map(b) / radius();
    const double c = std::clamp(ra.dot(rb), -1.0, 1.0);
    const double omega = std::acos(c);
    if (omega < 1e-15) return a;
    const Vector r = (std::sin((1.0 - t) * omega) * ra + std::sin(t * omega) * rb) / std::sin(omega);
    Vector theta = r.cwiseProduct(r);
    return theta / theta.sum();
  }

  /// Sectional curvature of the sphere of radius 2 sqrt(n): 1 / (4n).
  [[nodiscard]] double sectional_curvature() const {
    if (k_ < 3) throw DomainError("sectional_curvature: undefined for k < 3 (the manifold is one-dimensional)");
    return 1.0 / (4.0 * static_cast<double>(n_));
  }

  /// `count` count vectors, each aggregating n categorical draws.
  [[nodiscard]] std::vector<Vector> sample(const Vector& theta, int count, numerics::Rng& rng) const {
    check(theta, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
      Vector counts = Vector::Zero(k_);
      for (std::int64_t trial = 0; trial < n_; ++trial) counts[categorical_draw(theta, rng)] += 1.0;
      out.push_back(std::move(counts));
    }
    return out;
  }

  [[nodiscard]] Vector to_chart(const Vector& theta) const { return theta.head(k_ - 1); }
  [[nodiscard]] Vector from_chart(const Vector& x) const {
    Vector theta(k_);
    theta.head(k_ - 1) = x;
    theta[k_ - 1] = 1.0 - x.sum();
    return theta;
  }
  [[nodiscard]] Vector tangent_from_chart(const Vector& v) const {
    Vector u(k_);
    u.head(k_ - 1) = v;
    u[k_ - 1] = -v.sum();
    return u;
  }

  /// The simplex in the chart of its first k - 1 coordinates.
  [[nodiscard]] ManifoldSpec manifold() const {
    ManifoldSpec spec;
    spec.name = n_ == 1 ? "categorical(" + std::to_string(k_) + ")"
                        : "multinomial(" + std::to_string(k_) + ", " + std::to_string(n_) + ")";
    spec.dim = k_ - 1;
    const Multinomial fam = *this;
    spec.belongs = [fam](const Vector& x) {
      return x.size() == fam.k_ - 1 && x.allFinite() && x.minCoeff() > 0.0 && x.sum() < 1.0;
    };
    spec.metric = [fam](const Vector& x) { return fam.metric_matrix(fam.from_chart(x)); };
    spec.metric_derivative = [fam](const Vector& x) {
      const Vector theta = fam.from_chart(x);
      const double n = static_cast<double>(fam.n_);
      const double last = n / (theta[fam.k_ - 1] * theta[fam.k_ - 1]);
      std::vector<Matrix> out;
      for (int l = 0; l < fam.k_ - 1; ++l) {
        Matrix d = Matrix::Constant(fam.k_ - 1, fam.k_ - 1, last);
        d(l, l) -= n / (theta[l] * theta[l]);
        out.push_back(std::move(d));
      }
      return out;
    };
    spec.distance = [fam](const Vector& a, const Vector& b) { return fam.dist(fam.from_chart(a), fam.from_chart(b)); };
    spec.geodesic_flow = [fam](const Vector& x, const Vector& v, double t) { return fam.flow(x, v, t); };
    spec.log_map = [fam](const Vector& x, const Vector& y) { return fam.chart_log(x, y); };
    spec.lower_bounds = Vector::Zero(k_ - 1);
    spec.upper_bounds = Vector::Ones(k_ - 1);
    return spec;
  }

 private:
  static int categorical_draw(const Vector& theta, numerics::Rng& rng) {
    const double u = numerics::uniform01(rng);
    double acc = 0.0;
    for (int i = 0; i < theta.size() - 1; ++i) {
      acc += theta[i];
      if (u < acc) return i;
    }
    return static_cast<int>(theta.size()) - 1;
  }

  // Great circle through the sphere image of the chart point x with chart
  // velocity v.
  [[nodiscard]] std::pair<Vector, Vector> flow(const Vector& x, const Vector& v, double t) const {
    const Vector theta = from_chart(x);
    check(theta, "geodesic");
    const double big_r = radius();
    const Vector r0 = sphere_map(theta);
    const Vector dr0 = sphere_pushforward(theta, tangent_from_chart(v));
    const double speed = dr0.norm();
    if (speed == 0.0) return {x, v};
    const double a = speed / big_r;
    double exit = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k_; ++i) {
      exit = std::min(exit, (0.5 * std::numbers::pi + std::atan2(dr0[i] / a, r0[i])) / a);
    }
    if (t >= exit) throw IncompleteGeodesic("geodesic leaves the open simplex", exit);
    const Vector r = std::cos(a * t) * r0 + std::sin(a * t) / a * dr0;
    const Vector dr = -a * std::sin(a * t) * r0 + std::cos(a * t) * dr0;
    const double n = static_cast<double>(n_);
    const Vector th = r.cwiseProduct(r) / (4.0 * n);
    const Vector dth = r.cwiseProduct(dr) / (2.0 * n);
    return {th.head(k_ - 1), dth.head(k_ - 1)};
  }

  [[nodiscard]] Vector chart_log(const Vector& x, const Vector& y) const {
    const Vector a = from_chart(x);
    const Vector b = from_chart(y);
    check(a, "log");
    check(b, "log");
    const double big_r = radius();
    const Vector ra = sphere_map(a);
    const Vector rb = sphere_map(b);
    const double c = std::clamp(ra.dot(rb) / (big_r * big_r), -1.0, 1.0);
    const double omega = std::acos(c);
    Vector w = rb - c * ra;
    const double wn = w.norm();
    if (wn == 0.0 || omega == 0.0) return Vector::Zero(k_ - 1);
    const Vector dr = (big_r * omega / wn) * w;
    const Vector u = dr.cwiseProduct(a.cwiseSqrt()) / std::sqrt(static_cast<double>(n_));
    return u.head(k_ - 1);
  }

  int k_;
  std::int64_t n_;
};

}  // namespace fisherrao::families
