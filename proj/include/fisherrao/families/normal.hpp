#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace fisherrao::families {

struct UnivariateNormalPoint {
  double mean = 0.0;
  double sd = 1.0;

  [[nodiscard]] Vector coords() const { return Vector{{mean, sd}}; }
  static UnivariateNormalPoint from(const Vector& v) { return {v[0], v[1]}; }
};

namespace detail {

inline void check_normal(const UnivariateNormalPoint& p, const char* where) {
  if (!std::isfinite(p.mean) || !std::isfinite(p.sd) || !(p.sd > 0.0)) {
    throw DomainError(std::string(where) + ": normal parameters need a finite mean and a positive standard deviation");
  }
}

inline double acosh1p(double z) { return std::log1p(z + std::sqrt(z * (z + 2.0))); }

// Upper half-plane <-> hyperboloid model {X : -X0^2 + X1^2 + X2^2 = -1}.
struct Hyperboloid {
  static double minkowski(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }
  static Eigen::Vector3d lift(double x, double y) {
    const double r2 = x * x + y * y;
    return {(r2 + 1.0) / (2.0 * y), x / y, (r2 - 1.0) / (2.0 * y)};
  }
  static Eigen::Vector3d push(double x, double y, double dx, double dy) {
    const double y2 = y * y;
    return {x / y * dx + (y2 - x * x - 1.0) / (2.0 * y2) * dy, dx / y - x / y2 * dy,
            x / y * dx + (y2 - x * x + 1.0) / (2.0 * y2) * dy};
  }
  static Eigen::Vector2d project(const Eigen::Vector3d& p) {
    const double y = 1.0 / (p[0] - p[2]);
    return {p[1] * y, y};
  }
  static Eigen::Vector2d pull(const Eigen::Vector3d& p, const Eigen::Vector3d& dp) {
    const double y = 1.0 / (p[0] - p[2]);
    const double dy = -y * y * (dp[0] - dp[2]);
    return {dp[1] * y + p[1] * dy, dy};
  }
};

}  // namespace detail

/// Univariate normal distributions in (mean, standard deviation) coordinates.
/// The metric (dm^2 + 2 d sigma^2) / sigma^2 becomes twice the Poincare
/// half-plane metric after m -> m / sqrt(2); geodesics and distances are
/// computed in that model through the hyperboloid.
class UnivariateNormal {
 public:
  [[nodiscard]] static double log_pdf(const UnivariateNormalPoint& p, double x) {
    const double z = (x - p.mean) / p.sd;
    return -0.5 * z * z - std::log(p.sd) - 0.5 * std::log(2.0 * std::numbers::pi);
  }

  [[nodiscard]] static auto pdf(const UnivariateNormalPoint& p) {
    detail::check_normal(p, "pdf");
    return [p](double x) { return std::exp(log_pdf(p, x)); };
  }

  [[nodiscard]] static Matrix metric_matrix(const UnivariateNormalPoint& p) {
    detail::check_normal(p, "metric_matrix");
    const double s2 = p.sd * p.sd;
    return Eigen::Vector2d(1.0 / s2, 2.0 / s2).asDiagonal();
  }

  /// sqrt(2) arccosh(((m1 - m2)^2 / 2 + s1^2 + s2^2) / (2 s1 s2)).
  [[nodiscard]] static double dist(const UnivariateNormalPoint& a, const UnivariateNormalPoint& b) {
    detail::check_normal(a, "dist");
    detail::check_normal(b, "dist");
    const double dm = a.mean - b.mean;
    const double ds = a.sd - b.sd;
    return std::numbers::sqrt2 * detail::acosh1p((0.5 * dm * dm + ds * ds) / (2.0 * a.sd * b.sd));
  }

  /// Poincare half-plane distance on the raw (m, sigma) coordinates. This is
  /// not the Fisher-Rao distance; it is kept to reproduce published values.
  [[nodiscard]] static double legacy_halfplane_dist(const UnivariateNormalPoint& a, const UnivariateNormalPoint& b) {
    detail::check_normal(a, "legacy_halfplane_dist");
    detail::check_normal(b, "legacy_halfplane_dist");
    const double dm = a.mean - b.mean;
    const double ds = a.sd - b.sd;
    return detail::acosh1p((dm * dm + ds * ds) / (2.0 * a.sd * b.sd));
  }

  /// Position and velocity at time t of the geodesic from p with velocity v.
  [[nodiscard]] static std::pair<Vector, Vector> flow(const Vector& p, const Vector& v, double t) {
    using detail::Hyperboloid;
    const double x = p[0] / std::numbers::sqrt2;
    const double dx = v[0] / std::numbers::sqrt2;
    const Eigen::Vector3d a = Hyperboloid::lift(x, p[1]);
    const Eigen::Vector3d w = Hyperboloid::push(x, p[1], dx, v[1]);
    const double s = std::sqrt(std::max(0.0, Hyperboloid::minkowski(w, w)));
    if (s == 0.0) return {p, v};
    const Eigen::Vector3d q = std::cosh(s * t) * a + std::sinh(s * t) / s * w;
    const Eigen::Vector3d dq = s * std::sinh(s * t) * a + std::cosh(s * t) * w;
    const Eigen::Vector2d xy = Hyperboloid::project(q);
    const Eigen::Vector2d dxy = Hyperboloid::pull(q, dq);
    return {Vector{{std::numbers::sqrt2 * xy[0], xy[1]}}, Vector{{std::numbers::sqrt2 * dxy[0], dxy[1]}}};
  }

  [[nodiscard]] static Vector log(const Vector& p, const Vector& q) {
    using detail::Hyperboloid;
    const Eigen::Vector3d a = Hyperboloid::lift(p[0] / std::numbers::sqrt2, p[1]);
    const Eigen::Vector3d b = Hyperboloid::lift(q[0] / std::numbers::sqrt2, q[1]);
    const double d = dist(UnivariateNormalPoint::from(p), UnivariateNormalPoint::from(q)) / std::numbers::sqrt2;
    if (d == 0.0) return Vector::Zero(2);
    const double c = std::cosh(d);
    const double factor = d / std::sinh(d);
    const Eigen::Vector3d w = factor * (b - c * a);
    const Eigen::Vector2d dxy = Hyperboloid::pull(a, w);
    return Vector{{std::numbers::sqrt2 * dxy[0], dxy[1]}};
  }

  /// Point at time t on the geodesic from a to b.
  [[nodiscard]] static UnivariateNormalPoint geodesic(const UnivariateNormalPoint& a, const UnivariateNormalPoint& b,
                                                      double t) {
    detail::check_normal(a, "geodesic");
    detail::check_normal(b, "geodesic");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    if (a.mean == b.mean) return {a.mean, std::pow(a.sd, 1.0 - t) * std::pow(b.sd, t)};
    return UnivariateNormalPoint::from(flow(a.coords(), log(a.coords(), b.coords()), t).first);
  }

  [[nodiscard]] static double sectional_curvature(const UnivariateNormalPoint& p) {
    detail::check_normal(p, "sectional_curvature");
    return -0.5;
  }

  [[nodiscard]] static std::vector<double> sample(const UnivariateNormalPoint& p, int count, numerics::Rng& rng) {
    detail::check_normal(p, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(p.mean + p.sd * numerics::standard_normal(rng));
    return out;
  }

  [[nodiscard]] static ManifoldSpec manifold() {
    ManifoldSpec spec;
    spec.name = "normal";
    spec.dim = 2;
    spec.belongs = [](const Vector& x) { return x.size() == 2 && x.allFinite() && x[1] > 0.0; };
    spec.metric = [](const Vector& x) { return metric_matrix(UnivariateNormalPoint::from(x)); };
    spec.metric_derivative = [](const Vector& x) {
      const double s3 = x[1] * x[1] * x[1];
      return std::vector<Matrix>{Matrix::Zero(2, 2), Matrix(Eigen::Vector2d(-2.0 / s3, -4.0 / s3).asDiagonal())};
    };
    spec.distance = [](const Vector& a, const Vector& b) {
      return dist(UnivariateNormalPoint::from(a), UnivariateNormalPoint::from(b));
    };
    spec.geodesic_flow = [](const Vector& x, const Vector& v, double t) { return flow(x, v, t); };
    spec.log_map = [](const Vector& x, const Vector& y) { return log(x, y); };
    constexpr double inf = std::numeric_limits<double>::infinity();
    spec.lower_bounds = Vector{{-inf, 0.0}};
    spec.upper_bounds = Vector{{inf, inf}};
    return spec;
  }
};

/// Multivariate normals with diagonal covariance: the product of p copies of
/// the univariate manifold, coordinates (m_1, sigma_1, ..., m_p, sigma_p).
class DiagonalNormal {
 public:
  explicit DiagonalNormal(int p) : p_(p) {
    if (p < 1) throw DomainError("diagonal normal: dimension must be positive");
  }
  [[nodiscard]] int p() const { return p_; }

  [[nodiscard]] double dist(const Vector& a, const Vector& b) const {
    if (a.size() != 2 * p_ || b.size() != 2 * p_) {
      throw DomainError("diagonal_dist: expected " + std::to_string(2 * p_) + " coordinates per point");
    }
    double sq = 0.0;
    for (int i = 0; i < p_; ++i) {
      const double d = UnivariateNormal::dist({a[2 * i], a[2 * i + 1]}, {b[2 * i], b[2 * i + 1]});
      sq += d * d;
    }
    return std::sqrt(sq);
  }

  [[nodiscard]] ManifoldSpec manifold() const {
    ManifoldSpec spec;
    const int p = p_;
    spec.name = "normal-diagonal(" + std::to_string(p) + ")";
    spec.dim = 2 * p;
    spec.belongs = [p](const Vector& x) {
      if (x.size() != 2 * p || !x.allFinite()) return false;
      for (int i = 0; i < p; ++i)
        if (!(x[2 * i + 1] > 0.0)) return false;
      return true;
    };
    spec.metric = [p](const Vector& x) {
      Vector diag(2 * p);
      for (int i = 0; i < p; ++i) {
        const double s2 = x[2 * i + 1] * x[2 * i + 1];
        diag[2 * i] = 1.0 / s2;
        diag[2 * i + 1] = 2.0 / s2;
      }
      return Matrix(diag.asDiagonal());
    };
    spec.metric_derivative = [p](const Vector& x) {
      std::vector<Matrix> out(static_cast<std::size_t>(2 * p), Matrix::Zero(2 * p, 2 * p));
      for (int i = 0; i < p; ++i) {
        const double s3 = x[2 * i + 1] * x[2 * i + 1] * x[2 * i + 1];
        out[static_cast<std::size_t>(2 * i + 1)](2 * i, 2 * i) = -2.0 / s3;
        out[static_cast<std::size_t>(2 * i + 1)](2 * i + 1, 2 * i + 1) = -4.0 / s3;
      }
      return out;
    };
    const DiagonalNormal self = *this;
    spec.distance = [self](const Vector& a, const Vector& b) { return self.dist(a, b); };
    spec.geodesic_flow = [p](const Vector& x, const Vector& v, double t) {
      std::pair<Vector, Vector> out{Vector(2 * p), Vector(2 * p)};
      for (int i = 0; i < p; ++i) {
        auto [q, dq] = UnivariateNormal::flow(x.segment(2 * i, 2), v.segment(2 * i, 2), t);
        out.first.segment(2 * i, 2) = q;
        out.second.segment(2 * i, 2) = dq;
      }
      return out;
    };
    spec.log_map = [p](const Vector& x, const Vector& y) {
      Vector out(2 * p);
      for (int i = 0; i < p; ++i) out.segment(2 * i, 2) = UnivariateNormal::log(x.segment(2 * i, 2), y.segment(2 * i, 2));
      return out;
    };
    spec.lower_bounds = Vector::Constant(2 * p, -std::numeric_limits<double>::infinity());
    spec.upper_bounds = Vector::Constant(2 * p, std::numeric_limits<double>::infinity());
    for (int i = 0; i < p; ++i) spec.lower_bounds[2 * i + 1] = 0.0;
    return spec;
  }

 private:
  int p_;
};

namespace detail {

template <typename F>
Matrix spd_apply(const Matrix& s, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Vector ev = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

/// Multivariate normals with a fixed mean, parameterized by the covariance.
/// The Fisher-Rao metric is (1/2) tr(S^-1 U S^-1 V), half the affine-invariant
/// metric. As a coordinate manifold the covariance is flattened to its upper
/// triangle, row by row.
class CenteredNormal {
 public:
  explicit CenteredNormal(int p, Vector mean = {}) : p_(p), mean_(mean.size() == 0 ? Vector::Zero(p) : mean) {
    if (p < 1) throw DomainError("centered normal: dimension must be positive");
    if (mean_.size() != p) throw DomainError("centered normal: mean has the wrong dimension");
  }
  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] const Vector& mean() const { return mean_; }
  [[nodiscard]] int coordinate_count() const { return p_ * (p_ + 1) / 2; }

  [[nodiscard]] static bool is_spd(const Matrix& s) {
    if (s.rows() != s.cols() || !s.allFinite()) return false;
    if (!s.isApprox(s.transpose(), 1e-10)) return false;
    Eigen::LLT<Matrix> llt(s);
    return llt.info() == Eigen::Success;
  }

  void check(const Matrix& s, const char* where) const {
    if (s.rows() != p_ || s.cols() != p_) {
      throw DomainError(std::string(where) + ": covariance must be " + std::to_string(p_) + "x" + std::to_string(p_));
    }
    if (!is_spd(s)) throw DomainError(std::string(where) + ": covariance is not symmetric positive definite");
  }

  /// Log-density of N(mean, s) at x (log-determinant from the Cholesky factor).
  [[nodiscard]] double log_pdf(const Matrix& s, const Vector& x) const {
    check(s, "log_pdf");
    Eigen::LLT<Matrix> llt(s);
    const Vector z = llt.matrixL().solve(x - mean_);
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * (z.squaredNorm() + logdet + p_ * std::log(2.0 * std::numbers::pi));
  }

  /// sqrt(1/2 sum log^2 lambda_i), lambda the eigenvalues of s1^-1 s2,
  /// obtained from L1^-1 s2 L1^-T with s1 = L1 L1^T.
  [[nodiscard]] double dist(const Matrix& s1, const Matrix& s2) const {
    check(s1, "centered_dist");
    check(s2, "centered_dist");
    Eigen::LLT<Matrix> llt(s1);
    const Matrix l_inv_s2 = llt.matrixL().solve(s2);
    const Matrix whitened = llt.matrixL().solve(l_inv_s2.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (whitened + whitened.transpose()), Eigen::EigenvaluesOnly);
    const Vector logs = es.eigenvalues().array().log();
    return std::sqrt(0.5 * logs.squaredNorm());
  }

  [[nodiscard]] Vector to_coords(const Matrix& s) const {
    Vector out(coordinate_count());
    int a = 0;
    for (int i = 0; i < p_; ++i)
      for (int j = i; j < p_; ++j) out[a++] = s(i, j);
    return out;
  }

  [[nodiscard]] Matrix from_coords(const Vector& c) const {
    Matrix s(p_, p_);
    int a = 0;
    for (int i = 0; i < p_; ++i)
      for (int j = i; j < p_; ++j) {
        s(i, j) = c[a];
        s(j, i) = c[a];
        ++a;
      }
    return s;
  }

  [[nodiscard]] ManifoldSpec manifold() const {
    ManifoldSpec spec;
    const CenteredNormal self = *this;
    spec.name = "normal-centered(" + std::to_string(p_) + ")";
    spec.dim = coordinate_count();
    spec.belongs = [self](const Vector& c) {
      return c.size() == self.coordinate_count() && c.allFinite() && is_spd(self.from_coords(c));
    };
    spec.metric = [self](const Vector& c) { return self.metric(c); };
    spec.metric_derivative = [self](const Vector& c) { return self.metric_partials(c); };
    spec.distance = [self](const Vector& a, const Vector& b) { return self.dist(self.from_coords(a), self.from_coords(b)); };
    spec.geodesic_flow = [self](const Vector& c, const Vector& v, double t) {
      const Matrix s = self.from_coords(c);
      const Matrix root = detail::spd_apply(s, [](double x) { return std::sqrt(x); });
      const Matrix inv_root = detail::spd_apply(s, [](double x) { return 1.0 / std::sqrt(x); });
      Matrix w = inv_root * self.from_coords(v) * inv_root;
      w = 0.5 * (w + w.transpose());
      const Matrix e = detail::spd_apply(w, [t](double x) { return std::exp(t * x); });
      return std::pair<Vector, Vector>{self.to_coords(root * e * root), self.to_coords(root * w * e * root)};
    };
    spec.log_map = [self](const Vector& a, const Vector& b) {
      const Matrix s = self.from_coords(a);
      const Matrix root = detail::spd_apply(s, [](double x) { return std::sqrt(x); });
      const Matrix inv_root = detail::spd_apply(s, [](double x) { return 1.0 / std::sqrt(x); });
      Matrix m = inv_root * self.from_coords(b) * inv_root;
      m = 0.5 * (m + m.transpose());
      return self.to_coords(root * detail::spd_apply(m, [](double x) { return std::log(x); }) * root);
    };
    return spec;
  }

 private:
  [[nodiscard]] std::vector<Matrix> basis() const {
    std::vector<Matrix> out;
    for (int i = 0; i < p_; ++i)
      for (int j = i; j < p_; ++j) {
        Matrix e = Matrix::Zero(p_, p_);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        out.push_back(std::move(e));
      }
    return out;
  }

  [[nodiscard]] Matrix metric(const Vector& c) const {
    const Matrix inv = from_coords(c).inverse();
    const auto e = basis();
    const int q = coordinate_count();
    Matrix g(q, q);
    for (int a = 0; a < q; ++a)
      for (int b = a; b < q; ++b) {
        g(a, b) = 0.5 * (inv * e[static_cast<std::size_t>(a)] * inv * e[static_cast<std::size_t>(b)]).trace();
        g(b, a) = g(a, b);
      }
    return g;
  }

  // d g_ab / d c = -1/2 tr(P E_c P E_a P E_b + P E_a P E_c P E_b), P = S^-1.
  [[nodiscard]] std::vector<Matrix> metric_partials(const Vector& c) const {
    const Matrix inv = from_coords(c).inverse();
    const auto e = basis();
    const int q = coordinate_count();
    std::vector<Matrix> out;
    for (int l = 0; l < q; ++l) {
      const Matrix pl = inv * e[static_cast<std::size_t>(l)] * inv;
      Matrix d(q, q);
      for (int a = 0; a < q; ++a)
        for (int b = a; b < q; ++b) {
          const Matrix& ea = e[static_cast<std::size_t>(a)];
          const Matrix& eb = e[static_cast<std::size_t>(b)];
          d(a, b) = -0.5 * ((pl * ea * inv * eb).trace() + (inv * ea * pl * eb).trace());
          d(b, a) = d(a, b);
        }
      out.push_back(std::move(d));
    }
    return out;
  }

  int p_;
  Vector mean_;
};

}  // namespace fisherrao::families
