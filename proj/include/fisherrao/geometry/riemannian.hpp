#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/numerics/finite_diff.hpp"
#include "fisherrao/numerics/ode.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fisherrao::geometry {

/// <u, v>_theta = u^T I(theta) v.
inline double inner_product(const ManifoldSpec& spec, const ParamPoint& theta, const TangentVec& u,
                            const TangentVec& v) {
  spec.check_tangent(u, "inner_product");
  spec.check_tangent(v, "inner_product");
  return u.dot(spec.metric(theta) * v);
}

inline double norm(const ManifoldSpec& spec, const ParamPoint& theta, const TangentVec& v) {
  return std::sqrt(std::max(0.0, inner_product(spec, theta, v, v)));
}

/// d g / d theta_l for every l: closed form when the family provides it,
/// central differences of the metric otherwise.
inline std::vector<Matrix> metric_partials(const ManifoldSpec& spec, const ParamPoint& theta) {
  if (spec.metric_derivative) return spec.metric_derivative(theta);
  auto g = [&](const Vector& x) -> Matrix {
    if (!spec.inside(x)) throw DomainError("metric evaluated outside " + spec.name);
    return spec.metric(x);
  };
  // Metrics typically blow up at the boundary, so near a finite bound the
  // step is kept proportional to the distance from it.
  Vector cap = Vector::Constant(spec.dim, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < spec.dim; ++i) {
    if (spec.lower_bounds.size() == spec.dim && std::isfinite(spec.lower_bounds[i])) {
      cap[i] = std::min(cap[i], numerics::FdSteps::first() * (theta[i] - spec.lower_bounds[i]));
    }
    if (spec.upper_bounds.size() == spec.dim && std::isfinite(spec.upper_bounds[i])) {
      cap[i] = std::min(cap[i], numerics::FdSteps::first() * (spec.upper_bounds[i] - theta[i]));
    }
  }
  return numerics::fd_partials(g, theta, std::nullopt, cap);
}

/// Levi-Civita symbols Gamma^k_ij = 1/2 g^kl (d_i g_lj + d_j g_li - d_l g_ij).
inline ChristoffelTensor levi_civita(const Matrix& g, const std::vector<Matrix>& dg, const ParamPoint& theta) {
  const Eigen::Index d = g.rows();
  Eigen::LDLT<Matrix> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-300 * std::max(1.0, ldlt.vectorD().maxCoeff())) {
    throw SingularMetric("christoffels: metric matrix is singular at " + fisherrao::detail::format_vector(theta));
  }
  ChristoffelTensor out(d);
  Vector lowered(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      for (Eigen::Index l = 0; l < d; ++l) {
        lowered[l] = 0.5 * (dg[static_cast<std::size_t>(i)](l, j) + dg[static_cast<std::size_t>(j)](l, i) -
                            dg[static_cast<std::size_t>(l)](i, j));
      }
      const Vector raised = ldlt.solve(lowered);
      for (Eigen::Index k = 0; k < d; ++k) out.set_symmetric(k, i, j, raised[k]);
    }
  }
  return out;
}

inline ChristoffelTensor christoffels(const ManifoldSpec& spec, const ParamPoint& theta) {
  if (spec.christoffels) return spec.christoffels(theta);
  return levi_civita(spec.metric(theta), metric_partials(spec, theta), theta);
}

/// Right-hand side of the geodesic equation: theta'' = -Gamma(theta', theta').
inline Vector geodesic_acceleration(const ManifoldSpec& spec, const ParamPoint& theta, const TangentVec& v) {
  if (spec.geodesic_acceleration) return spec.geodesic_acceleration(theta, v);
  return -christoffels(spec, theta).contract(v, v);
}

/// A geodesic integrated on [0, t_end], possibly in the manifold's log chart.
/// Positions and velocities are always reported in the manifold coordinates.
class GeodesicSolution {
 public:
  GeodesicSolution(numerics::Trajectory chart, Eigen::Index dim, bool log_chart)
      : chart_(std::move(chart)), dim_(dim), log_chart_(log_chart) {}

  [[nodiscard]] const numerics::Trajectory& chart_trajectory() const { return chart_; }
  [[nodiscard]] std::size_t steps() const { return chart_.size() - 1; }
  [[nodiscard]] double end_time() const { return chart_.final_time(); }

  [[nodiscard]] ParamPoint end_point() const { return point_of(chart_.final_state()); }
  [[nodiscard]] TangentVec end_velocity() const { return velocity_of(chart_.final_state()); }

  /// Position and velocity at time t (dense output).
  void at(double t, ParamPoint& point, TangentVec& velocity) const {
    Vector s;
    Vector ds;
    chart_.interpolate(t, s, ds);
    point = point_of(s);
    velocity = velocity_of(s);
  }

 private:
  [[nodiscard]] ParamPoint point_of(const Vector& s) const {
    return log_chart_ ? Vector(s.head(dim_).array().exp()) : Vector(s.head(dim_));
  }
  [[nodiscard]] TangentVec velocity_of(const Vector& s) const {
    return log_chart_ ? Vector(s.head(dim_).array().exp() * s.tail(dim_).array()) : Vector(s.tail(dim_));
  }

  numerics::Trajectory chart_;
  Eigen::Index dim_;
  bool log_chart_;
};

namespace detail {

// In the log chart u = log(theta) the state is (u, w) with w = theta' / theta,
// and w' = a(theta, theta') / theta - w^2.
inline numerics::OdeProblem geodesic_problem(const ManifoldSpec& spec, const ParamPoint& x, const TangentVec& v,
                                             double t_end) {
  const Eigen::Index d = spec.dim;
  numerics::OdeProblem p;
  p.initial_state.resize(2 * d);
  p.t0 = 0.0;
  p.t1 = t_end;
  p.rtol = spec.rtol;
  p.atol = spec.atol;
  if (spec.integrate_in_log_chart) {
    p.initial_state << x.array().log().matrix(), v.cwiseQuotient(x);
    p.rhs = [&spec, d](double, const Vector& s) {
      const Vector theta = s.head(d).array().exp();
      const Vector w = s.tail(d);
      const Vector a = geodesic_acceleration(spec, theta, theta.cwiseProduct(w));
      Vector out(2 * d);
      out.head(d) = w;
      out.tail(d) = a.cwiseQuotient(theta) - w.cwiseProduct(w);
      return out;
    };
    p.admissible = [&spec, d](const Vector& s) { return spec.inside(s.head(d).array().exp().matrix()); };
  } else {
    p.initial_state << x, v;
    p.rhs = [&spec, d](double, const Vector& s) {
      Vector out(2 * d);
      out.head(d) = s.tail(d);
      out.tail(d) = geodesic_acceleration(spec, s.head(d), s.tail(d));
      return out;
    };
    p.admissible = [&spec, d](const Vector& s) { return spec.inside(s.head(d)); };
  }
  return p;
}

}  // namespace detail

/// Integrates the geodesic equation from (x, v) over [0, t_end].
inline GeodesicSolution integrate_geodesic(const ManifoldSpec& spec, const ParamPoint& x, const TangentVec& v,
                                           double t_end = 1.0) {
  try {
    return {numerics::integrate_ode(detail::geodesic_problem(spec, x, v, t_end)), spec.dim,
            spec.integrate_in_log_chart};
  } catch (const OdeFailure& e) {
    throw IncompleteGeodesic("geodesic from " + fisherrao::detail::format_vector(x) + " with velocity " +
                                 fisherrao::detail::format_vector(v) + " leaves " + spec.name + " at t = " +
                                 std::to_string(e.time()),
                             e.time());
  }
}

/// End point gamma(1) of the geodesic starting at x with velocity v.
inline ParamPoint exp_map(const ManifoldSpec& spec, const ParamPoint& x, const TangentVec& v) {
  spec.check_point(x, "exp");
  spec.check_tangent(v, "exp");
  if (v.isZero(0.0)) return x;
  if (spec.geodesic_flow) return spec.geodesic_flow(x, v, 1.0).first;
  return integrate_geodesic(spec, x, v).end_point();
}

struct ShootingOptions {
  int max_iterations = 100;
  /// Converged when ||exp_x(v) - y||_inf <= tolerance * (1 + ||y||_inf);
  /// defaults to the manifold's log_tolerance.
  std::optional<double> tolerance;
};

namespace detail {

class Shooter {
 public:
  Shooter(const ManifoldSpec& spec, const ParamPoint& x, ShootingOptions opts)
      : spec_(spec), x_(x), opts_(opts) {}

  // Newton on exp_x(v) - target with a finite-difference Jacobian refreshed
  // after damped steps and Broyden updates otherwise.
  std::optional<Vector> solve(const ParamPoint& target, Vector v, double& best_residual) {
    const double tol = opts_.tolerance.value_or(spec_.log_tolerance) * (1.0 + target.lpNorm<Eigen::Infinity>());
    auto residual = [&](const Vector& w) -> std::optional<Vector> {
      ++evaluations_;
      try {
        return Vector(integrate_geodesic(spec_, x_, w).end_point() - target);
      } catch (const NumericalError&) {
        return std::nullopt;
      } catch (const DomainError&) {
        return std::nullopt;
      }
    };

    std::optional<Vector> f = residual(v);
    for (int k = 0; !f && k < 60; ++k) {
      v *= 0.5;
      f = residual(v);
    }
    if (!f) return std::nullopt;

    Matrix jac;
    bool fresh = false;
    auto refresh = [&]() -> bool {
      auto j = jacobian(v, *f, target);
      if (!j) return false;
      jac = std::move(*j);
      fresh = true;
      return true;
    };
    if (!refresh()) return std::nullopt;

    for (int iter = 0; iter < opts_.max_iterations; ++iter) {
      const double fnorm = f->lpNorm<Eigen::Infinity>();
      best_residual = std::min(best_residual, fnorm);
      if (fnorm <= tol) return v;

      const Vector step = jac.colPivHouseholderQr().solve(-*f);
      if (!step.allFinite()) {
        if (fresh || !refresh()) return std::nullopt;
        continue;
      }
      // A stale Broyden direction gets a short line search before the
      // Jacobian is rebuilt; a fresh one gets the full budget.
      const int halvings = fresh ? 30 : 4;
      double lambda = 1.0;
      std::optional<Vector> f_new;
      Vector v_new;
      for (int k = 0; k < halvings; ++k, lambda *= 0.5) {
        v_new = v + lambda * step;
        f_new = residual(v_new);
        if (f_new && f_new->lpNorm<Eigen::Infinity>() < fnorm) break;
        f_new.reset();
      }
      if (!f_new) {
        // Stalled: a stale Jacobian gets one refresh, a fresh one gives up.
        if (fresh || !refresh()) return std::nullopt;
        continue;
      }
      const Vector s = v_new - v;
      const Vector df = *f_new - *f;
      v = v_new;
      f = f_new;
      if (lambda < 1.0) {
        if (!refresh()) return std::nullopt;
      } else {
        jac += ((df - jac * s) * s.transpose()) / s.squaredNorm();
        fresh = false;
      }
    }
    best_residual = std::min(best_residual, f->lpNorm<Eigen::Infinity>());
    return f->lpNorm<Eigen::Infinity>() <= tol ? std::optional<Vector>(v) : std::nullopt;
  }

  [[nodiscard]] int evaluations() const { return evaluations_; }

 private:
  std::optional<Matrix> jacobian(const Vector& v, const Vector& f0, const ParamPoint& target) {
    const Eigen::Index d = spec_.dim;
    Matrix jac(d, d);
    // The step must dominate the integration error of the endpoints.
    const double base = std::max(numerics::FdSteps::first(), std::sqrt(spec_.rtol));
    for (Eigen::Index i = 0; i < d; ++i) {
      const double h = base * std::max(1.0, std::abs(v[i]));
      Vector vp = v;
      Vector vm = v;
      vp[i] += h;
      vm[i] -= h;
      std::optional<Vector> fp;
      std::optional<Vector> fm;
      try {
        fp = integrate_geodesic(spec_, x_, vp).end_point() - target;
      } catch (const Error&) {
      }
      try {
        fm = integrate_geodesic(spec_, x_, vm).end_point() - target;
      } catch (const Error&) {
      }
      evaluations_ += 2;
      if (fp && fm) {
        jac.col(i) = (*fp - *fm) / (2.0 * h);
      } else if (fp) {
        jac.col(i) = (*fp - f0) / h;
      } else if (fm) {
        jac.col(i) = (f0 - *fm) / h;
      } else {
        return std::nullopt;
      }
    }
    return jac;
  }

  const ManifoldSpec& spec_;
  ParamPoint x_;
  ShootingOptions opts_;
  int evaluations_ = 0;
};

}  // namespace detail

/// log_x(y): closed form when available, otherwise shooting on the geodesic
/// initial velocity. The shooting starts from the velocity of the manifold's
/// chart path (the coordinate difference y - x by default); if Newton stalls,
/// it walks the target along that path, warm-starting each stage from the
/// previous solution.
inline TangentVec log_map(const ManifoldSpec& spec, const ParamPoint& x, const ParamPoint& y,
                          ShootingOptions opts = {}) {
  spec.check_point(x, "log");
  spec.check_point(y, "log");
  if (x == y) return TangentVec::Zero(spec.dim);
  if (spec.log_map) return spec.log_map(x, y);

  auto path = [&](double s) -> Vector {
    if (s == 1.0) return y;
    return spec.chart_path ? spec.chart_path(x, y, s) : Vector(x + s * (y - x));
  };
  const Vector guess0 = spec.chart_path_velocity ? spec.chart_path_velocity(x, y) : Vector(y - x);

  detail::Shooter shooter(spec, x, opts);
  double best = std::numeric_limits<double>::infinity();
  if (auto v = shooter.solve(y, guess0, best)) return *v;

  // Continuation along the chart path.
  double s = 0.0;
  Vector v = Vector::Zero(spec.dim);
  double ds = 0.5;
  int stages = 0;
  while (s < 1.0) {
    if (++stages > 200 || ds < 1e-4) {
      throw NonConvergence("log: shooting from " + fisherrao::detail::format_vector(x) + " to " +
                               fisherrao::detail::format_vector(y) + " did not converge on " + spec.name +
                               " (best residual " + std::to_string(best) + ")",
                           best);
    }
    const double s_next = std::min(1.0, s + ds);
    const Vector target = path(s_next);
    const Vector guess = s > 0.0 ? Vector(v * (s_next / s)) : Vector(s_next * guess0);
    double stage_best = std::numeric_limits<double>::infinity();
    if (auto w = shooter.solve(target, guess, stage_best)) {
      v = *w;
      s = s_next;
      ds *= 1.5;
    } else {
      ds *= 0.5;
    }
    if (s_next == 1.0) best = std::min(best, stage_best);
  }
  return v;
}

/// Geodesic distance: closed form when the family provides it, otherwise
/// ||log_x(y)||_x.
inline double dist(const ManifoldSpec& spec, const ParamPoint& x, const ParamPoint& y,
                   ShootingOptions opts = {}) {
  spec.check_point(x, "dist");
  spec.check_point(y, "dist");
  if (spec.distance) return spec.distance(x, y);
  if (x == y) return 0.0;
  return norm(spec, x, log_map(spec, x, y, opts));
}

/// Samples the geodesic from x with initial velocity v at n_samples equally
/// spaced times in [0, 1].
inline GeodesicPath geodesic_from_tangent(const ManifoldSpec& spec, const ParamPoint& x, const TangentVec& v,
                                          int n_samples = 100) {
  spec.check_point(x, "geodesic");
  spec.check_tangent(v, "geodesic");
  if (n_samples < 2) throw DomainError("geodesic: need at least two samples");
  GeodesicPath path;
  path.length = norm(spec, x, v);
  path.times.resize(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) path.times[static_cast<std::size_t>(i)] = double(i) / (n_samples - 1);

  if (v.isZero(0.0)) {
    path.points.assign(path.times.size(), x);
    path.velocities.assign(path.times.size(), v);
    return path;
  }
  if (spec.geodesic_flow) {
    for (const double t : path.times) {
      auto [p, dp] = spec.geodesic_flow(x, v, t);
      path.points.push_back(std::move(p));
      path.velocities.push_back(std::move(dp));
    }
    return path;
  }
  const GeodesicSolution solution = integrate_geodesic(spec, x, v);
  ParamPoint p;
  TangentVec dp;
  for (const double t : path.times) {
    solution.at(t, p, dp);
    path.points.push_back(p);
    path.velocities.push_back(dp);
  }
  return path;
}

/// Geodesic joining x to y (through log_x(y)).
inline GeodesicPath geodesic(const ManifoldSpec& spec, const ParamPoint& x, const ParamPoint& y,
                             int n_samples = 100) {
  return geodesic_from_tangent(spec, x, log_map(spec, x, y), n_samples);
}

/// Metric speed ||gamma'(t)|| at every sample of a path.
inline std::vector<double> path_speeds(const ManifoldSpec& spec, const GeodesicPath& path) {
  std::vector<double> out;
  out.reserve(path.points.size());
  for (std::size_t i = 0; i < path.points.size(); ++i) out.push_back(norm(spec, path.points[i], path.velocities[i]));
  return out;
}

/// Parallel transport of u (based at the start of `path`) to its end:
/// u'^k + Gamma^k_ij gamma'^i u^j = 0, integrated jointly with the geodesic.
inline TangentVec parallel_transport(const ManifoldSpec& spec, const TangentVec& u, const GeodesicPath& path) {
  spec.check_tangent(u, "parallel_transport");
  const TangentVec& v = path.initial_velocity();
  if (v.isZero(0.0)) return u;
  const Eigen::Index d = spec.dim;
  numerics::OdeProblem p;
  p.initial_state.resize(3 * d);
  p.initial_state << path.start(), v, u;
  p.rtol = spec.rtol;
  p.atol = spec.atol;
  p.rhs = [&spec, d](double, const Vector& s) {
    const ChristoffelTensor gamma = christoffels(spec, s.head(d));
    Vector out(3 * d);
    out.head(d) = s.segment(d, d);
    out.segment(d, d) = -gamma.contract(s.segment(d, d), s.segment(d, d));
    out.tail(d) = -gamma.contract(s.segment(d, d), s.tail(d));
    return out;
  };
  p.admissible = [&spec, d](const Vector& s) { return spec.inside(s.head(d)); };
  try {
    return numerics::integrate_ode(p).final_state().tail(d);
  } catch (const OdeFailure& e) {
    throw IncompleteGeodesic("parallel_transport: path leaves " + spec.name, e.time());
  }
}

/// Components R^l_ijk of the Riemann tensor, index (l, i, j, k) stored at
/// ((l * d + i) * d + j) * d + k, in the convention
/// R(U, V)W = nabla_U nabla_V W - nabla_V nabla_U W - nabla_[U,V] W, so that
/// <R(u, v)v, u> / (|u|^2 |v|^2 - <u, v>^2) is the sectional curvature.
class RiemannTensor {
 public:
  RiemannTensor(Eigen::Index dim, Vector data) : dim_(dim), data_(std::move(data)) {}
  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  double operator()(Eigen::Index l, Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return data_[((l * dim_ + i) * dim_ + j) * dim_ + k];
  }

  /// R(u, v)w.
  [[nodiscard]] Vector apply(const Vector& u, const Vector& v, const Vector& w) const {
    Vector out = Vector::Zero(dim_);
    for (Eigen::Index l = 0; l < dim_; ++l)
      for (Eigen::Index i = 0; i < dim_; ++i)
        for (Eigen::Index j = 0; j < dim_; ++j)
          for (Eigen::Index k = 0; k < dim_; ++k) out[l] += (*this)(l, i, j, k) * u[i] * v[j] * w[k];
    return out;
  }

 private:
  Eigen::Index dim_;
  Vector data_;
};

inline RiemannTensor riemann_tensor(const ManifoldSpec& spec, const ParamPoint& theta) {
  spec.check_point(theta, "riemann_curvature");
  const Eigen::Index d = spec.dim;
  const ChristoffelTensor gamma = christoffels(spec, theta);
  auto flat = [&](const Vector& x) -> Vector {
    if (!spec.inside(x)) throw DomainError("christoffels evaluated outside " + spec.name);
    return christoffels(spec, x).flat();
  };
  // Nested differences (Christoffels themselves from a differenced metric)
  // need the larger step to keep round-off down.
  const bool smooth_symbols = spec.christoffels || spec.metric_derivative;
  const double base =
      spec.curvature_step.value_or(smooth_symbols ? numerics::FdSteps::first() : numerics::FdSteps::second());
  const std::vector<Vector> dgamma = numerics::fd_partials(flat, theta, base);
  auto dG = [&](Eigen::Index m, Eigen::Index l, Eigen::Index j, Eigen::Index k) {
    return dgamma[static_cast<std::size_t>(m)][(l * d + j) * d + k];
  };
  Vector data(d * d * d * d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
          double r = dG(i, l, j, k) - dG(j, l, i, k);
          for (Eigen::Index m = 0; m < d; ++m) r += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          data[((l * d + i) * d + j) * d + k] = r;
        }
  // Differencing breaks the antisymmetry of the lowered tensor in (l, k) and
  // the pair exchange symmetry at the level of the step error. Projecting
  // them back makes sectional curvature depend on the plane alone.
  const Matrix g = spec.metric(theta);
  auto at = [d](const Vector& t, Eigen::Index l, Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    return t[((l * d + i) * d + j) * d + k];
  };
  Vector lowered = Vector::Zero(d * d * d * d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
          double s = 0.0;
          for (Eigen::Index m = 0; m < d; ++m) s += g(l, m) * at(data, m, i, j, k);
          lowered[((l * d + i) * d + j) * d + k] = s;
        }
  Vector sym(d * d * d * d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
          auto anti = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index e) {
            return 0.25 * (at(lowered, a, b, c, e) - at(lowered, e, b, c, a) - at(lowered, a, c, b, e) +
                           at(lowered, e, c, b, a));
          };
          sym[((l * d + i) * d + j) * d + k] = 0.5 * (anti(l, i, j, k) + anti(i, l, k, j));
        }
  const Matrix g_inv = g.inverse();
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
          double s = 0.0;
          for (Eigen::Index m = 0; m < d; ++m) s += g_inv(l, m) * at(sym, m, i, j, k);
          data[((l * d + i) * d + j) * d + k] = s;
        }
  return {d, std::move(data)};
}

inline TangentVec riemann_curvature(const ManifoldSpec& spec, const ParamPoint& theta, const TangentVec& u,
                                    const TangentVec& v, const TangentVec& w) {
  spec.check_tangent(u, "riemann_curvature");
  spec.check_tangent(v, "riemann_curvature");
  spec.check_tangent(w, "riemann_curvature");
  return riemann_tensor(spec, theta).apply(u, v, w);
}

/// Sectional curvature of the plane spanned by u and v, from a precomputed tensor.
inline double sectional_curvature(const ManifoldSpec& spec, const RiemannTensor& r, const ParamPoint& theta,
                                  const TangentVec& u, const TangentVec& v) {
  const Matrix g = spec.metric(theta);
  const double uu = u.dot(g * u);
  const double vv = v.dot(g * v);
  const double uv = u.dot(g * v);
  const double denom = uu * vv - uv * uv;
  if (!(denom >= 1e-12 * uu * vv) || denom <= 0.0) {
    throw DegeneratePlane("sectional_curvature: tangent vectors do not span a plane");
  }
  return r.apply(u, v, v).dot(g * u) / denom;
}

inline double sectional_curvature(const ManifoldSpec& spec, const ParamPoint& theta, const TangentVec& u,
                                  const TangentVec& v) {
  spec.check_tangent(u, "sectional_curvature");
  spec.check_tangent(v, "sectional_curvature");
  return sectional_curvature(spec, riemann_tensor(spec, theta), theta, u, v);
}

}  // namespace fisherrao::geometry
