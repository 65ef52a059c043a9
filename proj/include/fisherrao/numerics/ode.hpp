#pragma once

#include "fisherrao/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace fisherrao::numerics {

using Vec = Eigen::VectorXd;

/// First-order system y' = rhs(t, y) on [t0, t1].
struct OdeProblem {
  std::function<Vec(double, const Vec&)> rhs;
  Vec initial_state;
  double t0 = 0.0;
  double t1 = 1.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  /// States for which this returns false are rejected (the step shrinks).
  std::function<bool(const Vec&)> admissible;
  double max_step = std::numeric_limits<double>::infinity();
  /// Attempted steps (accepted or not) before giving up.
  long max_steps = 20000;

  [[nodiscard]] Eigen::Index dimension() const { return initial_state.size(); }
};

/// Accepted steps of an integration, with cubic Hermite dense output.
class Trajectory {
 public:
  Trajectory() = default;

  void push(double t, Vec y, Vec dy) {
    times_.push_back(t);
    states_.push_back(std::move(y));
    derivatives_.push_back(std::move(dy));
  }

  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] const std::vector<Vec>& states() const { return states_; }
  [[nodiscard]] const std::vector<Vec>& derivatives() const { return derivatives_; }
  [[nodiscard]] const Vec& final_state() const { return states_.back(); }
  [[nodiscard]] double final_time() const { return times_.back(); }
  [[nodiscard]] std::size_t size() const { return times_.size(); }

  /// State at an arbitrary time inside the integrated span.
  [[nodiscard]] Vec state_at(double t) const {
    Vec y;
    Vec dy;
    interpolate(t, y, dy);
    return y;
  }

  /// State and its time derivative at t (derivative of the Hermite cubic).
  void interpolate(double t, Vec& y, Vec& dy) const {
    if (times_.size() == 1 || t <= times_.front()) {
      y = states_.front();
      dy = derivatives_.front();
      return;
    }
    if (t >= times_.back()) {
      y = states_.back();
      dy = derivatives_.back();
      return;
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double h = times_[i + 1] - times_[i];
    const double s = (t - times_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    y = h00 * states_[i] + h10 * h * derivatives_[i] + h01 * states_[i + 1] + h11 * h * derivatives_[i + 1];
    const double d00 = (6 * s2 - 6 * s) / h;
    const double d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / h;
    const double d11 = 3 * s2 - 2 * s;
    dy = d00 * states_[i] + d10 * derivatives_[i] + d01 * states_[i + 1] + d11 * derivatives_[i + 1];
  }

 private:
  std::vector<double> times_;
  std::vector<Vec> states_;
  std::vector<Vec> derivatives_;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  // b - b*, the embedded error weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

inline bool evaluate(const OdeProblem& p, double t, const Vec& y, Vec& out) {
  if (!y.allFinite()) return false;
  if (p.admissible && !p.admissible(y)) return false;
  try {
    out = p.rhs(t, y);
  } catch (const Error&) {
    return false;
  }
  return out.allFinite();
}

}  // namespace detail

/// Adaptive Runge-Kutta 4(5) (Dormand-Prince) integration. A step is accepted
/// when every component of the local error estimate is within
/// max(rtol * |y_i|, atol). Trial states that are not admissible, or where the
/// right-hand side is not finite, are rejected like an error-test failure.
/// Throws OdeFailure when the step size underflows or the step budget runs out.
inline Trajectory integrate_ode(const OdeProblem& p) {
  using DP = detail::DormandPrince;
  if (!(p.t1 > p.t0)) throw DomainError("integrate_ode: time span must satisfy t1 > t0");
  if (!(p.rtol > 0.0) || !(p.atol > 0.0)) throw DomainError("integrate_ode: tolerances must be positive");

  const Eigen::Index n = p.dimension();
  Vec y = p.initial_state;
  Vec k1(n);
  if (!detail::evaluate(p, p.t0, y, k1)) {
    throw OdeFailure("integrate_ode: initial state is not admissible", p.t0, y);
  }

  Trajectory traj;
  traj.push(p.t0, y, k1);

  auto scale_of = [&](const Vec& a, const Vec& b) {
    return (p.rtol * a.cwiseAbs().cwiseMax(b.cwiseAbs())).cwiseMax(p.atol);
  };

  // Initial step guess (Hairer, Norsett & Wanner, II.4).
  const double span = p.t1 - p.t0;
  double h = 0.0;
  {
    const Vec sc = scale_of(y, y);
    const double d0 = y.cwiseQuotient(sc).lpNorm<Eigen::Infinity>();
    const double d1 = k1.cwiseQuotient(sc).lpNorm<Eigen::Infinity>();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, span, p.max_step});
  }

  const double eps = std::numeric_limits<double>::epsilon();
  Vec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
  double t = p.t0;
  long attempts = 0;
  while (t < p.t1) {
    if (++attempts > p.max_steps) {
      throw OdeFailure("integrate_ode: no progress after " + std::to_string(p.max_steps) + " steps at t = " +
                           std::to_string(t),
                       t, y);
    }
    if (t + h > p.t1) h = p.t1 - t;
    if (h < 16.0 * eps * std::max(1.0, std::abs(t))) {
      throw OdeFailure("integrate_ode: step size underflow at t = " + std::to_string(t) + ", last state " +
                           fisherrao::detail::format_vector(y),
                       t, y);
    }

    bool ok = true;
    ytmp = y + h * DP::a21 * k1;
    ok = ok && detail::evaluate(p, t + DP::c2 * h, ytmp, k2);
    if (ok) {
      ytmp = y + h * (DP::a31 * k1 + DP::a32 * k2);
      ok = detail::evaluate(p, t + DP::c3 * h, ytmp, k3);
    }
    if (ok) {
      ytmp = y + h * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3);
      ok = detail::evaluate(p, t + DP::c4 * h, ytmp, k4);
    }
    if (ok) {
      ytmp = y + h * (DP::a51 * k1 + DP::a52 * k2 + DP::a53 * k3 + DP::a54 * k4);
      ok = detail::evaluate(p, t + DP::c5 * h, ytmp, k5);
    }
    if (ok) {
      ytmp = y + h * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 + DP::a64 * k4 + DP::a65 * k5);
      ok = detail::evaluate(p, t + h, ytmp, k6);
    }
    if (ok) {
      ynew = y + h * (DP::b1 * k1 + DP::b3 * k3 + DP::b4 * k4 + DP::b5 * k5 + DP::b6 * k6);
      ok = detail::evaluate(p, t + h, ynew, k7);
    }
    if (!ok) {
      h *= 0.25;
      continue;
    }

    const Vec err = h * (DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 + DP::e5 * k5 + DP::e6 * k6 + DP::e7 * k7);
    const double ratio = err.cwiseQuotient(scale_of(y, ynew)).lpNorm<Eigen::Infinity>();
    if (ratio <= 1.0) {
      t = (p.t1 - (t + h) < 4.0 * eps * std::max(1.0, std::abs(p.t1))) ? p.t1 : t + h;
      y = ynew;
      k1 = k7;
      traj.push(t, y, k1);
      const double grow = ratio == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(ratio, -0.2));
      h = std::min(h * grow, p.max_step);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(ratio, -0.2));
    }
  }
  return traj;
}

}  // namespace fisherrao::numerics
