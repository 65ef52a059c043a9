#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/learning/geometry.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace fisherrao::learning {

struct KarcherOptions {
  double tolerance = 1e-6;
  int max_iterations = 200;
};

struct KarcherResult {
  Vector mean;
  /// Norm of the mean log map at the returned point.
  double residual = 0.0;
  int iterations = 0;
};

namespace detail {

inline double sum_squared_distances(const PointGeometry& g, const Vector& mu, const std::vector<Vector>& points) {
  double s = 0.0;
  for (const auto& p : points) {
    const double d = g.dist(mu, p);
    s += d * d;
  }
  return s;
}

}  // namespace detail

/// Intrinsic mean by the fixed-point iteration mu <- exp_mu(tau mean_i log_mu x_i)
/// with tau = 1, halved while the sum of squared distances increases.
inline KarcherResult karcher_mean_detailed(const std::vector<Vector>& points, const PointGeometry& g,
                                           KarcherOptions opts = {}) {
  if (points.empty()) throw DomainError("karcher_mean: no points");
  const double n = static_cast<double>(points.size());
  KarcherResult out;
  if (points.size() == 1) {
    out.mean = points.front();
    return out;
  }

  Vector mu = Vector::Zero(points.front().size());
  for (const auto& p : points) mu += p;
  mu /= n;
  if (!g.belongs(mu)) {
    // Start from the sample point with the smallest spread instead.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      const double s = detail::sum_squared_distances(g, p, points);
      if (s < best) {
        best = s;
        mu = p;
      }
    }
  }

  auto mean_log = [&](const Vector& at, double& objective) {
    Vector sum = Vector::Zero(at.size());
    objective = 0.0;
    for (const auto& p : points) {
      const Vector v = g.log(at, p);
      const double d = g.norm(at, v);
      objective += d * d;
      sum += v;
    }
    return Vector(sum / n);
  };

  double objective = 0.0;
  Vector step = mean_log(mu, objective);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.residual = g.norm(mu, step);
    out.iterations = iter;
    if (out.residual <= opts.tolerance) {
      out.mean = mu;
      return out;
    }
    double tau = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 30; ++halving, tau *= 0.5) {
      try {
        const Vector candidate = g.exp(mu, tau * step);
        if (!g.belongs(candidate)) continue;
        double candidate_objective = 0.0;
        const Vector candidate_step = mean_log(candidate, candidate_objective);
        if (candidate_objective <= objective) {
          mu = candidate;
          step = candidate_step;
          objective = candidate_objective;
          moved = true;
          break;
        }
      } catch (const Error&) {
      }
    }
    if (!moved) break;
  }
  out.residual = g.norm(mu, step);
  if (out.residual <= opts.tolerance) {
    out.mean = mu;
    return out;
  }
  throw NonConvergence("karcher_mean: stopped at " + fisherrao::detail::format_vector(mu) + " with residual " +
                           std::to_string(out.residual),
                       out.residual);
}

inline Vector karcher_mean(const std::vector<Vector>& points, const PointGeometry& g, KarcherOptions opts = {}) {
  return karcher_mean_detailed(points, g, opts).mean;
}

}  // namespace fisherrao::learning
