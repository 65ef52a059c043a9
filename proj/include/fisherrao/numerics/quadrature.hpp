#pragma once

#include "fisherrao/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace fisherrao::numerics {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  GaussLegendre(int count, double a, double b) {
    if (count < 1) throw DomainError("GaussLegendre: node count must be positive");
    if (!(a < b)) throw DomainError("GaussLegendre: interval must satisfy a < b");
    nodes.resize(count);
    weights.resize(count);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    const int m = (count + 1) / 2;
    for (int i = 0; i < m; ++i) {
      // Tricomi initial guess, then Newton on P_n.
      double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 0; j < count; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = count * (z * p0 - p1) / (z * z - 1.0);
        const double step = p0 / dp;
        z -= step;
        if (std::abs(step) < 1e-16) break;
      }
      // Recompute the derivative at the converged node.
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      const double w = 2.0 / ((1.0 - z * z) * dp * dp);
      nodes[i] = mid - half * z;
      nodes[count - 1 - i] = mid + half * z;
      weights[i] = half * w;
      weights[count - 1 - i] = half * w;
    }
  }
};

/// Where an expectation is evaluated: a real segment with a Gauss-Legendre
/// node count, or an integer range. An integer range without an upper end is
/// summed until the terms become negligible.
struct QuadratureRule {
  enum class Kind { kContinuous, kDiscrete };

  Kind kind = Kind::kContinuous;
  double a = 0.0;
  double b = 1.0;
  int node_count = 100;
  /// Nodes sit at a + (b - a) u^grading for Gauss-Legendre u on [0, 1].
  /// Values above 1 cluster them at `a`, for densities with a power-law
  /// singularity there.
  double grading = 1.0;
  std::int64_t first = 0;
  std::optional<std::int64_t> last;

  static QuadratureRule continuous(double a, double b, int node_count = 100, double grading = 1.0) {
    if (!(a < b)) throw DomainError("QuadratureRule: interval must satisfy a < b");
    if (node_count < 1) throw DomainError("QuadratureRule: node count must be positive");
    if (!(grading >= 1.0)) throw DomainError("QuadratureRule: grading must be at least 1");
    QuadratureRule r;
    r.kind = Kind::kContinuous;
    r.a = a;
    r.b = b;
    r.node_count = node_count;
    r.grading = grading;
    return r;
  }

  static QuadratureRule discrete(std::int64_t first, std::optional<std::int64_t> last = std::nullopt) {
    if (last && *last < first) throw DomainError("QuadratureRule: empty integer range");
    QuadratureRule r;
    r.kind = Kind::kDiscrete;
    r.first = first;
    r.last = last;
    return r;
  }
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
  return m.template lpNorm<Eigen::Infinity>();
}

inline bool all_finite(double v) { return std::isfinite(v); }
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace detail

/// Relative size below which the tail of an unbounded integer sum is dropped.
inline constexpr double kDiscreteTailTolerance = 1e-14;
inline constexpr std::int64_t kMaxDiscreteTerms = 50'000'000;

/// Weighted sum of `f` over the rule: Gauss-Legendre for a real segment,
/// plain summation over an integer range. `f` may return a double or an
/// Eigen matrix; `zero` supplies the additive identity of that type.
template <typename F, typename Value>
Value quadrature_expectation(F&& f, const QuadratureRule& rule, Value zero) {
  Value sum = zero;
  if (rule.kind == QuadratureRule::Kind::kContinuous) {
    const GaussLegendre gl(rule.node_count, 0.0, 1.0);
    const double width = rule.b - rule.a;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = gl.nodes[i];
      const double x = rule.a + width * std::pow(u, rule.grading);
      const double w = gl.weights[i] * width * rule.grading * std::pow(u, rule.grading - 1.0);
      Value v = f(x);
      if (!detail::all_finite(v)) {
        throw IntegrationError("quadrature: non-finite integrand at node x = " + std::to_string(x), x);
      }
      sum = sum + w * v;
    }
    return sum;
  }

  int small_run = 0;
  for (std::int64_t k = rule.first;; ++k) {
    if (rule.last && k > *rule.last) break;
    if (k - rule.first > kMaxDiscreteTerms) {
      throw IntegrationError("quadrature: integer sum did not converge", static_cast<double>(k));
    }
    const double x = static_cast<double>(k);
    Value v = f(x);
    if (!detail::all_finite(v)) {
      throw IntegrationError("quadrature: non-finite summand at k = " + std::to_string(k), x);
    }
    sum = sum + v;
    if (!rule.last) {
      const double term = detail::magnitude(v);
      const double total = detail::magnitude(sum);
      small_run = (term < kDiscreteTailTolerance * total) ? small_run + 1 : 0;
      if (small_run >= 2) break;
    }
  }
  return sum;
}

template <typename F>
double quadrature_expectation(F&& f, const QuadratureRule& rule) {
  return quadrature_expectation(std::forward<F>(f), rule, 0.0);
}

/// Adaptive Gauss-Legendre integration of a scalar function on [a, b];
/// bisects until the 10-node estimate agrees with the sum over the halves.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-13, int max_depth = 40) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_adaptive(f, b, a, tol, max_depth);
  static const GaussLegendre unit(10, 0.0, 1.0);
  auto panel = [&](double lo, double hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < unit.nodes.size(); ++i) s += unit.weights[i] * f(lo + (hi - lo) * unit.nodes[i]);
    return s * (hi - lo);
  };
  auto recurse = [&](auto&& self, double lo, double hi, double whole, double eps, int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double left = panel(lo, mid);
    const double right = panel(mid, hi);
    const double both = left + right;
    if (std::abs(both - whole) <= eps * std::max(1.0, std::abs(both)) || depth <= 0) return both;
    return self(self, lo, mid, left, eps, depth - 1) + self(self, mid, hi, right, eps, depth - 1);
  };
  return recurse(recurse, a, b, panel(a, b), tol, max_depth);
}

}  // namespace fisherrao::numerics
