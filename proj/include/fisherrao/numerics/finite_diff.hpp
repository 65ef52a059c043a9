#pragma once

#include "fisherrao/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fisherrao::numerics {

/// Central-difference step policy: h_i = base * max(1, |x_i|) with
/// base = eps^(1/3) for first derivatives and eps^(1/4) for second ones.
struct FdSteps {
  static double first() { return std::cbrt(std::numeric_limits<double>::epsilon()); }
  static double second() { return std::pow(std::numeric_limits<double>::epsilon(), 0.25); }
  static double at(double base, double x) { return base * std::max(1.0, std::abs(x)); }
};

namespace detail {

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const Eigen::MatrixXd& m) { return m.allFinite(); }
inline bool finite_value(const Eigen::VectorXd& m) { return m.allFinite(); }

// Evaluates f at every offset point; returns nothing if one of them is
// outside the domain (throws DomainError or yields a non-finite value).
template <typename F>
auto try_eval(F& f, const Eigen::VectorXd& x) -> std::optional<decltype(f(x))> {
  try {
    auto v = f(x);
    if (!finite_value(v)) return std::nullopt;
    return v;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// Runs `attempt(h_scale)` with scale 1, then with scales shrinking by 1/64
// while the offsets leave the domain.
template <typename Attempt>
auto with_shrink(Attempt&& attempt, const char* what) {
  double scale = 1.0;
  for (int tries = 0; tries < 6; ++tries, scale /= 64.0) {
    if (auto r = attempt(scale)) return *r;
  }
  throw DomainError(std::string(what) + ": evaluation outside the domain even after shrinking the step");
}

}  // namespace detail

/// Partial derivatives of a scalar- or matrix-valued function of a vector:
/// element i of the result is d f / d x_i by central differences.
/// `max_step`, when given, caps the step of each coordinate.
template <typename F>
auto fd_partials(F&& f, const Eigen::VectorXd& x, std::optional<double> base = std::nullopt,
                 const std::optional<Eigen::VectorXd>& max_step = std::nullopt) {
  using Value = std::decay_t<decltype(f(x))>;
  const double b = base.value_or(FdSteps::first());
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto attempt = [&](double scale) -> std::optional<Value> {
      double h = FdSteps::at(b, x[i]);
      if (max_step) h = std::min(h, (*max_step)[i]);
      h *= scale;
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[i] += h;
      xm[i] -= h;
      auto fp = detail::try_eval(f, xp);
      auto fm = detail::try_eval(f, xm);
      if (!fp || !fm) return std::nullopt;
      return Value((*fp - *fm) / (xp[i] - xm[i]));
    };
    out.push_back(detail::with_shrink(attempt, "fd_partials"));
  }
  return out;
}

/// Gradient of a scalar function.
template <typename F>
Eigen::VectorXd fd_gradient(F&& f, const Eigen::VectorXd& x) {
  const auto parts = fd_partials(f, x);
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = parts[static_cast<std::size_t>(i)];
  return g;
}

/// Hessian of a scalar function, symmetrized as (H + H^T) / 2.
template <typename F>
Eigen::MatrixXd fd_hessian(F&& f, const Eigen::VectorXd& x, std::optional<double> base = std::nullopt) {
  const double b = base.value_or(FdSteps::second());
  const Eigen::Index d = x.size();
  auto attempt = [&](double scale) -> std::optional<Eigen::MatrixXd> {
    Eigen::VectorXd h(d);
    for (Eigen::Index i = 0; i < d; ++i) h[i] = scale * FdSteps::at(b, x[i]);
    const auto f0 = detail::try_eval(f, x);
    if (!f0) return std::nullopt;
    Eigen::MatrixXd H(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp[i] += h[i];
      xm[i] -= h[i];
      const auto fp = detail::try_eval(f, xp);
      const auto fm = detail::try_eval(f, xm);
      if (!fp || !fm) return std::nullopt;
      H(i, i) = (*fp - 2.0 * *f0 + *fm) / (h[i] * h[i]);
      for (Eigen::Index j = 0; j < i; ++j) {
        Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[i] += h[i]; xpp[j] += h[j];
        xpm[i] += h[i]; xpm[j] -= h[j];
        xmp[i] -= h[i]; xmp[j] += h[j];
        xmm[i] -= h[i]; xmm[j] -= h[j];
        const auto fpp = detail::try_eval(f, xpp);
        const auto fpm = detail::try_eval(f, xpm);
        const auto fmp = detail::try_eval(f, xmp);
        const auto fmm = detail::try_eval(f, xmm);
        if (!fpp || !fpm || !fmp || !fmm) return std::nullopt;
        H(i, j) = (*fpp - *fpm - *fmp + *fmm) / (4.0 * h[i] * h[j]);
        H(j, i) = H(i, j);
      }
    }
    return Eigen::MatrixXd(0.5 * (H + H.transpose()));
  };
  return detail::with_shrink(attempt, "fd_hessian");
}

/// Scalar derivative of a function of one real variable.
template <typename F>
double fd_derivative(F&& f, double x) {
  Eigen::VectorXd v(1);
  v[0] = x;
  auto g = [&](const Eigen::VectorXd& y) { return f(y[0]); };
  return fd_partials(g, v)[0];
}

}  // namespace fisherrao::numerics
