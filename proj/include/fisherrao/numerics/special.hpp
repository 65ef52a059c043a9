#pragma once

#include "fisherrao/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fisherrao::numerics {

/// log Gamma(x) for x > 0 (Lanczos approximation, g = 7, nine terms).
inline double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  if (x < 0.5) {
    // Reflection keeps the series in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double series = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) series += kCoef[i] / (z + static_cast<double>(i));
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

/// Polygamma function of order 0 (digamma), 1 (trigamma) or 2.
///
/// Shifts the argument upward with the recurrence
/// psi^(k)(x) = psi^(k)(x + 1) - (-1)^k k! / x^(k+1) until x >= 8, then sums
/// the Bernoulli-number asymptotic expansion.
inline double polygamma(int order, double x) {
  if (order < 0 || order > 2) {
    throw DomainError("polygamma: order must be 0, 1 or 2, got " + std::to_string(order));
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("polygamma: argument must be positive and finite, got " + std::to_string(x));
  }
  double shift = 0.0;
  while (x < 8.0) {
    const double inv = 1.0 / x;
    switch (order) {
      case 0: shift -= inv; break;
      case 1: shift += inv * inv; break;
      default: shift -= 2.0 * inv * inv * inv; break;
    }
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  double asym = 0.0;
  switch (order) {
    case 0:
      asym = std::log(x) - 0.5 * r -
             r2 * (1.0 / 12 - r2 * (1.0 / 120 - r2 * (1.0 / 252 - r2 * (1.0 / 240 - r2 * (1.0 / 132 - r2 * (691.0 / 32760 - r2 / 12))))));
      break;
    case 1:
      asym = r + 0.5 * r2 +
             r * r2 * (1.0 / 6 - r2 * (1.0 / 30 - r2 * (1.0 / 42 - r2 * (1.0 / 30 - r2 * (5.0 / 66 - r2 * (691.0 / 2730 - r2 * 7.0 / 6))))));
      break;
    default:
      asym = -r2 - r * r2 -
             r2 * r2 * (0.5 - r2 * (1.0 / 6 - r2 * (1.0 / 6 - r2 * (3.0 / 10 - r2 * (5.0 / 6 - r2 * (691.0 / 210 - r2 * 35.0 / 2))))));
      break;
  }
  return asym + shift;
}

inline double digamma(double x) { return polygamma(0, x); }
inline double trigamma(double x) { return polygamma(1, x); }

}  // namespace fisherrao::numerics
