#pragma once

#include "fisherrao/errors.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace fisherrao::numerics {

/// Seeded engine shared by all samplers. The variate transforms below are
/// written out explicitly so that draws are identical across standard
/// library implementations.
using Rng = std::mt19937_64;

/// Uniform draw in the open interval (0, 1).
inline double uniform01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw (Marsaglia polar method).
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

/// Gamma(shape, scale) draw (Marsaglia-Tsang; shapes below 1 use the
/// U^(1/shape) boost).
inline double gamma_variate(Rng& rng, double shape, double scale = 1.0) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw DomainError("gamma_variate: shape and scale must be positive");
  if (shape < 1.0) {
    const double boost = std::pow(uniform01(rng), 1.0 / shape);
    return gamma_variate(rng, shape + 1.0, scale) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

inline std::int64_t bernoulli_variate(Rng& rng, double p) { return uniform01(rng) < p ? 1 : 0; }

inline std::int64_t binomial_variate(Rng& rng, std::int64_t n, double p) {
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < n; ++i) k += bernoulli_variate(rng, p);
  return k;
}

/// Number of trials up to and including the first success (support 1, 2, ...).
inline std::int64_t geometric_variate(Rng& rng, double p) {
  if (p >= 1.0) return 1;
  const double k = std::ceil(std::log(uniform01(rng)) / std::log1p(-p));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
}

inline double exponential_variate(Rng& rng, double rate) { return -std::log(uniform01(rng)) / rate; }

/// Poisson draw: Knuth's product method on chunks of mean at most 30, summed.
inline std::int64_t poisson_variate(Rng& rng, double mean) {
  std::int64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 30.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double prod = uniform01(rng);
    std::int64_t k = 0;
    while (prod > limit) {
      prod *= uniform01(rng);
      ++k;
    }
    total += k;
  }
  return total;
}

}  // namespace fisherrao::numerics
