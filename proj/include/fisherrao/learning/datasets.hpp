#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/learning/distances.hpp"
#include "fisherrao/numerics/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace fisherrao::learning {

/// Beta parameters on the two lines alpha_2 = factor alpha_1 and
/// alpha_1 = factor alpha_2, with alpha running over 1/5, ..., 1/1, 2, ..., 9.
/// Label 0 marks the first line, label 1 the second.
inline LabeledDataset two_mean_lines(double factor = 5.0) {
  std::vector<double> values;
  for (int i = 1; i <= 5; ++i) values.push_back(1.0 / i);
  for (int i = 2; i <= 9; ++i) values.push_back(i);
  LabeledDataset out;
  for (const double v : values) {
    out.points.push_back(Vector{{v, factor * v}});
    out.labels.push_back(0);
  }
  for (const double v : values) {
    out.points.push_back(Vector{{factor * v, v}});
    out.labels.push_back(1);
  }
  return out;
}

struct SyntheticDirichletOptions {
  int dimension = 10;
  int classes = 4;
  int per_class = 20;
  /// Concentration of the per-point mean direction around its class direction.
  double direction_concentration = 50.0;
  /// Total mass sum(alpha) is log-uniform on [min_scale, max_scale].
  double min_scale = 5.0;
  double max_scale = 200.0;
  std::uint64_t seed = 1;
};

/// Dirichlet parameters alpha = s m: each class has its own mean direction,
/// points scatter around it, and the scale s varies over orders of magnitude
/// independently of the class.
inline LabeledDataset synthetic_dirichlet(const SyntheticDirichletOptions& o) {
  if (o.dimension < 2 || o.classes < 1 || o.per_class < 1) throw DomainError("synthetic_dirichlet: bad sizes");
  numerics::Rng rng(o.seed);
  auto simplex_draw = [&](const Vector& conc) {
    Vector x(conc.size());
    for (Eigen::Index i = 0; i < conc.size(); ++i) x[i] = numerics::gamma_variate(rng, conc[i]);
    return Vector(x / x.sum());
  };
  const Vector uniform = Vector::Constant(o.dimension, 1.0 / o.dimension);
  std::vector<Vector> directions;
  for (int c = 0; c < o.classes; ++c) {
    directions.push_back(0.5 * uniform + 0.5 * simplex_draw(Vector::Ones(o.dimension)));
  }
  LabeledDataset out;
  const double lo = std::log(o.min_scale);
  const double hi = std::log(o.max_scale);
  for (int c = 0; c < o.classes; ++c) {
    for (int i = 0; i < o.per_class; ++i) {
      const Vector m = simplex_draw(o.direction_concentration * o.dimension * directions[static_cast<std::size_t>(c)]);
      const double s = std::exp(lo + (hi - lo) * numerics::uniform01(rng));
      out.points.push_back(s * m);
      out.labels.push_back(c);
    }
  }
  return out;
}

/// Stratified split: within every class, a `fraction` of the points (at
/// least one) goes to training, the rest to testing.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

inline Split stratified_split(const std::vector<int>& labels, double fraction, std::uint64_t seed) {
  numerics::Rng rng(seed);
  int classes = 0;
  for (const int l : labels) classes = std::max(classes, l + 1);
  Split out;
  for (int c = 0; c < classes; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) members.push_back(i);
    for (std::size_t i = members.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(numerics::uniform01(rng) * static_cast<double>(i));
      std::swap(members[i - 1], members[std::min(j, i - 1)]);
    }
    auto n_train = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(members.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size());
    out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
  }
  return out;
}

}  // namespace fisherrao::learning
