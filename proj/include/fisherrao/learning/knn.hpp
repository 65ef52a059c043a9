#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/learning/distances.hpp"
#include "fisherrao/learning/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace fisherrao::learning {

/// Majority label among the k smallest entries of `row` (distances to the
/// training points). Ties go to the label with the smallest summed distance,
/// then to the lowest label.
inline int knn_vote(const Eigen::Ref<const Vector>& row, const std::vector<int>& labels, int k) {
  const auto n = static_cast<std::size_t>(row.size());
  if (labels.size() != n) throw DomainError("knn: one label per training point is required");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw DomainError("knn: k = " + std::to_string(k) + " must be between 1 and the training size " +
                      std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t i) { return std::isnan(row[static_cast<Eigen::Index>(i)]) ? HUGE_VAL : row[static_cast<Eigen::Index>(i)]; };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](std::size_t a, std::size_t b) {
    const double da = key(a);
    const double db = key(b);
    return da < db || (da == db && a < b);
  });
  const int classes = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> votes(static_cast<std::size_t>(classes), 0);
  std::vector<double> sums(static_cast<std::size_t>(classes), 0.0);
  for (int r = 0; r < k; ++r) {
    const std::size_t i = order[static_cast<std::size_t>(r)];
    const auto label = static_cast<std::size_t>(labels[i]);
    ++votes[label];
    sums[label] += key(i);
  }
  int best = 0;
  for (int c = 1; c < classes; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    const auto ub = static_cast<std::size_t>(best);
    if (votes[uc] > votes[ub] || (votes[uc] == votes[ub] && sums[uc] < sums[ub])) best = c;
  }
  return best;
}

/// Predictions from a precomputed query-by-train distance matrix.
inline std::vector<int> knn_from_distances(const Matrix& query_to_train, const std::vector<int>& train_labels, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(query_to_train.rows()));
  for (Eigen::Index q = 0; q < query_to_train.rows(); ++q) {
    out.push_back(knn_vote(query_to_train.row(q).transpose(), train_labels, k));
  }
  return out;
}

inline std::vector<int> knn_classify(const LabeledDataset& train, const std::vector<Vector>& queries,
                                     const PointGeometry& g, int k) {
  train.validate();
  if (!train.labeled()) throw DomainError("knn: training set has no labels");
  const DistanceMatrix d = cross_distances(queries, train.points, g);
  if (!d.complete()) {
    const auto& f = d.failures.front();
    throw NumericalError("knn: distance between query " + std::to_string(f.i) + " and training point " +
                         std::to_string(f.j) + " failed: " + f.message);
  }
  return knn_from_distances(d.values, train.labels, k);
}

}  // namespace fisherrao::learning
