#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/learning/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace fisherrao::learning {

/// A set of points on one manifold, optionally labeled 0..C-1.
struct LabeledDataset {
  std::vector<Vector> points;
  std::vector<int> labels;
  std::vector<std::string> ids;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool labeled() const { return !labels.empty(); }
  [[nodiscard]] int class_count() const {
    int c = 0;
    for (const int l : labels) c = std::max(c, l + 1);
    return c;
  }

  void validate() const {
    if (points.empty()) return;
    const Eigen::Index d = points.front().size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != d) {
        throw DomainError("dataset: point " + std::to_string(i) + " has dimension " +
                          std::to_string(points[i].size()) + ", expected " + std::to_string(d));
      }
    }
    if (labeled() && labels.size() != points.size()) throw DomainError("dataset: one label per point is required");
    for (const int l : labels)
      if (l < 0) throw DomainError("dataset: labels must be non-negative");
  }
};

struct DistanceFailure {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

struct DistanceMatrix {
  Matrix values;
  /// Pairs whose distance could not be computed; their entries are NaN.
  std::vector<DistanceFailure> failures;

  [[nodiscard]] bool complete() const { return failures.empty(); }
};

/// Distances between every pair of points. Failing pairs are recorded and
/// left as NaN instead of aborting the whole matrix.
inline DistanceMatrix pairwise_distances(const std::vector<Vector>& points, const PointGeometry& geometry) {
  const auto n = static_cast<Eigen::Index>(points.size());
  DistanceMatrix out;
  out.values = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = std::numeric_limits<double>::quiet_NaN();
      try {
        d = geometry.dist(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      } catch (const Error& e) {
        out.failures.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), e.what()});
      }
      out.values(i, j) = d;
      out.values(j, i) = d;
    }
  }
  return out;
}

/// Distances from every query point (rows) to every reference point.
inline DistanceMatrix cross_distances(const std::vector<Vector>& queries, const std::vector<Vector>& references,
                                      const PointGeometry& geometry) {
  DistanceMatrix out;
  out.values.resize(static_cast<Eigen::Index>(queries.size()), static_cast<Eigen::Index>(references.size()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    for (std::size_t j = 0; j < references.size(); ++j) {
      double d = std::numeric_limits<double>::quiet_NaN();
      try {
        d = geometry.dist(queries[i], references[j]);
      } catch (const Error& e) {
        out.failures.push_back({i, j, e.what()});
      }
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    }
  }
  return out;
}

}  // namespace fisherrao::learning
