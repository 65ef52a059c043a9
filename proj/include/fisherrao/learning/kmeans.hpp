#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/learning/distances.hpp"
#include "fisherrao/learning/geometry.hpp"
#include "fisherrao/learning/karcher.hpp"
#include "fisherrao/numerics/random.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fisherrao::learning {

struct KMeansOptions {
  int k = 2;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  KarcherOptions karcher;
  /// Receives a message whenever an empty cluster is reseeded.
  std::function<void(const std::string&)> on_reseed;
};

struct ClusteringResult {
  std::vector<Vector> centroids;
  std::vector<int> assignments;
  /// Sum of squared distances from each point to its centroid.
  double objective = 0.0;
  /// Objective after every assignment step, in order.
  std::vector<double> history;
  int iterations = 0;
  int reseeds = 0;
};

namespace detail {

// Index of the nearest centroid (lowest index on ties) and its distance.
inline std::pair<int, double> nearest(const PointGeometry& g, const Vector& p, const std::vector<Vector>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = g.dist(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return {best, best_d};
}

// k-means++ seeding: first centre uniform, then proportional to D^2.
inline std::vector<Vector> seed_centroids(const std::vector<Vector>& points, const PointGeometry& g, int k,
                                          numerics::Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Vector> centroids;
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  auto pick = static_cast<std::size_t>(numerics::uniform01(rng) * static_cast<double>(n));
  centroids.push_back(points[std::min(pick, n - 1)]);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = g.dist(points[i], centroids.back());
      d2[i] = std::min(d2[i], d * d);
      total += d2[i];
    }
    std::size_t chosen = n - 1;
    if (total > 0.0) {
      const double u = numerics::uniform01(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= u && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<std::size_t>(centroids.size()) % n;
    }
    centroids.push_back(points[chosen]);
  }
  return centroids;
}

}  // namespace detail

/// Lloyd iterations with manifold distances and Karcher-mean centroids.
/// An empty cluster is reseeded at the point farthest from its centroid.
inline ClusteringResult riemannian_kmeans(const std::vector<Vector>& points, const PointGeometry& g,
                                          KMeansOptions opts) {
  const std::size_t n = points.size();
  if (opts.k < 1) throw DomainError("kmeans: k must be positive");
  if (static_cast<std::size_t>(opts.k) > n) {
    throw DomainError("kmeans: k = " + std::to_string(opts.k) + " exceeds the number of points (" +
                      std::to_string(n) + ")");
  }
  numerics::Rng rng(opts.seed);
  ClusteringResult out;
  out.centroids = detail::seed_centroids(points, g, opts.k, rng);
  out.assignments.assign(n, -1);
  std::vector<double> dists(n, 0.0);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter + 1;
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [c, d] = detail::nearest(g, points[i], out.centroids);
      if (c != out.assignments[i]) changed = true;
      out.assignments[i] = c;
      dists[i] = d;
      objective += d * d;
    }
    out.objective = objective;
    out.history.push_back(objective);
    if (!changed) break;

    for (int c = 0; c < opts.k; ++c) {
      std::vector<Vector> members;
      for (std::size_t i = 0; i < n; ++i)
        if (out.assignments[i] == c) members.push_back(points[i]);
      if (members.empty()) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (dists[i] > dists[far]) far = i;
        out.centroids[static_cast<std::size_t>(c)] = points[far];
        out.assignments[far] = c;
        dists[far] = 0.0;
        ++out.reseeds;
        if (opts.on_reseed) {
          opts.on_reseed("kmeans: cluster " + std::to_string(c) + " was empty; reseeded at point " +
                         std::to_string(far));
        }
        continue;
      }
      out.centroids[static_cast<std::size_t>(c)] = karcher_mean(members, g, opts.karcher);
    }
  }
  return out;
}

}  // namespace fisherrao::learning
