#pragma once

#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/geometry/riemannian.hpp"

#include <functional>
#include <string>

namespace fisherrao::learning {

/// The operations the learning algorithms need from a space of points.
/// Built either from a ManifoldSpec or as plain Euclidean coordinates, so
/// that the same algorithm can be run with both for comparison.
struct PointGeometry {
  std::string name;
  std::function<double(const Vector&, const Vector&)> dist;
  std::function<Vector(const Vector&, const Vector&)> log;
  std::function<Vector(const Vector&, const Vector&)> exp;
  std::function<double(const Vector&, const Vector&)> norm;
  std::function<bool(const Vector&)> belongs;

  static PointGeometry riemannian(const ManifoldSpec& spec) {
    PointGeometry g;
    g.name = spec.name;
    g.dist = [spec](const Vector& a, const Vector& b) { return geometry::dist(spec, a, b); };
    g.log = [spec](const Vector& a, const Vector& b) { return geometry::log_map(spec, a, b); };
    g.exp = [spec](const Vector& a, const Vector& v) { return geometry::exp_map(spec, a, v); };
    g.norm = [spec](const Vector& a, const Vector& v) { return geometry::norm(spec, a, v); };
    g.belongs = [spec](const Vector& a) { return spec.inside(a); };
    return g;
  }

  /// Coordinates with the Euclidean distance. `belongs` restricts means to
  /// a domain when one is given.
  static PointGeometry euclidean(std::function<bool(const Vector&)> belongs = nullptr) {
    PointGeometry g;
    g.name = "euclidean";
    g.dist = [](const Vector& a, const Vector& b) { return (a - b).norm(); };
    g.log = [](const Vector& a, const Vector& b) { return Vector(b - a); };
    g.exp = [](const Vector& a, const Vector& v) { return Vector(a + v); };
    g.norm = [](const Vector&, const Vector& v) { return v.norm(); };
    g.belongs = belongs ? std::move(belongs) : [](const Vector& a) { return a.allFinite(); };
    return g;
  }
};

}  // namespace fisherrao::learning
