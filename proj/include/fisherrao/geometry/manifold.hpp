#pragma once

#include "fisherrao/errors.hpp"

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fisherrao {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Coordinates of a parameter in the open set Theta of R^d.
using ParamPoint = Vector;
/// Tangent vectors of an open subset of R^d are plain d-vectors.
using TangentVec = Vector;

/// Christoffel symbols Gamma^k_ij at one point, stored k-major.
class ChristoffelTensor {
 public:
  explicit ChristoffelTensor(Eigen::Index dim) : dim_(dim), data_(Vector::Zero(dim * dim * dim)) {}

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  double& operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) { return data_[(k * dim_ + i) * dim_ + j]; }
  double operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) const {
    return data_[(k * dim_ + i) * dim_ + j];
  }

  /// Sets Gamma^k_ij and Gamma^k_ji together.
  void set_symmetric(Eigen::Index k, Eigen::Index i, Eigen::Index j, double value) {
    (*this)(k, i, j) = value;
    (*this)(k, j, i) = value;
  }

  /// Component k of Gamma(u, w) = sum_ij Gamma^k_ij u^i w^j.
  [[nodiscard]] Vector contract(const Vector& u, const Vector& w) const {
    Vector out(dim_);
    for (Eigen::Index k = 0; k < dim_; ++k) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < dim_; ++j) row += (*this)(k, i, j) * w[j];
        s += u[i] * row;
      }
      out[k] = s;
    }
    return out;
  }

  [[nodiscard]] const Vector& flat() const { return data_; }
  static ChristoffelTensor from_flat(Eigen::Index dim, Vector data) {
    ChristoffelTensor t(dim);
    t.data_ = std::move(data);
    return t;
  }

 private:
  Eigen::Index dim_;
  Vector data_;
};

/// Everything the Riemannian engine needs to know about a parameter
/// manifold. Only `dim`, `belongs` and `metric` are mandatory; every other
/// provider is an optional closed form that replaces the numeric route.
struct ManifoldSpec {
  std::string name;
  Eigen::Index dim = 0;

  std::function<bool(const Vector&)> belongs;
  std::function<Matrix(const Vector&)> metric;

  /// d matrices, entry l holding d g / d theta_l.
  std::function<std::vector<Matrix>(const Vector&)> metric_derivative;
  std::function<ChristoffelTensor(const Vector&)> christoffels;
  /// -Gamma(v, v) at theta; the geodesic ODE uses it when present.
  std::function<Vector(const Vector& theta, const Vector& v)> geodesic_acceleration;

  std::function<double(const Vector&, const Vector&)> distance;
  /// Geodesic from (x, v) evaluated at time t: position and velocity.
  std::function<std::pair<Vector, Vector>(const Vector& x, const Vector& v, double t)> geodesic_flow;
  /// log_x(y), the initial velocity of the geodesic from x reaching y at t = 1.
  std::function<Vector(const Vector& x, const Vector& y)> log_map;

  /// Curve s -> c(s) in coordinates from x (s = 0) to y (s = 1) that numeric
  /// log maps use as an initial guess (its velocity at 0) and as the
  /// continuation path. Straight segment when unset.
  std::function<Vector(const Vector& x, const Vector& y, double s)> chart_path;
  std::function<Vector(const Vector& x, const Vector& y)> chart_path_velocity;

  /// Coordinate box containing Theta. Geodesic integration aborts when a
  /// coordinate comes within `boundary_margin` of a finite bound.
  Vector lower_bounds;
  Vector upper_bounds;
  double boundary_margin = 1e-8;

  double rtol = 1e-10;
  double atol = 1e-12;
  /// Integrate geodesics in u = log(theta) (positive coordinates only).
  bool integrate_in_log_chart = false;
  /// Default relative residual at which numeric log maps stop.
  double log_tolerance = 1e-9;
  /// Base step for differencing Christoffel symbols; chosen automatically
  /// when unset.
  std::optional<double> curvature_step;

  [[nodiscard]] bool inside(const Vector& theta) const {
    if (theta.size() != dim || !theta.allFinite()) return false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (lower_bounds.size() == dim && theta[i] <= lower_bounds[i] + boundary_margin) return false;
      if (upper_bounds.size() == dim && theta[i] >= upper_bounds[i] - boundary_margin) return false;
    }
    return !belongs || belongs(theta);
  }

  void check_point(const Vector& theta, const char* where) const {
    if (theta.size() != dim) {
      throw DomainError(std::string(where) + ": expected a point of dimension " + std::to_string(dim) + " on " +
                        name + ", got " + std::to_string(theta.size()));
    }
    if (!theta.allFinite() || (belongs && !belongs(theta))) {
      throw DomainError(std::string(where) + ": " + fisherrao::detail::format_vector(theta) +
                        " does not belong to " + name);
    }
  }

  void check_tangent(const Vector& v, const char* where) const {
    if (v.size() != dim) {
      throw DomainError(std::string(where) + ": tangent vector has dimension " + std::to_string(v.size()) +
                        ", expected " + std::to_string(dim));
    }
    if (!v.allFinite()) throw DomainError(std::string(where) + ": tangent vector is not finite");
  }

  /// Same manifold with every closed-form distance/geodesic/log removed, so
  /// that distances go through the numeric boundary-value solver.
  [[nodiscard]] ManifoldSpec numeric_only() const {
    ManifoldSpec copy = *this;
    copy.distance = nullptr;
    copy.geodesic_flow = nullptr;
    copy.log_map = nullptr;
    copy.name = name + " (numeric)";
    return copy;
  }

  /// Bounds (0, inf)^d, geodesics integrated in log coordinates, and
  /// geometric interpolation x^(1-s) y^s as the chart path.
  void set_positive_orthant() {
    integrate_in_log_chart = true;
    lower_bounds = Vector::Zero(dim);
    upper_bounds = Vector::Constant(dim, std::numeric_limits<double>::infinity());
    chart_path = [](const Vector& x, const Vector& y, double s) {
      return Vector(x.array() * (s * (y.array() / x.array()).log()).exp());
    };
    chart_path_velocity = [](const Vector& x, const Vector& y) {
      return Vector(x.array() * (y.array() / x.array()).log());
    };
  }
};

/// A discretized geodesic t in [0, 1] -> theta(t) with velocities.
struct GeodesicPath {
  std::vector<double> times;
  std::vector<ParamPoint> points;
  std::vector<TangentVec> velocities;
  double length = 0.0;

  [[nodiscard]] const ParamPoint& start() const { return points.front(); }
  [[nodiscard]] const ParamPoint& end() const { return points.back(); }
  [[nodiscard]] const TangentVec& initial_velocity() const { return velocities.front(); }
};

}  // namespace fisherrao
