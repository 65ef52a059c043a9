#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/geometry/riemannian.hpp"
#include "fisherrao/numerics/finite_diff.hpp"
#include "fisherrao/numerics/quadrature.hpp"
#include "fisherrao/numerics/special.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace fisherrao::generic {

/// A parametric family given only by its log-density and the support to
/// integrate over.
struct DensityModel {
  std::string name;
  Eigen::Index dim = 0;
  /// log f(x | theta).
  std::function<double(double x, const Vector& theta)> log_density;
  numerics::QuadratureRule support = numerics::QuadratureRule::continuous(-10.0, 10.0);
  /// Parameter domain; defaults to "finite coordinates".
  std::function<bool(const Vector&)> belongs;
  Vector lower_bounds;
  Vector upper_bounds;

  [[nodiscard]] bool admits(const Vector& theta) const {
    if (theta.size() != dim || !theta.allFinite()) return false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (lower_bounds.size() == dim && !(theta[i] > lower_bounds[i])) return false;
      if (upper_bounds.size() == dim && !(theta[i] < upper_bounds[i])) return false;
    }
    return !belongs || belongs(theta);
  }
};

/// Base step of the per-node Hessian. Two central differences at h and 2h
/// are combined by Richardson extrapolation, which keeps both truncation and
/// round-off near 1e-10 and, more importantly, makes the estimate smooth in
/// theta so that it can be differenced again.
inline constexpr double kFisherHessianStep = 2e-3;
/// Step used when differentiating the Fisher matrix itself.
inline constexpr double kFisherDerivativeStep = 1e-3;

/// I(theta) = -E[Hess_theta log f(X | theta)], Hessian by extrapolated
/// central second differences at every quadrature node.
inline Matrix fisher_matrix(const DensityModel& model, const Vector& theta) {
  if (!model.admits(theta)) {
    throw DomainError("fisher_matrix: " + fisherrao::detail::format_vector(theta) + " is not a parameter of " +
                      model.name);
  }
  const Eigen::Index d = model.dim;
  auto integrand = [&](double x) -> Matrix {
    auto log_f = [&](const Vector& t) -> double {
      if (!model.admits(t)) throw DomainError("fisher_matrix: parameter step left the domain");
      return model.log_density(x, t);
    };
    const double w = std::exp(model.log_density(x, theta));
    if (w == 0.0) return Matrix::Zero(d, d);
    const Matrix coarse = numerics::fd_hessian(log_f, theta, 2.0 * kFisherHessianStep);
    const Matrix fine = numerics::fd_hessian(log_f, theta, kFisherHessianStep);
    return -w * (4.0 * fine - coarse) / 3.0;
  };
  Matrix fisher = numerics::quadrature_expectation(integrand, model.support, Matrix(Matrix::Zero(d, d)));
  fisher = 0.5 * (fisher + fisher.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(fisher, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw NumericalError("fisher_matrix: the estimated Fisher information of " + model.name + " at " +
                         fisherrao::detail::format_vector(theta) +
                         " is not positive definite; try a wider support or more quadrature nodes");
  }
  return fisher;
}

inline std::vector<Matrix> fisher_matrix_partials(const DensityModel& model, const Vector& theta) {
  auto g = [&](const Vector& t) -> Matrix {
    if (!model.admits(t)) throw DomainError("fisher_matrix: parameter step left the domain");
    return fisher_matrix(model, t);
  };
  return numerics::fd_partials(g, theta, kFisherDerivativeStep);
}

inline ChristoffelTensor fisher_christoffels(const DensityModel& model, const Vector& theta) {
  return geometry::levi_civita(fisher_matrix(model, theta), fisher_matrix_partials(model, theta), theta);
}

/// Manifold whose metric is the numeric Fisher information of `model`.
/// Geodesic tolerances are relaxed to match the accuracy of the metric.
inline ManifoldSpec as_manifold(const DensityModel& model) {
  ManifoldSpec spec;
  spec.name = model.name + " (numeric Fisher-Rao)";
  spec.dim = model.dim;
  spec.belongs = [model](const Vector& t) { return model.admits(t); };
  spec.metric = [model](const Vector& t) { return fisher_matrix(model, t); };
  spec.metric_derivative = [model](const Vector& t) { return fisher_matrix_partials(model, t); };
  spec.lower_bounds = model.lower_bounds;
  spec.upper_bounds = model.upper_bounds;
  spec.boundary_margin = 1e-2;
  spec.rtol = 1e-8;
  spec.atol = 1e-10;
  spec.log_tolerance = 1e-7;
  spec.curvature_step = 1e-2;
  return spec;
}

/// Ready-made models for the families that also have closed forms.
namespace models {

inline DensityModel normal(double lo = -10.0, double hi = 10.0, int nodes = 100) {
  DensityModel m;
  m.name = "normal";
  m.dim = 2;
  m.log_density = [](double x, const Vector& t) {
    const double z = (x - t[0]) / t[1];
    return -0.5 * z * z - std::log(t[1]) - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  m.support = numerics::QuadratureRule::continuous(lo, hi, nodes);
  m.lower_bounds = Vector{{-std::numeric_limits<double>::infinity(), 0.0}};
  return m;
}

inline DensityModel exponential(double hi = 40.0, int nodes = 100) {
  DensityModel m;
  m.name = "exponential";
  m.dim = 1;
  m.log_density = [](double x, const Vector& t) { return std::log(t[0]) - t[0] * x; };
  m.support = numerics::QuadratureRule::continuous(0.0, hi, nodes);
  m.lower_bounds = Vector::Zero(1);
  return m;
}

/// Gamma in (kappa, gamma) coordinates.
inline DensityModel gamma(double hi = 60.0, int nodes = 200) {
  DensityModel m;
  m.name = "gamma";
  m.dim = 2;
  m.log_density = [](double x, const Vector& t) {
    const double k = t[0];
    return k * std::log(k / t[1]) - numerics::ln_gamma(k) + (k - 1.0) * std::log(x) - k * x / t[1];
  };
  // Graded nodes resolve the x^(kappa - 1) behaviour at the origin.
  m.support = numerics::QuadratureRule::continuous(0.0, hi, nodes, 3.0);
  m.lower_bounds = Vector::Zero(2);
  return m;
}

inline DensityModel beta(int nodes = 200) {
  DensityModel m;
  m.name = "beta";
  m.dim = 2;
  m.log_density = [](double x, const Vector& t) {
    return numerics::ln_gamma(t[0] + t[1]) - numerics::ln_gamma(t[0]) - numerics::ln_gamma(t[1]) +
           (t[0] - 1.0) * std::log(x) + (t[1] - 1.0) * std::log1p(-x);
  };
  m.support = numerics::QuadratureRule::continuous(0.0, 1.0, nodes);
  m.lower_bounds = Vector::Zero(2);
  return m;
}

inline DensityModel poisson() {
  DensityModel m;
  m.name = "poisson";
  m.dim = 1;
  m.log_density = [](double x, const Vector& t) { return x * std::log(t[0]) - t[0] - numerics::ln_gamma(x + 1.0); };
  m.support = numerics::QuadratureRule::discrete(0);
  m.lower_bounds = Vector::Zero(1);
  return m;
}

inline DensityModel binomial(std::int64_t n) {
  DensityModel m;
  m.name = "binomial";
  m.dim = 1;
  const double nn = static_cast<double>(n);
  m.log_density = [nn](double x, const Vector& t) {
    return numerics::ln_gamma(nn + 1.0) - numerics::ln_gamma(x + 1.0) - numerics::ln_gamma(nn - x + 1.0) +
           x * std::log(t[0]) + (nn - x) * std::log1p(-t[0]);
  };
  m.support = numerics::QuadratureRule::discrete(0, n);
  m.lower_bounds = Vector::Zero(1);
  m.upper_bounds = Vector::Ones(1);
  return m;
}

inline DensityModel geometric() {
  DensityModel m;
  m.name = "geometric";
  m.dim = 1;
  m.log_density = [](double x, const Vector& t) { return (x - 1.0) * std::log1p(-t[0]) + std::log(t[0]); };
  m.support = numerics::QuadratureRule::discrete(1);
  m.lower_bounds = Vector::Zero(1);
  m.upper_bounds = Vector::Ones(1);
  return m;
}

}  // namespace models

}  // namespace fisherrao::generic
