#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace fisherrao {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: argument outside a function's domain, malformed point,
/// dimension mismatch. The CLI maps these to exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure on valid input. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Non-finite integrand value at a quadrature node.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double node)
      : NumericalError(what), node_(node) {}
  [[nodiscard]] double node() const noexcept { return node_; }

 private:
  double node_;
};

/// The adaptive ODE solver could not advance (step size underflow, the
/// state left the admissible region, or the right-hand side blew up).
class OdeFailure : public NumericalError {
 public:
  OdeFailure(const std::string& what, double time, Eigen::VectorXd last_state)
      : NumericalError(what), time_(time), last_state_(std::move(last_state)) {}
  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] const Eigen::VectorXd& last_state() const noexcept { return last_state_; }

 private:
  double time_;
  Eigen::VectorXd last_state_;
};

/// A geodesic left the parameter manifold before t = 1.
class IncompleteGeodesic : public NumericalError {
 public:
  IncompleteGeodesic(const std::string& what, double exit_time)
      : NumericalError(what), exit_time_(exit_time) {}
  [[nodiscard]] double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

/// Shooting or fixed-point iteration failed to converge.
class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SingularMetric : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Sectional curvature requested for vectors that do not span a plane.
class DegeneratePlane : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

inline std::string format_vector(const Eigen::VectorXd& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace detail
}  // namespace fisherrao
