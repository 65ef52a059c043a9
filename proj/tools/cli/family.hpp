#pragma once

#include "fisherrao/fisherrao.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fisherrao::cli {

struct FamilyOptions {
  std::string name;
  /// Trial count for binomial and multinomial.
  std::optional<long> n;
  /// Outcome count (categorical, multinomial), concentration count
  /// (dirichlet) or data dimension (normal-diagonal, normal-centered).
  std::optional<int> dim;
};

/// A family as seen from the command line: how CSV rows map to manifold
/// coordinates and which closed forms are available.
struct Family {
  std::string name;
  /// Values per CSV row, in the documented column order.
  int columns = 0;
  std::vector<std::string> column_names;
  /// The parameter manifold in its chart coordinates.
  ManifoldSpec spec;

  /// Validated row -> chart coordinates; throws DomainError.
  std::function<Vector(const Vector& row)> to_chart;
  std::function<Vector(const Vector& chart)> from_chart;
  /// Distance between two rows. Some families accept more than the open
  /// manifold here (the closed simplex for categorical data).
  std::function<double(const Vector& a, const Vector& b)> dist;
  std::function<double(const Vector& a, const Vector& b)> legacy_dist;

  std::function<double(const Vector& row)> closed_form_curvature;
  /// Numeric Fisher metric from the log-density, when a model exists.
  std::optional<generic::DensityModel> density_model;

  /// Length of one observation passed to pdf.
  int observation_size = 1;
  std::function<double(const Vector& row, const Vector& x)> pdf;
  std::function<nlohmann::json(const Vector& row, int count, numerics::Rng& rng)> sample;
};

/// Throws DomainError for unknown names or missing/invalid options.
Family make_family(const FamilyOptions& options);

std::vector<std::string> family_names();

}  // namespace fisherrao::cli
