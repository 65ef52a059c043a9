#pragma once

#include "fisherrao/geometry/manifold.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace fisherrao::cli {

/// Rows of a point file. Blank lines and lines starting with '#' are
/// skipped. A first line containing a non-numeric field is a header; a
/// header column named `label` holds class labels.
struct PointTable {
  std::vector<Vector> rows;
  std::vector<std::string> labels;
  /// 1-based line number of every row, for error messages.
  std::vector<int> lines;

  [[nodiscard]] bool labeled() const { return !labels.empty(); }
};

PointTable read_points(std::istream& in, const std::string& source);
PointTable read_points_file(const std::string& path);

/// "1, 2.5, 3" -> (1, 2.5, 3). Throws DomainError on a malformed number.
Vector parse_vector(const std::string& text, const std::string& what);

/// Maps label strings to 0..C-1 in order of first appearance.
struct LabelIndex {
  std::vector<std::string> names;
  int id(const std::string& label);
  [[nodiscard]] std::optional<int> find(const std::string& label) const;
};

}  // namespace fisherrao::cli
