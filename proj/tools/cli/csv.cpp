#include "cli/csv.hpp"

#include "fisherrao/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fisherrao::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> to_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Vector parse_vector(const std::string& text, const std::string& what) {
  const auto fields = split(text);
  if (fields.empty()) throw DomainError(what + ": empty value list");
  Vector v(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto x = to_number(fields[i]);
    if (!x) throw DomainError(what + ": '" + fields[i] + "' is not a number");
    v[static_cast<Eigen::Index>(i)] = *x;
  }
  return v;
}

PointTable read_points(std::istream& in, const std::string& source) {
  PointTable table;
  std::optional<std::size_t> label_column;
  std::optional<std::size_t> width;
  bool first = true;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t);
    if (first) {
      first = false;
      const bool header = std::any_of(fields.begin(), fields.end(), [](const std::string& f) { return !to_number(f); });
      if (header) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (lower(fields[i]) == "label") label_column = i;
        }
        width = fields.size();
        continue;
      }
    }
    if (width && fields.size() != *width) {
      throw DomainError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(*width) +
                        " fields, got " + std::to_string(fields.size()));
    }
    width = fields.size();
    std::vector<double> values;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (label_column && i == *label_column) {
        if (fields[i].empty()) throw DomainError(source + ":" + std::to_string(line_no) + ": empty label");
        table.labels.push_back(fields[i]);
        continue;
      }
      const auto x = to_number(fields[i]);
      if (!x) {
        throw DomainError(source + ":" + std::to_string(line_no) + ": '" + fields[i] + "' is not a number");
      }
      values.push_back(*x);
    }
    table.rows.push_back(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
    table.lines.push_back(line_no);
  }
  return table;
}

PointTable read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open point file '" + path + "'");
  return read_points(in, path);
}

int LabelIndex::id(const std::string& label) {
  if (const auto i = find(label)) return *i;
  names.push_back(label);
  return static_cast<int>(names.size()) - 1;
}

std::optional<int> LabelIndex::find(const std::string& label) const {
  const auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end()) return std::nullopt;
  return static_cast<int>(it - names.begin());
}

}  // namespace fisherrao::cli
