#include "cli/app.hpp"

#include "cli/csv.hpp"
#include "cli/family.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fisherrao::cli {

namespace {

using nlohmann::json;

class Log {
 public:
  Log(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
  void error(const std::string& m) const { emit(LogLevel::kError, "error", m); }
  void warn(const std::string& m) const { emit(LogLevel::kWarn, "warning", m); }
  void info(const std::string& m) const { emit(LogLevel::kInfo, "info", m); }

 private:
  void emit(LogLevel at, const char* tag, const std::string& m) const {
    if (static_cast<int>(level_) >= static_cast<int>(at)) err_ << "fisherrao: " << tag << ": " << m << '\n';
  }
  std::ostream& err_;
  LogLevel level_;
};

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

// Integer-looking labels are emitted as numbers, anything else as strings.
json label_json(const std::string& label) {
  long long v = 0;
  std::istringstream ss(label);
  if (ss >> v && ss.eof()) return v;
  return label;
}

struct FamilyArgs {
  std::string name;
  long n = 0;
  int dim = 0;
  // One instance serves every subcommand, so each keeps its own option handles.
  std::vector<CLI::Option*> n_opts;
  std::vector<CLI::Option*> dim_opts;

  void attach(CLI::App* cmd) {
    cmd->add_option("-f,--family", name, "Distribution family")->required();
    n_opts.push_back(cmd->add_option("--n", n, "Trial count (binomial, multinomial)"));
    dim_opts.push_back(cmd->add_option("--dim", dim,
                              "Outcome count (categorical, multinomial), concentration count (dirichlet) or "
                              "dimension (normal-diagonal, normal-centered)"));
  }

  static bool given(const std::vector<CLI::Option*>& opts) {
    return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }

  [[nodiscard]] Family make() const {
    FamilyOptions o;
    o.name = name;
    if (given(n_opts)) o.n = n;
    if (given(dim_opts)) o.dim = dim;
    return make_family(o);
  }
};

Vector chart_point(const Family& f, const Vector& row, const std::string& what) {
  try {
    return f.to_chart(row);
  } catch (const DomainError& e) {
    throw DomainError(what + ": " + e.what());
  }
}

std::vector<Vector> chart_points(const Family& f, const PointTable& table, const std::string& source) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out.push_back(chart_point(f, table.rows[i], source + ":" + std::to_string(table.lines[i])));
  }
  return out;
}

void require_rows(const Family& f, const PointTable& table, const std::string& source) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != f.columns) {
      throw DomainError(source + ":" + std::to_string(table.lines[i]) + ": expected " + std::to_string(f.columns) +
                        " coordinates for " + f.name + ", got " + std::to_string(table.rows[i].size()));
    }
  }
}

// Euclidean geometry on the raw CSV coordinates, restricted to the family's
// parameter space.
learning::PointGeometry euclidean_rows(const Family& f) {
  return learning::PointGeometry::euclidean([f](const Vector& row) {
    try {
      return f.spec.inside(f.to_chart(row));
    } catch (const DomainError&) {
      return false;
    }
  });
}

// Unit directions (in the metric at `center`) for geodesic spheres: equally
// spaced angles in two dimensions, seeded random directions otherwise.
std::vector<Vector> sphere_directions(const ManifoldSpec& spec, const Vector& center, int rays, std::uint64_t seed) {
  const Eigen::Index d = spec.dim;
  const Matrix g = spec.metric(center);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw SingularMetric("geodesic sphere: metric is not positive definite");
  const Matrix upper = llt.matrixU();
  std::vector<Vector> out;
  numerics::Rng rng(seed);
  for (int r = 0; r < rays; ++r) {
    Vector e(d);
    if (d == 1) {
      e[0] = r % 2 == 0 ? 1.0 : -1.0;
    } else if (d == 2) {
      const double a = 2.0 * std::numbers::pi * r / rays;
      e << std::cos(a), std::sin(a);
    } else {
      for (Eigen::Index i = 0; i < d; ++i) e[i] = numerics::standard_normal(rng);
      e.normalize();
    }
    // U^T U = g, so v = U^-1 e has unit metric norm.
    out.push_back(upper.triangularView<Eigen::Upper>().solve(e));
  }
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << number(values[i]);
  out << '\n';
}

int cmd_dist(const Family& f, const std::vector<std::string>& point_args, const std::string& points_file,
             bool legacy, std::ostream& out) {
  std::vector<Vector> rows;
  if (!points_file.empty()) {
    const PointTable table = read_points_file(points_file);
    require_rows(f, table, points_file);
    rows = table.rows;
  } else {
    for (const auto& p : point_args) rows.push_back(parse_vector(p, "point"));
  }
  if (rows.size() < 2) throw DomainError("dist: need at least two points");
  if (legacy && !f.legacy_dist) throw DomainError("--legacy-halfplane applies to the normal family only");
  const auto& dist = legacy ? f.legacy_dist : f.dist;
  json pairs = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      double d = 0.0;
      try {
        d = dist(rows[i], rows[j]);
      } catch (const NumericalError& e) {
        throw NumericalError("dist: pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
      } catch (const DomainError& e) {
        throw DomainError("dist: pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what());
      }
      pairs.push_back({{"i", i}, {"j", j}, {"distance", d}});
    }
  }
  json result{{"family", f.name}, {"metric", legacy ? "legacy-halfplane" : "fisher-rao"}, {"pairs", pairs}};
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_geodesic(const Family& f, const std::string& a_text, const std::string& b_text, int samples,
                 std::optional<double> sphere_radius, int rays, std::uint64_t seed, const Log& log, std::ostream& out) {
  if (samples < 1) throw DomainError("geodesic: --samples must be at least 1");
  const Vector a = chart_point(f, parse_vector(a_text, "--a"), "--a");
  std::ostringstream buf;

  if (sphere_radius) {
    if (!(*sphere_radius > 0.0)) throw DomainError("geodesic: --sphere radius must be positive");
    if (rays < 1) throw DomainError("geodesic: --rays must be at least 1");
    buf << "ray,t";
    for (const auto& c : f.column_names) buf << ',' << c;
    buf << '\n';
    int written = 0;
    const auto directions = sphere_directions(f.spec, a, rays, seed);
    for (std::size_t r = 0; r < directions.size(); ++r) {
      try {
        const GeodesicPath path =
            geometry::geodesic_from_tangent(f.spec, a, *sphere_radius * directions[r], samples + 1);
        for (std::size_t s = 0; s < path.points.size(); ++s) {
          std::vector<double> row{static_cast<double>(r), path.times[s]};
          const Vector p = f.from_chart(path.points[s]);
          row.insert(row.end(), p.begin(), p.end());
          write_csv_row(buf, row);
        }
        ++written;
      } catch (const NumericalError& e) {
        log.warn("ray " + std::to_string(r) + " skipped: " + e.what());
      }
    }
    if (written == 0) throw NumericalError("geodesic sphere: every ray left the parameter space");
    out << buf.str();
    return kOk;
  }

  if (b_text.empty()) throw DomainError("geodesic: --b is required unless --sphere is given");
  const Vector b = chart_point(f, parse_vector(b_text, "--b"), "--b");
  const GeodesicPath path = geometry::geodesic(f.spec, a, b, samples + 1);
  const std::vector<double> speeds = geometry::path_speeds(f.spec, path);
  buf << 't';
  for (const auto& c : f.column_names) buf << ',' << c;
  buf << ",speed\n";
  for (std::size_t s = 0; s < path.points.size(); ++s) {
    std::vector<double> row{path.times[s]};
    const Vector p = s + 1 == path.points.size() ? parse_vector(b_text, "--b") : f.from_chart(path.points[s]);
    row.insert(row.end(), p.begin(), p.end());
    row.push_back(speeds[s]);
    write_csv_row(buf, row);
  }
  out << buf.str();
  return kOk;
}

int cmd_curvature(const Family& f, const std::string& point_text, const std::string& u_text,
                  const std::string& v_text, bool numeric, std::ostream& out) {
  const Vector row = parse_vector(point_text, "--point");
  const Vector x = chart_point(f, row, "--point");
  const bool plane_given = !u_text.empty() || !v_text.empty();
  json result{{"family", f.name}, {"point", to_json(row)}};
  if (f.closed_form_curvature && !numeric && !plane_given) {
    result["sectional_curvature"] = f.closed_form_curvature(row);
    result["method"] = "closed-form";
  } else {
    if (f.spec.dim < 2) throw DomainError("curvature: " + f.name + " is one-dimensional; sectional curvature is undefined");
    if (u_text.empty() != v_text.empty()) throw DomainError("curvature: give both --u and --v or neither");
    Vector u = Vector::Unit(f.spec.dim, 0);
    Vector v = Vector::Unit(f.spec.dim, 1);
    if (plane_given) {
      u = parse_vector(u_text, "--u");
      v = parse_vector(v_text, "--v");
    }
    result["sectional_curvature"] = geometry::sectional_curvature(f.spec, x, u, v);
    result["method"] = "numeric";
    result["plane"] = {to_json(u), to_json(v)};
  }
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_metric(const Family& f, const std::string& point_text, bool numeric, std::ostream& out) {
  const Vector row = parse_vector(point_text, "--point");
  const Vector x = chart_point(f, row, "--point");
  json result{{"family", f.name}, {"point", to_json(row)}};
  if (numeric) {
    if (!f.density_model) throw DomainError("metric: no numeric density model for " + f.name);
    result["metric"] = to_json(generic::fisher_matrix(*f.density_model, x));
    result["method"] = "numeric";
  } else {
    result["metric"] = to_json(f.spec.metric(x));
    result["method"] = "closed-form";
  }
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_sample(const Family& f, const std::string& point_text, int count, std::uint64_t seed, std::ostream& out) {
  const Vector row = parse_vector(point_text, "--point");
  chart_point(f, row, "--point");
  numerics::Rng rng(seed);
  json result{{"family", f.name}, {"point", to_json(row)}, {"seed", seed}, {"samples", f.sample(row, count, rng)}};
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_pdf(const Family& f, const std::string& point_text, const std::vector<std::string>& xs, std::ostream& out) {
  const Vector row = parse_vector(point_text, "--point");
  chart_point(f, row, "--point");
  if (xs.empty()) throw DomainError("pdf: give at least one --x");
  json values = json::array();
  for (const auto& x : xs) values.push_back(f.pdf(row, parse_vector(x, "--x")));
  json result{{"family", f.name}, {"point", to_json(row)}, {"values", values}};
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_kmeans(const Family& f, const std::string& points_file, int k, std::uint64_t seed, int max_iterations,
               bool euclidean, const Log& log, std::ostream& out) {
  const PointTable table = read_points_file(points_file);
  require_rows(f, table, points_file);
  const std::vector<Vector> charted = chart_points(f, table, points_file);

  learning::KMeansOptions opts;
  opts.k = k;
  opts.seed = seed;
  opts.max_iterations = max_iterations;
  opts.on_reseed = [&log](const std::string& m) { log.warn(m); };

  const auto start = std::chrono::steady_clock::now();
  learning::ClusteringResult result;
  json centroids = json::array();
  if (euclidean) {
    result = learning::riemannian_kmeans(table.rows, euclidean_rows(f), opts);
    for (const Vector& c : result.centroids) centroids.push_back(to_json(c));
  } else {
    result = learning::riemannian_kmeans(charted, learning::PointGeometry::riemannian(f.spec), opts);
    for (const Vector& c : result.centroids) centroids.push_back(to_json(f.from_chart(c)));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log.info("kmeans finished in " + number(seconds) + " s after " + std::to_string(result.iterations) + " iterations");

  json doc{{"family", f.name},
           {"metric", euclidean ? "euclidean" : "fisher-rao"},
           {"k", k},
           {"seed", seed},
           {"centroids", centroids},
           {"assignments", result.assignments},
           {"objective", result.objective},
           {"iterations", result.iterations},
           {"reseeds", result.reseeds}};
  if (table.labeled()) {
    json labels = json::array();
    for (const auto& l : table.labels) labels.push_back(label_json(l));
    doc["labels"] = labels;
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_knn(const Family& f, const std::string& train_file, const std::string& test_file, int k, bool euclidean,
            std::ostream& out) {
  const PointTable train = read_points_file(train_file);
  const PointTable test = read_points_file(test_file);
  require_rows(f, train, train_file);
  require_rows(f, test, test_file);
  if (!train.labeled()) throw DomainError("knn: training file '" + train_file + "' has no label column");
  if (train.rows.empty()) throw DomainError("knn: training file is empty");

  LabelIndex index;
  learning::LabeledDataset data;
  for (const auto& l : train.labels) data.labels.push_back(index.id(l));
  std::vector<Vector> queries;
  learning::PointGeometry geometry;
  if (euclidean) {
    data.points = train.rows;
    queries = test.rows;
    geometry = euclidean_rows(f);
  } else {
    data.points = chart_points(f, train, train_file);
    queries = chart_points(f, test, test_file);
    geometry = learning::PointGeometry::riemannian(f.spec);
  }
  const std::vector<int> predicted = learning::knn_classify(data, queries, geometry, k);

  json predictions = json::array();
  for (const int p : predicted) predictions.push_back(label_json(index.names[static_cast<std::size_t>(p)]));
  json doc{{"family", f.name}, {"metric", euclidean ? "euclidean" : "fisher-rao"}, {"k", k}, {"predictions", predictions}};
  if (test.labeled()) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      if (index.names[static_cast<std::size_t>(predicted[i])] == test.labels[i]) ++correct;
    }
    doc["accuracy"] = predicted.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(predicted.size());
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

LogLevel log_level_from_env() {
  const char* raw = std::getenv("FISHERRAO_LOG");
  if (raw == nullptr) return LogLevel::kWarn;
  const std::string v(raw);
  if (v == "quiet" || v == "0") return LogLevel::kQuiet;
  if (v == "error" || v == "1") return LogLevel::kError;
  if (v == "info" || v == "3") return LogLevel::kInfo;
  if (v == "debug" || v == "4") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, LogLevel level) {
  const Log log(err, level);
  CLI::App app{"Fisher-Rao geometry of parametric families"};
  app.name("fisherrao");
  app.require_subcommand(1);

  FamilyArgs family;
  std::vector<std::string> points;
  std::string points_file;
  std::string a_text;
  std::string b_text;
  std::string point_text;
  std::string u_text;
  std::string v_text;
  std::vector<std::string> xs;
  std::string train_file;
  std::string test_file;
  bool legacy = false;
  bool numeric = false;
  bool euclidean = false;
  int samples = 100;
  double sphere = 0.0;
  int rays = 16;
  int count = 10;
  int k = 2;
  int max_iterations = 100;
  std::uint64_t seed = 0;

  auto* dist = app.add_subcommand("dist", "Fisher-Rao distances between points (JSON)");
  family.attach(dist);
  auto* points_opt = dist->add_option("--points", points_file, "CSV file; distances between all pairs of rows");
  dist->add_option("--a,--b", points, "Inline point, comma separated (use --a=... for negative values)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->excludes(points_opt);
  dist->add_flag("--legacy-halfplane", legacy, "Normal family: raw half-plane distance on (m, sigma)");

  auto* geo = app.add_subcommand("geodesic", "Sampled geodesic or geodesic sphere (CSV)");
  family.attach(geo);
  geo->add_option("--a", a_text, "Start point (sphere centre with --sphere)")->required();
  geo->add_option("--b", b_text, "End point");
  geo->add_option("--samples", samples, "Number of intervals; N + 1 rows per curve")->capture_default_str();
  auto* sphere_opt = geo->add_option("--sphere", sphere, "Emit rays of this length from --a instead");
  geo->add_option("--rays", rays, "Number of rays for --sphere")->capture_default_str();
  geo->add_option("--seed", seed, "Seed for ray directions in more than two dimensions")->capture_default_str();

  auto* curv = app.add_subcommand("curvature", "Sectional curvature at a point (JSON)");
  family.attach(curv);
  curv->add_option("--point", point_text, "Point, comma separated")->required();
  curv->add_option("--u", u_text, "First tangent vector of the plane (chart coordinates)");
  curv->add_option("--v", v_text, "Second tangent vector of the plane (chart coordinates)");
  curv->add_flag("--numeric", numeric, "Use the numeric Riemann tensor even when a closed form exists");

  auto* met = app.add_subcommand("metric", "Fisher information matrix at a point (JSON)");
  family.attach(met);
  met->add_option("--point", point_text, "Point, comma separated")->required();
  met->add_flag("--numeric", numeric, "Integrate the Fisher information from the log-density");

  auto* smp = app.add_subcommand("sample", "Draw observations from a distribution (JSON)");
  family.attach(smp);
  smp->add_option("--point", point_text, "Point, comma separated")->required();
  smp->add_option("--count", count, "Number of draws")->capture_default_str();
  smp->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* pdf = app.add_subcommand("pdf", "Density or mass function values (JSON)");
  family.attach(pdf);
  pdf->add_option("--point", point_text, "Point, comma separated")->required();
  pdf->add_option("--x", xs, "Observation (repeatable; comma separated for vectors)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* km = app.add_subcommand("kmeans", "Riemannian k-means clustering (JSON)");
  family.attach(km);
  km->add_option("--points", points_file, "CSV file of points")->required();
  km->add_option("--k", k, "Number of clusters")->required();
  km->add_option("--seed", seed, "Seed for k-means++ initialisation")->capture_default_str();
  km->add_option("--max-iter", max_iterations, "Maximum Lloyd iterations")->capture_default_str();
  km->add_flag("--euclidean", euclidean, "Use the Euclidean distance on the raw coordinates");

  auto* knn = app.add_subcommand("knn", "K-nearest-neighbour classification (JSON)");
  family.attach(knn);
  knn->add_option("--train", train_file, "Labeled CSV file")->required();
  knn->add_option("--test", test_file, "CSV file of points to classify")->required();
  knn->add_option("--k", k, "Number of neighbours")->required();
  knn->add_flag("--euclidean", euclidean, "Use the Euclidean distance on the raw coordinates");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    const Family f = family.make();
    if (dist->parsed()) return cmd_dist(f, points, points_file, legacy, out);
    if (geo->parsed()) {
      const std::optional<double> radius = sphere_opt->count() > 0 ? std::optional<double>(sphere) : std::nullopt;
      return cmd_geodesic(f, a_text, b_text, samples, radius, rays, seed, log, out);
    }
    if (curv->parsed()) return cmd_curvature(f, point_text, u_text, v_text, numeric, out);
    if (met->parsed()) return cmd_metric(f, point_text, numeric, out);
    if (smp->parsed()) return cmd_sample(f, point_text, count, seed, out);
    if (pdf->parsed()) return cmd_pdf(f, point_text, xs, out);
    if (km->parsed()) return cmd_kmeans(f, points_file, k, seed, max_iterations, euclidean, log, out);
    if (knn->parsed()) return cmd_knn(f, train_file, test_file, k, euclidean, out);
  } catch (const DomainError& e) {
    log.error(e.what());
    return kInputError;
  } catch (const NumericalError& e) {
    log.error(e.what());
    return kNumericalFailure;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace fisherrao::cli
