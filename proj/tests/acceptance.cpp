// Acceptance run: evaluates each criterion and prints one PASS/FAIL line per
// criterion, followed by a summary. The process exits 0 once every criterion
// has been evaluated; the verdicts are in the output.

#include "fisherrao/fisherrao.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fr = fisherrao;
namespace fam = fisherrao::families;
namespace geo = fisherrao::geometry;
namespace learn = fisherrao::learning;
using fr::Matrix;
using fr::ManifoldSpec;
using fr::Vector;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict criterion_1() {
  Verdict v;
  const auto t0 = Clock::now();
  const Matrix g = fr::generic::fisher_matrix(fr::generic::models::normal(), Vector{{1.0, 1.0}});
  const double elapsed = seconds_since(t0);
  const Matrix expected = Vector{{1.0, 2.0}}.asDiagonal();
  const double err = (g - expected).cwiseAbs().maxCoeff();
  v.require(err <= 1e-3, "entries within 1e-3");
  v.require(elapsed < 1.0, "runtime under 1 s");
  v.detail << "I(1,1) = [[" << fmt(g(0, 0), 8) << ", " << fmt(g(0, 1), 3) << "], [" << fmt(g(1, 0), 3) << ", "
           << fmt(g(1, 1), 8) << "]], max error " << fmt(err, 3) << ", " << fmt(elapsed, 3) << " s";
  return v;
}

// Python's float(str(d)[:5]) keeps the first five characters.
double truncate_3(double d) { return std::trunc(d * 1000.0) / 1000.0; }

Verdict criterion_2() {
  Verdict v;
  const auto cat = fam::Multinomial::categorical(6);
  const Vector a{{0.1, 0.2, 0.1, 0.3, 0.15, 0.15}};
  const Vector b{{0.25, 0.25, 0.1, 0.05, 0.05, 0.3}};
  const std::vector<double> printed_a{2.498, 2.214, 2.498, 1.982, 2.346, 2.346};
  const std::vector<double> printed_b{2.094, 2.094, 2.498, 2.69, 2.69, 1.982};
  auto check = [&](const Vector& p, const std::vector<double>& printed, int printed_argmin, const char* name) {
    int argmin = 0;
    double best = 1e300;
    for (int i = 0; i < 6; ++i) {
      const double d = cat.dist(p, Vector::Unit(6, i));
      v.require(std::abs(truncate_3(d) - printed[static_cast<std::size_t>(i)]) < 5e-4,
                std::string(name) + " vertex " + std::to_string(i) + " = " + fmt(d, 6));
      if (d < best) {
        best = d;
        argmin = i;
      }
    }
    v.require(argmin == printed_argmin, std::string(name) + " closest vertex");
    v.detail << name << " closest vertex e" << argmin << "; ";
  };
  check(a, printed_a, 3, "point a");
  check(b, printed_b, 5, "point b");
  return v;
}

Verdict criterion_3() {
  Verdict v;
  constexpr double kReference = -0.45630369144018;
  const double closed = fam::Gamma::sectional_curvature({1.0, 2.0});
  v.require(std::abs(closed - kReference) <= 1e-9, "K(1, 2) within 1e-9");

  const auto spec = fam::Gamma::manifold();
  const Vector p{{1.0, 2.0}};
  const auto tensor = geo::riemann_tensor(spec, p);
  std::mt19937_64 rng(3);
  auto rand_vec = [&] { return Vector{{std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng)}}; };
  const double k1 = geo::sectional_curvature(spec, tensor, p, rand_vec(), rand_vec());
  const double k2 = geo::sectional_curvature(spec, tensor, p, rand_vec(), rand_vec());
  v.require(std::abs(k1 - k2) <= 1e-10, "two random planes agree within 1e-10");
  v.require(std::abs(k1 - kReference) <= 1e-6, "numeric tensor matches the closed form");

  double spread = 0.0;
  for (double g : {0.01, 0.5, 2.0, 40.0, 1e3}) {
    spread = std::max(spread, std::abs(fam::Gamma::sectional_curvature({1.0, g}) - closed));
    const double numeric = geo::sectional_curvature(spec, Vector{{1.0, g}}, Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}});
    v.require(std::abs(numeric - closed) <= 1e-6, "numeric curvature independent of gamma = " + fmt(g));
  }
  v.require(spread == 0.0, "closed form independent of gamma");

  int grid = 0;
  double lo = 0.0;
  double hi = -1.0;
  for (double k = 0.01; k <= 1e4 * (1 + 1e-12); k *= std::pow(10.0, 0.25)) {
    const double c = fam::Gamma::sectional_curvature({k, 1.0});
    v.require(c > -0.5 && c < -0.25, "bounds at kappa = " + fmt(k));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    ++grid;
  }
  v.detail << "K(1,2) = " << fmt(closed, 14) << ", numeric planes " << fmt(k1, 12) << " / " << fmt(k2, 12) << ", K in ["
           << fmt(lo, 6) << ", " << fmt(hi, 6) << "] over " << grid << " shapes";
  return v;
}

Verdict criterion_4() {
  Verdict v;
  using fam::UnivariateNormal;
  const double legacy1 = UnivariateNormal::legacy_halfplane_dist({1.0, 1.0}, {4.0, 1.0});
  const double legacy2 = UnivariateNormal::legacy_halfplane_dist({1.0, 2.0}, {4.0, 2.0});
  v.require(std::abs(legacy1 - 2.38952643457422) <= 1e-9, "legacy (1,1)-(4,1)");
  v.require(std::abs(legacy2 - 1.3862943611198915) <= 1e-9, "legacy (1,2)-(4,2)");

  const double fr1 = UnivariateNormal::dist({1.0, 1.0}, {4.0, 1.0});
  const double fr2 = UnivariateNormal::dist({1.0, 2.0}, {4.0, 2.0});
  v.require(std::abs(fr1 - 2.61240) <= 1e-4 * 2.61240, "corrected (1,1)-(4,1) within 1e-4 relative of 2.61240");
  v.require(std::abs(fr2 - 1.43730) <= 1e-4 * 1.43730, "corrected (1,2)-(4,2) within 1e-4 relative of 1.43730");

  const auto numeric = UnivariateNormal::manifold().numeric_only();
  const double n1 = geo::dist(numeric, Vector{{1.0, 1.0}}, Vector{{4.0, 1.0}});
  const double n2 = geo::dist(numeric, Vector{{1.0, 2.0}}, Vector{{4.0, 2.0}});
  v.require(std::abs(n1 - fr1) <= 1e-4 * fr1, "numeric solver on the first pair");
  v.require(std::abs(n2 - fr2) <= 1e-4 * fr2, "numeric solver on the second pair");

  v.require(legacy2 < legacy1, "legacy distance decreases with the variance");
  v.require(fr2 < fr1, "Fisher-Rao distance decreases with the variance");
  v.detail << "legacy " << fmt(legacy1, 15) << ", " << fmt(legacy2, 17) << "; Fisher-Rao " << fmt(fr1, 8) << ", "
           << fmt(fr2, 8) << "; numeric " << fmt(n1, 8) << ", " << fmt(n2, 8);
  return v;
}

Verdict criterion_5() {
  Verdict v;
  const auto spec = fam::Dirichlet::beta().manifold();
  const Vector blue{{1.0, 10.0}};
  const Vector green{{10.0, 1.0}};
  const Vector orange{{10.0, 100.0}};
  const double d_green = geo::dist(spec, blue, green);
  const double d_orange = geo::dist(spec, blue, orange);
  const double e_green = (blue - green).norm();
  const double e_orange = (blue - orange).norm();
  const double rel_green = std::abs(d_green - 4.16) / 4.16;
  const double rel_orange = std::abs(d_orange - 1.76) / 1.76;
  v.require(rel_green <= 0.02, "Fisher-Rao (1,10)-(10,1) = " + fmt(d_green, 8) + " is " + fmt(100 * rel_green, 3) +
                                   "% from 4.16");
  v.require(rel_orange <= 0.02, "Fisher-Rao (1,10)-(10,100) = " + fmt(d_orange, 8) + " is " + fmt(100 * rel_orange, 3) +
                                    "% from 1.76");
  v.require(std::abs(e_green - 12.73) <= 1e-3 * 12.73, "Euclidean 12.73");
  v.require(std::abs(e_orange - 90.45) <= 1e-3 * 90.45, "Euclidean 90.45");
  v.require(d_green > d_orange && e_green < e_orange, "ordering reversal");
  v.detail << "Fisher-Rao " << fmt(d_green, 10) << " (" << fmt(100 * rel_green, 3) << "% off), " << fmt(d_orange, 10)
           << " (" << fmt(100 * rel_orange, 3) << "% off); Euclidean " << fmt(e_green, 6) << ", " << fmt(e_orange, 6);
  return v;
}

Verdict criterion_6() {
  Verdict v;
  const auto b5 = fam::ScalarFamily::binomial(5);
  const double mid = b5.geodesic(0.4, 0.7, 0.5);
  const double s = std::sin(0.5 * (std::asin(std::sqrt(0.4)) + std::asin(std::sqrt(0.7))));
  const double oracle_mid = s * s;
  const auto path = geo::geodesic(b5.manifold().numeric_only(), Vector::Constant(1, 0.4), Vector::Constant(1, 0.7), 3);
  const double numeric_mid = path.points[1][0];
  v.require(std::abs(mid - oracle_mid) <= 1e-6, "closed form vs arclength oracle");
  v.require(std::abs(numeric_mid - oracle_mid) <= 1e-6, "numeric geodesic vs arclength oracle");
  v.require(std::abs(mid - 0.5524430967504949) <= 5e-6, "within 5e-6 of 0.552443");
  v.require(std::abs(mid - 0.5550055679356352) <= 5e-3, "within 5e-3 of 0.5550055679356352");
  v.require(mid > 0.55, "midpoint above 0.55");
  v.detail << "midpoint " << fmt(mid, 12) << " (numeric " << fmt(numeric_mid, 12) << ", oracle " << fmt(oracle_mid, 12)
           << ")";
  return v;
}

// --- criterion 7 -----------------------------------------------------------

struct PropertyFamily {
  std::string name;
  ManifoldSpec spec;
  std::function<Vector(std::mt19937_64&)> draw;
  /// Metric for the independent RK4 oracle, used when there is no closed-form distance.
  oracle::MetricFn oracle_metric;
};

Vector simplex_chart(std::mt19937_64& rng, int k) {
  Vector x(k);
  for (int i = 0; i < k; ++i) x[i] = 0.05 + std::exponential_distribution<double>(1.0)(rng);
  x /= x.sum();
  return x.head(k - 1);
}

std::vector<PropertyFamily> property_families() {
  using fam::ScalarFamily;
  std::vector<PropertyFamily> out;
  auto logu = [](double a, double b) { return [a, b](std::mt19937_64& r) { return Vector::Constant(1, oracle::log_uniform(r, a, b)); }; };
  auto unit = [](std::mt19937_64& r) { return Vector::Constant(1, oracle::uniform(r, 0.1, 0.9)); };
  out.push_back({"poisson", ScalarFamily::poisson().manifold(), logu(0.2, 20.0), nullptr});
  out.push_back({"exponential", ScalarFamily::exponential().manifold(), logu(0.1, 10.0), nullptr});
  out.push_back({"binomial(5)", ScalarFamily::binomial(5).manifold(), unit, nullptr});
  out.push_back({"bernoulli", ScalarFamily::bernoulli().manifold(), unit, nullptr});
  out.push_back({"geometric", ScalarFamily::geometric().manifold(), unit, nullptr});
  out.push_back({"categorical(4)", fam::Multinomial::categorical(4).manifold(),
                 [](std::mt19937_64& r) { return simplex_chart(r, 4); }, nullptr});
  out.push_back({"multinomial(3, 5)", fam::Multinomial(3, 5).manifold(),
                 [](std::mt19937_64& r) { return simplex_chart(r, 3); }, nullptr});
  auto normal_point = [](std::mt19937_64& r) {
    return Vector{{oracle::uniform(r, -3.0, 3.0), oracle::log_uniform(r, 0.3, 3.0)}};
  };
  out.push_back({"normal", fam::UnivariateNormal::manifold(), normal_point, nullptr});
  out.push_back({"normal-diagonal(2)", fam::DiagonalNormal(2).manifold(),
                 [normal_point](std::mt19937_64& r) {
                   Vector x(4);
                   x << normal_point(r), normal_point(r);
                   return x;
                 },
                 nullptr});
  const fam::CenteredNormal centered(2);
  out.push_back({"normal-centered(2)", centered.manifold(),
                 [centered](std::mt19937_64& r) {
                   Matrix a(2, 2);
                   for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = std::normal_distribution<double>()(r);
                   return centered.to_coords(0.5 * a * a.transpose() + 0.3 * Matrix::Identity(2, 2));
                 },
                 nullptr});
  auto positive = [](int n, double a, double b) {
    return [n, a, b](std::mt19937_64& r) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = oracle::log_uniform(r, a, b);
      return x;
    };
  };
  out.push_back({"gamma", fam::Gamma::manifold(), positive(2, 0.5, 8.0),
                 [](const Vector& x) { return fam::Gamma::metric_matrix({x[0], x[1]}); }});
  const fam::Dirichlet beta = fam::Dirichlet::beta();
  out.push_back({"beta", beta.manifold(), positive(2, 0.5, 10.0), [beta](const Vector& x) { return beta.metric_matrix(x); }});
  const fam::Dirichlet dir3(3);
  out.push_back({"dirichlet(3)", dir3.manifold(), positive(3, 0.5, 10.0),
                 [dir3](const Vector& x) { return dir3.metric_matrix(x); }});
  return out;
}

struct PropertyStats {
  double axioms = 0.0;       // worst violation of symmetry / triangle / identity
  double roundtrip = 0.0;    // worst |exp(log) - y| / (1 + |y|)
  double speed = 0.0;        // worst relative speed spread
  double bvp = 0.0;          // worst closed-form vs numeric distance gap, relative
  double transport = 0.0;    // worst relative change of the transported norm
  bool positivity = true;
};

PropertyStats run_properties(const PropertyFamily& f, std::uint64_t seed) {
  PropertyStats s;
  std::mt19937_64 rng(seed);
  auto d = [&](const Vector& a, const Vector& b) { return geo::dist(f.spec, a, b); };

  for (int t = 0; t < 100; ++t) {
    const Vector x = f.draw(rng);
    const Vector y = f.draw(rng);
    const Vector z = f.draw(rng);
    const double xy = d(x, y);
    const double yx = d(y, x);
    const double yz = d(y, z);
    const double xz = d(x, z);
    s.axioms = std::max(s.axioms, std::abs(xy - yx) / (1.0 + xy));
    s.axioms = std::max(s.axioms, (xz - xy - yz) / (1.0 + xz));
    s.axioms = std::max(s.axioms, d(x, x));
    if (!(xy > 0.0)) s.positivity = false;
  }

  const ManifoldSpec numeric = f.spec.numeric_only();
  for (int t = 0; t < 20; ++t) {
    const Vector x = f.draw(rng);
    const Vector y = f.draw(rng);
    for (const ManifoldSpec* spec : {&f.spec, &numeric}) {
      const Vector back = geo::exp_map(*spec, x, geo::log_map(*spec, x, y));
      s.roundtrip = std::max(s.roundtrip, (back - y).norm() / (1.0 + y.norm()));
    }
  }

  for (int t = 0; t < 10; ++t) {
    const Vector x = f.draw(rng);
    const Vector y = f.draw(rng);
    const auto path = geo::geodesic(numeric, x, y, 21);
    const auto speeds = geo::path_speeds(numeric, path);
    const double lo = *std::min_element(speeds.begin(), speeds.end());
    const double hi = *std::max_element(speeds.begin(), speeds.end());
    s.speed = std::max(s.speed, (hi - lo) / std::max(path.length, 1e-300));

    Vector u(f.spec.dim);
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = std::normal_distribution<double>()(rng);
    const Vector moved = geo::parallel_transport(f.spec, u, path);
    const double before = geo::norm(f.spec, x, u);
    const double after = geo::norm(f.spec, path.points.back(), moved);
    s.transport = std::max(s.transport, std::abs(after - before) / before);
  }

  for (int t = 0; t < 50; ++t) {
    const Vector x = f.draw(rng);
    const Vector y = f.draw(rng);
    double reference = 0.0;
    double candidate = 0.0;
    if (f.oracle_metric) {
      reference = oracle::bvp_distance(f.oracle_metric, x, y);
      candidate = geo::dist(f.spec, x, y);
    } else {
      reference = f.spec.distance(x, y);
      candidate = geo::dist(numeric, x, y);
    }
    const double gap = std::isnan(reference) ? 1.0 : std::abs(candidate - reference) / std::max(1.0, reference);
    s.bvp = std::max(s.bvp, gap);
  }
  return s;
}

Verdict criterion_7() {
  Verdict v;
  const auto t0 = Clock::now();
  std::uint64_t seed = 70;
  for (const auto& f : property_families()) {
    try {
      const PropertyStats s = run_properties(f, seed++);
      v.require(s.axioms <= 1e-6 && s.positivity, f.name + " metric axioms (" + fmt(s.axioms, 3) + ")");
      v.require(s.roundtrip <= 1e-5, f.name + " exp/log round trip (" + fmt(s.roundtrip, 3) + ")");
      v.require(s.speed <= 1e-4, f.name + " speed constancy (" + fmt(s.speed, 3) + ")");
      v.require(s.bvp <= 1e-4, f.name + " distance vs boundary-value solve (" + fmt(s.bvp, 3) + ")");
      v.require(s.transport <= 1e-6, f.name + " parallel transport (" + fmt(s.transport, 3) + ")");
    } catch (const std::exception& e) {
      v.require(false, f.name + " threw: " + e.what());
    }
  }

  double christoffel = 0.0;
  std::mt19937_64 rng(77);
  const oracle::MetricFn gamma_metric = [](const Vector& x) { return fam::Gamma::metric_matrix({x[0], x[1]}); };
  for (int t = 0; t < 20; ++t) {
    const Vector p{{oracle::log_uniform(rng, 0.3, 10.0), oracle::log_uniform(rng, 0.3, 10.0)}};
    const auto closed = fam::Gamma::christoffels({p[0], p[1]});
    const auto fd = oracle::christoffels(gamma_metric, p, 1e-4);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) christoffel = std::max(christoffel, std::abs(closed(k, i, j) - fd[k](i, j)));
  }
  v.require(christoffel <= 1e-5, "gamma Christoffel symbols vs finite differences (" + fmt(christoffel, 3) + ")");

  const double elapsed = seconds_since(t0);
  v.require(elapsed < 300.0, "suite under 5 minutes");
  v.detail << "13 families, gamma Christoffel gap " << fmt(christoffel, 3) << ", " << fmt(elapsed, 3) << " s";
  return v;
}

Verdict criterion_8() {
  Verdict v;
  const auto normal = fam::UnivariateNormal::manifold().numeric_only();
  double normal_gap = 0.0;
  for (const Vector& p : {Vector{{0.0, 1.0}}, Vector{{3.0, 0.1}}, Vector{{-2.0, 5.0}}, Vector{{10.0, 0.5}},
                          Vector{{0.3, 20.0}}}) {
    const double k = geo::sectional_curvature(normal, p, Vector{{1.0, 0.3}}, Vector{{-0.2, 1.0}});
    normal_gap = std::max(normal_gap, std::abs(k + 0.5));
  }
  v.require(normal_gap <= 1e-4, "normal within 1e-4 of -1/2");

  const auto cat = fam::Multinomial::categorical(3);
  const auto simplex = cat.manifold();
  std::mt19937_64 rng(8);
  double lo = 1e300;
  double hi = -1e300;
  for (int t = 0; t < 10; ++t) {
    const Vector x = simplex_chart(rng, 3);
    const double k = geo::sectional_curvature(simplex, x, Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}});
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  v.require(std::abs(lo - 0.25) <= 1e-4 && std::abs(hi - 0.25) <= 1e-4, "categorical(3) within 1e-4 of 1/4");
  v.require(hi - lo <= 1e-4, "categorical(3) constant across points");

  int planes = 0;
  double worst = -1e300;
  for (int n : {2, 3}) {
    const fam::Dirichlet d(n);
    const auto spec = d.manifold();
    for (int t = 0; t < 25; ++t) {
      Vector a(n);
      Vector u(n);
      Vector w(n);
      for (int i = 0; i < n; ++i) {
        a[i] = oracle::log_uniform(rng, 0.1, 50.0);
        u[i] = std::normal_distribution<double>()(rng);
        w[i] = std::normal_distribution<double>()(rng);
      }
      const double k = geo::sectional_curvature(spec, a, u, w);
      worst = std::max(worst, k);
      ++planes;
    }
  }
  v.require(worst < 0.0, "Dirichlet curvature negative on every sampled plane");
  v.detail << "normal max gap " << fmt(normal_gap, 3) << "; categorical(3) K in [" << fmt(lo, 9) << ", " << fmt(hi, 9)
           << "]; Dirichlet max K over " << planes << " planes " << fmt(worst, 4);
  return v;
}

bool mixes_lines(const learn::ClusteringResult& r, const std::vector<int>& lines) {
  std::vector<std::set<int>> members(r.centroids.size());
  for (std::size_t i = 0; i < lines.size(); ++i) members[static_cast<std::size_t>(r.assignments[i])].insert(lines[i]);
  for (const auto& m : members)
    if (m.size() > 1) return true;
  return false;
}

Verdict criterion_9() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto data = learn::two_mean_lines(5.0);
  const auto fisher = learn::PointGeometry::riemannian(fam::Dirichlet::beta().manifold());
  const auto euclid = learn::PointGeometry::euclidean();
  int fisher_mixed = 0;
  int euclid_mixed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    learn::KMeansOptions opts;
    opts.k = 4;
    opts.seed = seed;
    if (mixes_lines(learn::riemannian_kmeans(data.points, fisher, opts), data.labels)) ++fisher_mixed;
    if (mixes_lines(learn::riemannian_kmeans(data.points, euclid, opts), data.labels)) ++euclid_mixed;
  }
  const double elapsed = seconds_since(t0);
  v.require(fisher_mixed == 0, "Fisher-Rao clustering never mixes the two lines");
  v.require(euclid_mixed >= 1, "Euclidean clustering mixes the lines for some seed");
  v.require(elapsed < 120.0, "runtime under 2 minutes");
  v.detail << "seeds with a mixed cluster: Fisher-Rao " << fisher_mixed << "/10, Euclidean " << euclid_mixed << "/10, "
           << fmt(elapsed, 3) << " s";
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const auto t0 = Clock::now();
  learn::SyntheticDirichletOptions options;
  options.per_class = 20;
  const auto data = learn::synthetic_dirichlet(options);
  const auto fisher = learn::pairwise_distances(data.points, learn::PointGeometry::riemannian(fam::Dirichlet(10).manifold()));
  v.require(fisher.complete(), "all Fisher-Rao distances computed");
  const auto euclid = learn::pairwise_distances(data.points, learn::PointGeometry::euclidean());

  auto error_rate = [&](const Matrix& dist, const learn::Split& split) {
    Matrix sub(static_cast<Eigen::Index>(split.test.size()), static_cast<Eigen::Index>(split.train.size()));
    std::vector<int> train_labels;
    for (auto j : split.train) train_labels.push_back(data.labels[j]);
    for (std::size_t q = 0; q < split.test.size(); ++q)
      for (std::size_t j = 0; j < split.train.size(); ++j)
        sub(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) =
            dist(static_cast<Eigen::Index>(split.test[q]), static_cast<Eigen::Index>(split.train[j]));
    const auto pred = learn::knn_from_distances(sub, train_labels, 10);
    int wrong = 0;
    for (std::size_t q = 0; q < pred.size(); ++q) wrong += pred[q] != data.labels[split.test[q]];
    return static_cast<double>(wrong) / static_cast<double>(pred.size());
  };

  std::ostringstream table;
  for (int pct = 20; pct <= 80; pct += 10) {
    double fisher_err = 0.0;
    double euclid_err = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto split = learn::stratified_split(data.labels, pct / 100.0, 1000 + seed);
      fisher_err += error_rate(fisher.values, split);
      euclid_err += error_rate(euclid.values, split);
    }
    fisher_err /= 20.0;
    euclid_err /= 20.0;
    v.require(fisher_err <= euclid_err, "training fraction " + std::to_string(pct) + "%");
    table << pct << "%: " << fmt(fisher_err, 3) << " vs " << fmt(euclid_err, 3) << "; ";
  }
  v.detail << "mean error Fisher-Rao vs Euclidean " << table.str() << fmt(seconds_since(t0), 3) << " s";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"generic Fisher metric of the normal model", criterion_1},
      {"categorical vertex distances", criterion_2},
      {"gamma sectional curvature", criterion_3},
      {"normal distances, legacy and corrected", criterion_4},
      {"beta distances and Euclidean comparison", criterion_5},
      {"binomial geodesic midpoint", criterion_6},
      {"property suite over all families", criterion_7},
      {"curvature constants from the numeric Riemann tensor", criterion_8},
      {"k-means on the two beta mean lines", criterion_9},
      {"K-NN on synthetic Dirichlet data", criterion_10},
  };
  int passed = 0;
  int evaluated = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "]";
    }
    ++evaluated;
    passed += v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " | "
              << v.detail.str() << std::endl;
  }
  std::cout << "criteria evaluated: " << evaluated << ", passed: " << passed << ", failed: " << (evaluated - passed)
            << std::endl;
  return 0;
}
