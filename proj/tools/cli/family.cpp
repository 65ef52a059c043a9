#include "cli/family.hpp"

#include <cmath>

namespace fisherrao::cli {

namespace {

using families::Dirichlet;
using families::Gamma;
using families::GammaPoint;
using families::Multinomial;
using families::ScalarFamily;
using families::UnivariateNormal;
using families::UnivariateNormalPoint;
using nlohmann::json;

void check_row(const Family& f, const Vector& row) {
  if (row.size() != f.columns) {
    throw DomainError(f.name + ": expected " + std::to_string(f.columns) + " values per point, got " +
                      std::to_string(row.size()));
  }
}

void check_observation(const Family& f, const Vector& x) {
  if (x.size() != f.observation_size) {
    throw DomainError(f.name + ": pdf expects observations with " + std::to_string(f.observation_size) +
                      " values, got " + std::to_string(x.size()));
  }
}

long require_n(const FamilyOptions& o) {
  if (!o.n) throw DomainError(o.name + " requires --n");
  if (*o.n < 1) throw DomainError(o.name + ": --n must be positive");
  return *o.n;
}

int require_dim(const FamilyOptions& o, int minimum) {
  if (!o.dim) throw DomainError(o.name + " requires --dim");
  if (*o.dim < minimum) throw DomainError(o.name + ": --dim must be at least " + std::to_string(minimum));
  return *o.dim;
}

std::vector<std::string> indexed(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// Families whose rows are exactly the chart coordinates.
void identity_chart(Family& f) {
  f.to_chart = [spec = f.spec, name = f.name, columns = f.columns](const Vector& row) {
    if (row.size() != columns) {
      throw DomainError(name + ": expected " + std::to_string(columns) + " values per point, got " +
                        std::to_string(row.size()));
    }
    spec.check_point(row, "point");
    return row;
  };
  f.from_chart = [](const Vector& c) { return c; };
}

Family scalar_family(const ScalarFamily& fam, std::optional<generic::DensityModel> model) {
  Family f;
  f.name = fam.name();
  f.columns = 1;
  f.column_names = {"theta"};
  f.spec = fam.manifold();
  identity_chart(f);
  f.dist = [fam](const Vector& a, const Vector& b) {
    fam.check(a[0], "dist");
    fam.check(b[0], "dist");
    return fam.dist(a[0], b[0]);
  };
  f.density_model = std::move(model);
  f.pdf = [fam](const Vector& row, const Vector& x) {
    fam.check(row[0], "pdf");
    return fam.density(row[0], x[0]);
  };
  f.sample = [fam](const Vector& row, int count, numerics::Rng& rng) { return json(fam.sample(row[0], count, rng)); };
  return f;
}

Family simplex_family(const Multinomial& fam, const std::string& name) {
  Family f;
  f.name = name;
  f.columns = fam.k();
  f.column_names = indexed("theta", fam.k());
  f.spec = fam.manifold();
  f.to_chart = [fam, name](const Vector& row) {
    if (row.size() != fam.k()) {
      throw DomainError(name + ": expected " + std::to_string(fam.k()) + " probabilities per point, got " +
                        std::to_string(row.size()));
    }
    fam.check(row, "point");
    return fam.to_chart(row);
  };
  f.from_chart = [fam](const Vector& c) { return fam.from_chart(c); };
  f.dist = [fam](const Vector& a, const Vector& b) { return fam.dist(a, b); };
  if (fam.k() >= 3) f.closed_form_curvature = [fam](const Vector&) { return fam.sectional_curvature(); };
  f.observation_size = fam.k();
  f.pdf = [fam](const Vector& row, const Vector& x) { return fam.pmf(row, x); };
  f.sample = [fam](const Vector& row, int count, numerics::Rng& rng) {
    json out = json::array();
    for (const Vector& v : fam.sample(row, count, rng)) out.push_back(std::vector<double>(v.begin(), v.end()));
    return out;
  };
  return f;
}

Family normal_family() {
  Family f;
  f.name = "normal";
  f.columns = 2;
  f.column_names = {"m", "sigma"};
  f.spec = UnivariateNormal::manifold();
  identity_chart(f);
  f.dist = [](const Vector& a, const Vector& b) {
    return UnivariateNormal::dist(UnivariateNormalPoint::from(a), UnivariateNormalPoint::from(b));
  };
  f.legacy_dist = [](const Vector& a, const Vector& b) {
    return UnivariateNormal::legacy_halfplane_dist(UnivariateNormalPoint::from(a), UnivariateNormalPoint::from(b));
  };
  f.closed_form_curvature = [](const Vector& row) {
    return UnivariateNormal::sectional_curvature(UnivariateNormalPoint::from(row));
  };
  f.density_model = generic::models::normal();
  f.pdf = [](const Vector& row, const Vector& x) { return UnivariateNormal::pdf(UnivariateNormalPoint::from(row))(x[0]); };
  f.sample = [](const Vector& row, int count, numerics::Rng& rng) {
    return json(UnivariateNormal::sample(UnivariateNormalPoint::from(row), count, rng));
  };
  return f;
}

Family diagonal_normal_family(int p) {
  const families::DiagonalNormal fam(p);
  Family f;
  f.name = "normal-diagonal";
  f.columns = 2 * p;
  for (int i = 1; i <= p; ++i) {
    f.column_names.push_back("m" + std::to_string(i));
    f.column_names.push_back("sigma" + std::to_string(i));
  }
  f.spec = fam.manifold();
  identity_chart(f);
  f.dist = [fam, spec = f.spec](const Vector& a, const Vector& b) {
    spec.check_point(a, "dist");
    spec.check_point(b, "dist");
    return fam.dist(a, b);
  };
  f.observation_size = p;
  f.pdf = [p](const Vector& row, const Vector& x) {
    double log_density = 0.0;
    for (int i = 0; i < p; ++i) {
      const UnivariateNormalPoint q{row[2 * i], row[2 * i + 1]};
      log_density += std::log(UnivariateNormal::pdf(q)(x[i]));
    }
    return std::exp(log_density);
  };
  f.sample = [p](const Vector& row, int count, numerics::Rng& rng) {
    json out = json::array();
    for (int c = 0; c < count; ++c) {
      std::vector<double> x;
      for (int i = 0; i < p; ++i) x.push_back(row[2 * i] + row[2 * i + 1] * numerics::standard_normal(rng));
      out.push_back(x);
    }
    return out;
  };
  return f;
}

Family centered_normal_family(int p) {
  const families::CenteredNormal fam(p);
  Family f;
  f.name = "normal-centered";
  f.columns = p * p;
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j) f.column_names.push_back("s" + std::to_string(i) + std::to_string(j));
  f.spec = fam.manifold();
  auto to_matrix = [p](const Vector& row) {
    if (row.size() != p * p) {
      throw DomainError("normal-centered: expected " + std::to_string(p * p) + " matrix entries per point, got " +
                        std::to_string(row.size()));
    }
    Matrix s(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) s(i, j) = row[i * p + j];
    return s;
  };
  f.to_chart = [fam, to_matrix](const Vector& row) {
    const Matrix s = to_matrix(row);
    fam.check(s, "point");
    return fam.to_coords(s);
  };
  f.from_chart = [fam, p](const Vector& c) {
    const Matrix s = fam.from_coords(c);
    Vector row(p * p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) row[i * p + j] = s(i, j);
    return row;
  };
  f.dist = [fam, to_matrix](const Vector& a, const Vector& b) { return fam.dist(to_matrix(a), to_matrix(b)); };
  f.observation_size = p;
  f.pdf = [fam, to_matrix](const Vector& row, const Vector& x) { return std::exp(fam.log_pdf(to_matrix(row), x)); };
  f.sample = [fam, to_matrix](const Vector& row, int count, numerics::Rng& rng) {
    const Matrix s = to_matrix(row);
    fam.check(s, "sample");
    if (count < 1) throw DomainError("sample: count must be at least 1");
    const Matrix l = Eigen::LLT<Matrix>(s).matrixL();
    json out = json::array();
    for (int c = 0; c < count; ++c) {
      Vector z(fam.p());
      for (int i = 0; i < fam.p(); ++i) z[i] = numerics::standard_normal(rng);
      const Vector x = fam.mean() + l * z;
      out.push_back(std::vector<double>(x.begin(), x.end()));
    }
    return out;
  };
  return f;
}

Family gamma_family() {
  Family f;
  f.name = "gamma";
  f.columns = 2;
  f.column_names = {"kappa", "gamma"};
  f.spec = Gamma::manifold();
  identity_chart(f);
  f.dist = [spec = f.spec](const Vector& a, const Vector& b) { return geometry::dist(spec, a, b); };
  f.closed_form_curvature = [](const Vector& row) { return Gamma::sectional_curvature(GammaPoint::from(row)); };
  f.density_model = generic::models::gamma();
  f.pdf = [](const Vector& row, const Vector& x) { return Gamma::pdf(GammaPoint::from(row), x[0]); };
  f.sample = [](const Vector& row, int count, numerics::Rng& rng) {
    return json(Gamma::sample(GammaPoint::from(row), count, rng));
  };
  return f;
}

Family dirichlet_family(int n, const std::string& name) {
  const Dirichlet fam(n);
  Family f;
  f.name = name;
  f.columns = n;
  f.column_names = indexed("alpha", n);
  f.spec = fam.manifold();
  identity_chart(f);
  f.dist = [spec = f.spec](const Vector& a, const Vector& b) { return geometry::dist(spec, a, b); };
  if (n == 2) {
    f.density_model = generic::models::beta();
    f.pdf = [](const Vector& row, const Vector& x) { return Dirichlet::beta_pdf(row[0], row[1], x[0]); };
    f.sample = [fam](const Vector& row, int count, numerics::Rng& rng) {
      std::vector<double> out;
      for (const Vector& x : fam.sample(row, count, rng)) out.push_back(x[0]);
      return json(out);
    };
  } else {
    f.observation_size = n;
    f.pdf = [fam](const Vector& row, const Vector& x) { return fam.pdf(row, x); };
    f.sample = [fam](const Vector& row, int count, numerics::Rng& rng) {
      json out = json::array();
      for (const Vector& x : fam.sample(row, count, rng)) out.push_back(std::vector<double>(x.begin(), x.end()));
      return out;
    };
  }
  return f;
}

Family build(const FamilyOptions& o) {
  const std::string& name = o.name;
  if (name == "bernoulli") return scalar_family(ScalarFamily::bernoulli(), generic::models::binomial(1));
  if (name == "binomial") {
    const long n = require_n(o);
    return scalar_family(ScalarFamily::binomial(n), generic::models::binomial(n));
  }
  if (name == "poisson") return scalar_family(ScalarFamily::poisson(), generic::models::poisson());
  if (name == "exponential") return scalar_family(ScalarFamily::exponential(), generic::models::exponential());
  if (name == "geometric") return scalar_family(ScalarFamily::geometric(), generic::models::geometric());
  if (name == "categorical") return simplex_family(Multinomial::categorical(require_dim(o, 2)), name);
  if (name == "multinomial") {
    const int k = require_dim(o, 2);
    return simplex_family(Multinomial(k, require_n(o)), name);
  }
  if (name == "normal") return normal_family();
  if (name == "normal-diagonal") return diagonal_normal_family(require_dim(o, 1));
  if (name == "normal-centered") return centered_normal_family(require_dim(o, 1));
  if (name == "gamma") return gamma_family();
  if (name == "beta") return dirichlet_family(2, name);
  if (name == "dirichlet") return dirichlet_family(require_dim(o, 2), name);
  std::string known;
  for (const auto& n : family_names()) known += (known.empty() ? "" : ", ") + n;
  throw DomainError("unknown family '" + name + "' (known: " + known + ")");
}

}  // namespace

std::vector<std::string> family_names() {
  return {"bernoulli", "binomial",        "poisson",         "exponential", "geometric", "categorical", "multinomial",
          "normal",    "normal-diagonal", "normal-centered", "gamma",       "beta",      "dirichlet"};
}

Family make_family(const FamilyOptions& options) {
  Family f = build(options);
  auto dist = f.dist;
  const Family shape = f;
  f.dist = [dist, shape](const Vector& a, const Vector& b) {
    check_row(shape, a);
    check_row(shape, b);
    return dist(a, b);
  };
  auto pdf = f.pdf;
  f.pdf = [pdf, shape](const Vector& row, const Vector& x) {
    check_row(shape, row);
    check_observation(shape, x);
    return pdf(row, x);
  };
  auto sample = f.sample;
  f.sample = [sample, shape](const Vector& row, int count, numerics::Rng& rng) {
    check_row(shape, row);
    if (count < 1) throw DomainError("sample: count must be at least 1");
    return sample(row, count, rng);
  };
  return f;
}

}  // namespace fisherrao::cli
