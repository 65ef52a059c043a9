#include "fisherrao/families/scalar.hpp"
#include "fisherrao/generic/fisher_rao.hpp"
#include "fisherrao/geometry/riemannian.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fr = fisherrao;
namespace geo = fisherrao::geometry;
using fr::Vector;
using fr::families::ScalarFamily;

namespace {

struct Case {
  ScalarFamily family;
  double lo;
  double hi;
  fr::generic::DensityModel model;
};

std::vector<Case> cases() {
  return {{ScalarFamily::poisson(), 0.2, 20.0, fr::generic::models::poisson()},
          {ScalarFamily::exponential(), 0.05, 5.0, fr::generic::models::exponential()},
          {ScalarFamily::binomial(5), 0.1, 0.9, fr::generic::models::binomial(5)},
          {ScalarFamily::bernoulli(), 0.1, 0.9, fr::generic::models::binomial(1)},
          {ScalarFamily::geometric(), 0.1, 0.9, fr::generic::models::geometric()}};
}

double draw(std::mt19937_64& rng, const Case& c) { return oracle::uniform(rng, c.lo, c.hi); }

}  // namespace

TEST(ScalarDensity, KnownValues) {
  EXPECT_NEAR(ScalarFamily::poisson().density(1.0, 0.0), std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(ScalarFamily::bernoulli().density(0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(ScalarFamily::geometric().density(0.5, 1.0), 0.5);
  EXPECT_NEAR(ScalarFamily::exponential().density(2.0, 1.0), 2.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(ScalarFamily::binomial(5).density(0.4, 2.0), 10.0 * 0.16 * std::pow(0.6, 3), 1e-14);
}

TEST(ScalarDensity, OutsideTheSupport) {
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(ScalarFamily::poisson().log_density(1.0, -1.0), ninf);
  EXPECT_EQ(ScalarFamily::poisson().log_density(1.0, 1.5), ninf);
  EXPECT_EQ(ScalarFamily::binomial(5).log_density(0.3, 6.0), ninf);
  EXPECT_EQ(ScalarFamily::geometric().log_density(0.3, 0.0), ninf);
  EXPECT_EQ(ScalarFamily::exponential().log_density(1.0, -0.1), ninf);
  EXPECT_THROW((void)ScalarFamily::poisson().density(1.0, 2.5), fr::DomainError);
}

TEST(ScalarDensity, Normalization) {
  for (const auto& c : cases()) {
    const double theta = 0.5 * (c.lo + c.hi) / (c.hi > 1.0 ? 4.0 : 1.0);
    const auto fam = c.family;
    double total = 0.0;
    if (fam.kind() == ScalarFamily::Kind::kExponential) {
      total = oracle::simpson([&](double x) { return fam.density(theta, x); }, 0.0, 60.0 / theta);
    } else {
      for (int k = 0; k < 2000; ++k) total += std::exp(fam.log_density(theta, k));
    }
    EXPECT_NEAR(total, 1.0, 1e-9) << fam.name();
  }
}

TEST(FisherInformation, KnownValues) {
  EXPECT_DOUBLE_EQ(ScalarFamily::geometric().fisher_information(0.5), 8.0);
  EXPECT_DOUBLE_EQ(ScalarFamily::exponential().fisher_information(2.0), 0.25);
  EXPECT_DOUBLE_EQ(ScalarFamily::binomial(5).fisher_information(0.5), 20.0);
  EXPECT_DOUBLE_EQ(ScalarFamily::poisson().fisher_information(4.0), 0.25);
}

TEST(FisherInformation, AgreesWithGenericNumericMetric) {
  std::mt19937_64 rng(1);
  for (const auto& c : cases()) {
    for (int i = 0; i < 20; ++i) {
      const double theta = c.family.kind() == ScalarFamily::Kind::kExponential ? oracle::uniform(rng, 0.5, 5.0)
                                                                                : draw(rng, c);
      const double expected = c.family.fisher_information(theta);
      const double numeric = fr::generic::fisher_matrix(c.model, Vector::Constant(1, theta))(0, 0);
      EXPECT_NEAR(numeric, expected, 1e-4 * expected) << c.family.name() << " at " << theta;
    }
  }
}

TEST(FisherInformation, DerivativeMatchesDifferences) {
  for (const auto& c : cases()) {
    const double t = 0.5 * (c.lo + c.hi);
    const double h = 1e-6 * t;
    const double fd = (c.family.fisher_information(t + h) - c.family.fisher_information(t - h)) / (2 * h);
    EXPECT_NEAR(c.family.fisher_information_derivative(t), fd, 1e-6 * (1 + std::abs(fd))) << c.family.name();
  }
}

TEST(Arclength, KnownDifferences) {
  const auto poisson = ScalarFamily::poisson();
  EXPECT_DOUBLE_EQ(std::abs(poisson.arclength(1.0) - poisson.arclength(4.0)), 2.0);
  const auto b5 = ScalarFamily::binomial(5);
  const double expected = 2.0 * std::sqrt(5.0) * std::abs(std::asin(std::sqrt(0.7)) - std::asin(std::sqrt(0.4)));
  EXPECT_NEAR(std::abs(b5.arclength(0.4) - b5.arclength(0.7)), expected, 1e-12);
  EXPECT_NEAR(expected, 1.37043, 1e-5);
}

TEST(Arclength, InverseRoundTrip) {
  for (const auto& c : cases()) {
    for (double t : {c.lo, 0.5 * (c.lo + c.hi), c.hi}) {
      EXPECT_NEAR(c.family.from_arclength(c.family.arclength(t)), t, 1e-12 * std::max(1.0, t)) << c.family.name();
    }
  }
  const auto geometric = ScalarFamily::geometric();
  EXPECT_NEAR(geometric.from_arclength(geometric.arclength(0.3)), 0.3, 1e-12);
}

TEST(Arclength, DerivativeIsSqrtFisher) {
  for (const auto& c : cases()) {
    const double t = 0.37 * c.lo + 0.63 * c.hi;
    const double h = 1e-6 * t;
    const double fd = (c.family.arclength(t + h) - c.family.arclength(t - h)) / (2 * h);
    EXPECT_NEAR(fd, std::sqrt(c.family.fisher_information(t)), 1e-6 * fd) << c.family.name();
  }
}

TEST(ScalarDistance, TableValues) {
  EXPECT_DOUBLE_EQ(ScalarFamily::poisson().dist(1.0, 4.0), 2.0);
  EXPECT_EQ(ScalarFamily::geometric().dist(0.3, 0.3), 0.0);
  EXPECT_NEAR(ScalarFamily::exponential().dist(0.1, 2.0), std::log(20.0), 1e-14);
  EXPECT_NEAR(std::log(20.0), 2.99573, 1e-5);
}

TEST(ScalarDistance, GeometricFormula) {
  // Integral of 1 / (p sqrt(1 - p)) gives 2 |atanh(sqrt(1 - a)) - atanh(sqrt(1 - b))|.
  const auto g = ScalarFamily::geometric();
  const double a = 0.2;
  const double b = 0.65;
  const double quad = oracle::simpson([](double p) { return 1.0 / (p * std::sqrt(1.0 - p)); }, a, b);
  EXPECT_NEAR(g.dist(a, b), quad, 1e-10);
}

TEST(ScalarDistance, TaggedPointsMustShareAFamily) {
  using fr::families::ScalarFamilyPoint;
  EXPECT_DOUBLE_EQ(fr::families::dist(ScalarFamilyPoint{ScalarFamily::poisson(), 1.0},
                                      ScalarFamilyPoint{ScalarFamily::poisson(), 4.0}),
                   2.0);
  EXPECT_THROW(fr::families::dist(ScalarFamilyPoint{ScalarFamily::poisson(), 1.0},
                                  ScalarFamilyPoint{ScalarFamily::exponential(), 4.0}),
               fr::DomainError);
  EXPECT_THROW(fr::families::dist(ScalarFamilyPoint{ScalarFamily::binomial(3), 0.1},
                                  ScalarFamilyPoint{ScalarFamily::binomial(4), 0.2}),
               fr::DomainError);
}

TEST(ScalarDistance, BoundaryParametersAreRejected) {
  EXPECT_THROW((void)ScalarFamily::geometric().geodesic(0.0, 0.5, 0.5), fr::DomainError);
  EXPECT_THROW((void)ScalarFamily::binomial(0), fr::DomainError);
  EXPECT_FALSE(ScalarFamily::binomial(2).belongs(1.0));
  EXPECT_FALSE(ScalarFamily::poisson().belongs(0.0));
}

TEST(ScalarDistance, MatchesNumericBvpSolver) {
  std::mt19937_64 rng(2);
  for (const auto& c : cases()) {
    const auto spec = c.family.manifold().numeric_only();
    for (int i = 0; i < 50; ++i) {
      const double a = draw(rng, c);
      const double b = draw(rng, c);
      const double closed = c.family.dist(a, b);
      const double numeric = geo::dist(spec, Vector::Constant(1, a), Vector::Constant(1, b));
      EXPECT_NEAR(numeric, closed, 1e-6 * std::max(1.0, closed)) << c.family.name() << " " << a << " " << b;
    }
  }
}

TEST(ScalarDistance, GeometricMonotoneInSeparation) {
  const auto g = ScalarFamily::geometric();
  double last = 0.0;
  for (double p2 = 0.35; p2 < 0.99; p2 += 0.05) {
    const double d = g.dist(0.3, p2);
    EXPECT_GT(d, last);
    last = d;
  }
}

TEST(ScalarGeodesic, EndpointsAndMidpoints) {
  const auto b5 = ScalarFamily::binomial(5);
  EXPECT_EQ(b5.geodesic(0.4, 0.7, 0.0), 0.4);
  EXPECT_EQ(b5.geodesic(0.4, 0.7, 1.0), 0.7);
  const double mid = b5.geodesic(0.4, 0.7, 0.5);
  EXPECT_NEAR(mid, 0.5524430967504949, 1e-12);
  EXPECT_GT(mid, 0.55);

  const auto e = ScalarFamily::exponential();
  EXPECT_NEAR(e.geodesic(0.1, 2.0, 0.5), std::sqrt(0.2), 1e-14);
  EXPECT_GT(std::abs(e.geodesic(0.1, 2.0, 0.5) - 1.05), 0.5);
}

TEST(ScalarGeodesic, ReversalSymmetry) {
  for (const auto& fam : {ScalarFamily::bernoulli(), ScalarFamily::binomial(7)}) {
    for (double t : {0.1, 0.25, 0.5, 0.9}) {
      EXPECT_NEAR(fam.geodesic(0.2, 0.85, t), fam.geodesic(0.85, 0.2, 1.0 - t), 1e-14);
    }
  }
}

TEST(ScalarGeodesic, ManifoldFlowLeavesTheInterval) {
  const auto spec = ScalarFamily::binomial(5).manifold();
  EXPECT_THROW(geo::exp_map(spec, Vector::Constant(1, 0.5), Vector::Constant(1, 5.0)), fr::IncompleteGeodesic);
}

TEST(ScalarSample, LawSanity) {
  fr::numerics::Rng rng(9);
  const auto near_one = ScalarFamily::bernoulli().sample(1.0 - 1e-9, 1000, rng);
  EXPECT_GE(std::count(near_one.begin(), near_one.end(), 1.0), 999);

  const int n = 100000;
  const auto exp_draws = ScalarFamily::exponential().sample(2.0, n, rng);
  double mean = 0.0;
  for (double x : exp_draws) mean += x;
  mean /= n;
  EXPECT_NEAR(mean, 0.5, 3.0 * 0.5 / std::sqrt(n));

  const auto pois = ScalarFamily::poisson().sample(4.0, n, rng);
  double m = 0.0;
  double m2 = 0.0;
  for (double x : pois) {
    m += x;
    m2 += x * x;
  }
  m /= n;
  const double var = m2 / n - m * m;
  // Var of the sample variance for Poisson: (mu4 - sigma^4) / n with mu4 = 3 lambda^2 + lambda.
  EXPECT_NEAR(var, 4.0, 3.0 * std::sqrt((3.0 * 16.0 + 4.0 - 16.0) / n));

  const auto geo_draws = ScalarFamily::geometric().sample(0.25, n, rng);
  double gm = 0.0;
  for (double x : geo_draws) gm += x;
  EXPECT_NEAR(gm / n, 4.0, 3.0 * std::sqrt(0.75 / (0.25 * 0.25) / n));
}
