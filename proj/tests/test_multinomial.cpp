#include "fisherrao/families/multinomial.hpp"
#include "fisherrao/geometry/riemannian.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace fr = fisherrao;
namespace geo = fisherrao::geometry;
using fr::Matrix;
using fr::Vector;
using fr::families::Multinomial;

namespace {

Vector random_simplex(std::mt19937_64& rng, int k, double floor = 0.02) {
  Vector x(k);
  for (int i = 0; i < k; ++i) x[i] = floor + std::exponential_distribution<double>(1.0)(rng);
  return x / x.sum();
}

Vector random_tangent(std::mt19937_64& rng, int k) {
  Vector u(k);
  for (int i = 0; i < k; ++i) u[i] = std::normal_distribution<double>()(rng);
  return u.array() - u.mean();
}

}  // namespace

TEST(MultinomialPmf, KnownValues) {
  const auto cat = Multinomial::categorical(3);
  EXPECT_NEAR(cat.pmf(Vector{{0.2, 0.3, 0.5}}, Vector{{0, 1, 0}}), 0.3, 1e-15);
  const auto m = Multinomial(3, 2);
  // 2! / (1! 1!) * (1/3)^2
  EXPECT_NEAR(m.pmf(Vector::Constant(3, 1.0 / 3.0), Vector{{1, 1, 0}}), 2.0 / 9.0, 1e-15);
}

TEST(MultinomialPmf, SumsToOne) {
  const auto m = Multinomial(3, 6);
  const Vector theta{{0.15, 0.35, 0.5}};
  double total = 0.0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) total += m.pmf(theta, Vector{{double(a), double(b), double(6 - a - b)}});
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(MultinomialPmf, RejectsBadCounts) {
  const auto m = Multinomial(3, 2);
  const Vector theta = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_THROW((void)m.pmf(theta, Vector{{1, 0, 0}}), fr::DomainError);
  EXPECT_THROW((void)m.pmf(theta, Vector{{1.5, 0.5, 0}}), fr::DomainError);
  EXPECT_THROW((void)m.pmf(Vector{{0.5, 0.6, -0.1}}, Vector{{1, 1, 0}}), fr::DomainError);
}

TEST(MultinomialMetric, DiagonalForm) {
  const auto cat = Multinomial::categorical(3);
  const Vector theta{{0.25, 0.25, 0.5}};
  EXPECT_NEAR(cat.inner_product(theta, Vector{{1, -1, 0}}, Vector{{1, -1, 0}}), 8.0, 1e-14);
  const Vector uniform = Vector::Constant(4, 0.25);
  EXPECT_NEAR(Multinomial::categorical(4).inner_product(uniform, Vector{{0.5, -0.5, 0, 0}}, Vector{{0.5, -0.5, 0, 0}}),
              2.0, 1e-14);
  EXPECT_NEAR(Multinomial::categorical(2).inner_product(Vector{{0.5, 0.5}}, Vector{{1, -1}}, Vector{{1, -1}}), 4.0,
              1e-14);
}

TEST(MultinomialMetric, ScalesLinearlyInN) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vector theta = random_simplex(rng, 5);
    const Vector u = random_tangent(rng, 5);
    const double one = Multinomial::categorical(5).inner_product(theta, u, u);
    EXPECT_NEAR(Multinomial(5, 7).inner_product(theta, u, u), 7.0 * one, 1e-12 * one);
  }
}

TEST(MultinomialMetric, ChartMatrixAgreesWithFullInnerProduct) {
  std::mt19937_64 rng(4);
  const auto m = Multinomial(4, 3);
  for (int i = 0; i < 20; ++i) {
    const Vector theta = random_simplex(rng, 4);
    const Vector v = random_tangent(rng, 4).head(3);
    const Vector u = m.tangent_from_chart(v);
    EXPECT_NEAR(v.dot(m.metric_matrix(theta) * v), m.inner_product(theta, u, u), 1e-10);
  }
}

TEST(MultinomialMetric, TangentVectorsMustSumToZero) {
  const auto cat = Multinomial::categorical(3);
  EXPECT_THROW((void)cat.inner_product(Vector::Constant(3, 1.0 / 3), Vector{{1, 0, 0}}, Vector{{1, -1, 0}}),
               fr::DomainError);
}

TEST(SphereMap, ImageAndInverse) {
  const auto cat = Multinomial::categorical(4);
  const Vector r = cat.sphere_map(Vector::Constant(4, 0.25));
  EXPECT_TRUE(r.isApprox(Vector::Ones(4), 1e-15));

  std::mt19937_64 rng(5);
  for (int n : {1, 3, 10}) {
    const auto m = Multinomial(6, n);
    for (int i = 0; i < 10; ++i) {
      const Vector theta = random_simplex(rng, 6);
      const Vector img = m.sphere_map(theta);
      EXPECT_NEAR(img.squaredNorm(), 4.0 * n, 1e-12 * n);
      EXPECT_TRUE(m.sphere_map_inverse(img).isApprox(theta, 1e-14));
    }
  }
}

TEST(SphereMap, IsAnIsometry) {
  std::mt19937_64 rng(6);
  const auto m = Multinomial(5, 4);
  for (int i = 0; i < 20; ++i) {
    const Vector theta = random_simplex(rng, 5);
    const Vector u = random_tangent(rng, 5);
    const Vector w = random_tangent(rng, 5);
    EXPECT_NEAR(m.sphere_pushforward(theta, u).dot(m.sphere_pushforward(theta, w)), m.inner_product(theta, u, w),
                1e-10 * (1.0 + std::abs(m.inner_product(theta, u, w))));
  }
}

TEST(MultinomialDistance, VerticesOfTheCategoricalSimplex) {
  const auto cat = Multinomial::categorical(6);
  const Vector theta{{0.05, 0.1, 0.3, 0.25, 0.2, 0.1}};
  int closest = -1;
  double best = 1e300;
  for (int i = 0; i < 6; ++i) {
    const Vector vertex = Vector::Unit(6, i);
    const double d = cat.dist(theta, vertex);
    EXPECT_NEAR(d, 2.0 * std::acos(std::sqrt(theta[i])), 1e-14);
    if (d < best) {
      best = d;
      closest = i;
    }
  }
  EXPECT_EQ(closest, 2);
  EXPECT_NEAR(cat.dist(Vector::Unit(6, 0), Vector::Unit(6, 1)), std::numbers::pi, 1e-15);
}

TEST(MultinomialDistance, ClosedFormAgainstBvpOracle) {
  std::mt19937_64 rng(7);
  const auto m = Multinomial(3, 2);
  const oracle::MetricFn g = [&](const Vector& x) { return m.metric_matrix(m.from_chart(x)); };
  for (int i = 0; i < 5; ++i) {
    const Vector a = random_simplex(rng, 3, 0.3);
    const Vector b = random_simplex(rng, 3, 0.3);
    const double expected = oracle::bvp_distance(g, m.to_chart(a), m.to_chart(b));
    ASSERT_FALSE(std::isnan(expected));
    EXPECT_NEAR(m.dist(a, b), expected, 1e-6);
  }
}

TEST(MultinomialDistance, GenericEngineWithoutClosedForms) {
  std::mt19937_64 rng(8);
  const auto m = Multinomial::categorical(4);
  const auto spec = m.manifold().numeric_only();
  for (int i = 0; i < 5; ++i) {
    const Vector a = random_simplex(rng, 4, 0.2);
    const Vector b = random_simplex(rng, 4, 0.2);
    EXPECT_NEAR(geo::dist(spec, m.to_chart(a), m.to_chart(b)), m.dist(a, b), 1e-6);
  }
}

TEST(MultinomialDistance, OutsideTheSimplexIsRejected) {
  const auto cat = Multinomial::categorical(3);
  EXPECT_THROW((void)cat.dist(Vector{{0.5, 0.5, 0.1}}, Vector::Constant(3, 1.0 / 3)), fr::DomainError);
  EXPECT_THROW((void)cat.dist(Vector{{0.5, 0.5}}, Vector::Constant(3, 1.0 / 3)), fr::DomainError);
}

TEST(MultinomialGeodesic, EndpointsAndLength) {
  std::mt19937_64 rng(9);
  const auto m = Multinomial(4, 2);
  const oracle::MetricFn g = [&](const Vector& x) { return m.metric_matrix(m.from_chart(x)); };
  for (int i = 0; i < 5; ++i) {
    const Vector a = random_simplex(rng, 4);
    const Vector b = random_simplex(rng, 4);
    EXPECT_EQ(m.geodesic(a, b, 0.0), a);
    EXPECT_EQ(m.geodesic(a, b, 1.0), b);
    std::vector<Vector> pts;
    for (int s = 0; s <= 2000; ++s) {
      const Vector p = m.geodesic(a, b, s / 2000.0);
      EXPECT_TRUE(m.belongs(p));
      pts.push_back(m.to_chart(p));
    }
    EXPECT_NEAR(oracle::polyline_length(g, pts), m.dist(a, b), 1e-6);
    // Midpoint is equidistant from both ends.
    const Vector mid = m.geodesic(a, b, 0.5);
    EXPECT_NEAR(m.dist(a, mid), m.dist(mid, b), 1e-12);
  }
}

TEST(MultinomialCurvature, ClosedFormAndNumeric) {
  EXPECT_DOUBLE_EQ(Multinomial::categorical(3).sectional_curvature(), 0.25);
  EXPECT_DOUBLE_EQ(Multinomial(5, 4).sectional_curvature(), 1.0 / 16.0);
  EXPECT_THROW((void)Multinomial::categorical(2).sectional_curvature(), fr::DomainError);

  std::mt19937_64 rng(10);
  for (int n : {1, 4}) {
    const auto m = Multinomial(4, n);
    const auto spec = m.manifold();
    for (int i = 0; i < 4; ++i) {
      const Vector x = m.to_chart(random_simplex(rng, 4, 0.2));
      const Vector u = random_tangent(rng, 4).head(3);
      const Vector v = random_tangent(rng, 4).head(3);
      EXPECT_NEAR(geo::sectional_curvature(spec, x, u, v), 1.0 / (4.0 * n), 1e-5) << "n = " << n;
    }
  }
}

TEST(MultinomialSample, CategoricalDrawsAreOneHot) {
  const auto cat = Multinomial::categorical(3);
  fr::numerics::Rng rng(11);
  const Vector theta{{0.2, 0.3, 0.5}};
  const int count = 60000;
  Vector freq = Vector::Zero(3);
  for (const auto& s : cat.sample(theta, count, rng)) {
    EXPECT_DOUBLE_EQ(s.sum(), 1.0);
    EXPECT_DOUBLE_EQ(s.maxCoeff(), 1.0);
    freq += s;
  }
  freq /= count;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(freq[i], theta[i], 4.0 * std::sqrt(theta[i] * (1 - theta[i]) / count));
}

TEST(MultinomialSample, CountsSumToN) {
  const auto m = Multinomial(4, 9);
  fr::numerics::Rng rng(12);
  for (const auto& s : m.sample(Vector::Constant(4, 0.25), 100, rng)) EXPECT_DOUBLE_EQ(s.sum(), 9.0);
}
