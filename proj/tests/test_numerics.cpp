#include "qcolloid/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qcolloid/errors.hpp"

namespace qcolloid {
namespace {

TEST(GaussLegendre, TwoPointRule) {
  const QuadRule& rule = gauss_legendre(2);
  ASSERT_EQ(rule.x.size(), 2u);
  double node = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(rule.x[0], -node, 1e-15);
  EXPECT_NEAR(rule.x[1], node, 1e-15);
  EXPECT_NEAR(rule.w[0], 1.0, 1e-15);
  EXPECT_NEAR(rule.w[1], 1.0, 1e-15);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  // n = 5 integrates x^8 exactly: integral over [-1, 1] is 2/9.
  const QuadRule& rule = gauss_legendre(5);
  double acc = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i)
    acc += rule.w[i] * std::pow(rule.x[i], 8);
  EXPECT_NEAR(acc, 2.0 / 9.0, 1e-14);
}

TEST(GaussLegendre, MappedRuleIntegratesSine) {
  QuadRule rule = gauss_legendre_on(16, 0.0, M_PI);
  double acc = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i)
    acc += rule.w[i] * std::sin(rule.x[i]);
  EXPECT_NEAR(acc, 2.0, 1e-12);
}

TEST(GaussLegendre, CachedRuleIsStable) {
  const QuadRule& a = gauss_legendre(7);
  const QuadRule& b = gauss_legendre(7);
  ASSERT_EQ(a.x.size(), b.x.size());
  for (size_t i = 0; i < a.x.size(); ++i) {
    EXPECT_EQ(a.x[i], b.x[i]);
    EXPECT_EQ(a.w[i], b.w[i]);
  }
}

TEST(AdaptiveSimpson, SmoothIntegrand) {
  double v = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI,
                              1e-10);
  EXPECT_NEAR(v, 2.0, 1e-9);
}

TEST(AdaptiveSimpson, IntegrableKink) {
  // integral of |x - 0.3| over [0, 1] = (0.09 + 0.49) / 2.
  double v = adaptive_simpson([](double x) { return std::abs(x - 0.3); }, 0.0,
                              1.0, 1e-10);
  EXPECT_NEAR(v, 0.29, 1e-8);
}

TEST(TanhSinh, SmoothIntegrand) {
  double v = tanh_sinh([](double t) { return std::sin(t); }, 0.0, M_PI, 48);
  EXPECT_NEAR(v, 2.0, 1e-13);
}

TEST(TanhSinh, EndpointSingularities) {
  double v =
      tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 48);
  EXPECT_NEAR(v, 2.0, 1e-12);
  double w = tanh_sinh([](double x) { return std::sqrt(1.0 - x * x); }, -1.0,
                       1.0, 48);
  EXPECT_NEAR(w, M_PI / 2.0, 1e-13);
}

TEST(TanhSinh, MatchesAdaptiveSimpsonOnOffsetRing) {
  auto density = [](double d) { return 1.0 - std::sqrt(1.0 - d * d); };
  for (double A : {0.1, 0.45, 0.7}) {
    for (double B : {0.0, 0.25, 1.0 - A}) {
      auto f = [&](double t) { return density(A * std::cos(t) + B); };
      EXPECT_NEAR(tanh_sinh(f, 0.0, M_PI, 48),
                  adaptive_simpson(f, 0.0, M_PI, 1e-13), 1e-12);
    }
  }
}

TEST(TanhSinh, RejectsEmptyRule) {
  EXPECT_THROW(tanh_sinh([](double) { return 1.0; }, 0.0, 1.0, 0),
               InputError);
}

TEST(Fibonacci, CountUnitAndDeterministic) {
  auto dirs = fibonacci_directions(500, false);
  ASSERT_EQ(dirs.size(), 500u);
  for (const auto& d : dirs) EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  auto again = fibonacci_directions(500, false);
  for (size_t i = 0; i < dirs.size(); ++i) EXPECT_EQ(dirs[i], again[i]);
}

TEST(Fibonacci, HemisphereKeepsUpperHalf) {
  auto dirs = fibonacci_directions(300, true);
  ASSERT_EQ(dirs.size(), 300u);
  for (const auto& d : dirs) EXPECT_GE(d.z(), 0.0);
}

TEST(WrapAngle, Range) {
  EXPECT_NEAR(wrap_angle(0.3), 0.3, 1e-15);
  EXPECT_NEAR(wrap_angle(2.0 * M_PI + 0.3), 0.3, 1e-12);
  EXPECT_NEAR(wrap_angle(M_PI + 0.1), -M_PI + 0.1, 1e-12);
  EXPECT_NEAR(wrap_angle(-M_PI - 0.1), M_PI - 0.1, 1e-12);
}

TEST(AnyOrthogonal, OrthogonalUnit) {
  Eigen::Vector3d cases[] = {{1.0, 0.0, 0.0},
                             {0.0, 0.0, 1.0},
                             {0.3, -0.2, 0.9},
                             {-1.0, 1.0, 1.0}};
  for (const auto& v : cases) {
    Eigen::Vector3d t = any_orthogonal(v);
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    EXPECT_NEAR(t.dot(v), 0.0, 1e-12 * v.norm());
  }
}

TEST(SphereDistance, KnownAngles) {
  Eigen::Vector3d e1(1.0, 0.0, 0.0), e2(0.0, 1.0, 0.0);
  EXPECT_NEAR(sphere_distance(e1, e2), M_PI / 2.0, 1e-12);
  EXPECT_NEAR(sphere_distance(e1, e1), 0.0, 1e-12);
  EXPECT_NEAR(sphere_distance(e1, -e1), M_PI, 1e-12);
}

TEST(NeumaierSum, CompensatesCancellation) {
  NeumaierSum acc;
  acc.add(1e16);
  acc.add(1.0);
  acc.add(-1e16);
  EXPECT_EQ(acc.value(), 1.0);
}

}  // namespace
}  // namespace qcolloid
