#include "qcolloid/qtensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qcolloid/numerics.hpp"

namespace qcolloid {
namespace {

Eigen::Matrix3d q_infinity() {
  return uniaxial<double>(Eigen::Vector3d(0.0, 0.0, 1.0));
}

Eigen::Matrix3d random_traceless(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::Matrix<double, 5, 1> c;
  for (int i = 0; i < 5; ++i) c[i] = g(rng);
  return from_components(c);
}

TEST(BulkPotential, FrozenValues) {
  Eigen::Matrix3d Qinf = q_infinity();
  EXPECT_NEAR(bulk_potential(Qinf), 0.0, 1e-15);
  EXPECT_NEAR(bulk_potential(Eigen::Matrix3d::Zero().eval()), 2.0 / 9.0,
              1e-15);
  EXPECT_NEAR(bulk_potential((2.0 * Qinf).eval()), 22.0 / 9.0, 1e-14);
}

TEST(BulkPotential, ZeroExactlyOnUnitUniaxials) {
  std::mt19937_64 rng(7);
  for (const auto& n : fibonacci_directions(64, false)) {
    EXPECT_NEAR(bulk_potential(uniaxial<double>(n)), 0.0, 1e-14);
    Eigen::Matrix3d Q = random_traceless(rng, 0.5);
    if (dist_to_N(Q) > 1e-3) {
      EXPECT_GT(bulk_potential(Q), 0.0);
    }
  }
}

TEST(BulkPotential, AcceptsExpressionsAndFloat) {
  Eigen::Vector3f e3f(0.0f, 0.0f, 1.0f);
  Mat3T<float> Qf = uniaxial<float>(e3f);
  EXPECT_NEAR(bulk_potential(Qf), 0.0f, 1e-6f);
  Eigen::Matrix3d Qinf = q_infinity();
  EXPECT_NEAR(bulk_potential(Qinf + Qinf), 22.0 / 9.0, 1e-14);
}

TEST(FieldPotential, FrozenValues) {
  EXPECT_EQ(field_potential(Eigen::Matrix3d::Zero().eval()), 0.0);
  EXPECT_NEAR(field_potential(q_infinity()), 0.0, 1e-15);
  Eigen::Matrix3d Q1 = uniaxial<double>(Eigen::Vector3d(1.0, 0.0, 0.0));
  EXPECT_NEAR(field_potential(Q1), std::sqrt(1.5), 1e-14);
}

TEST(FieldPotential, VanishesOnTheAlignedRay) {
  Eigen::Matrix3d Qinf = q_infinity();
  for (int k = 0; k <= 60; ++k) {
    double s = 0.05 * k;
    double g = field_potential((s * Qinf).eval());
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1e-15) << "s = " << s;
  }
}

TEST(FieldPotential, ProjectionIdentity) {
  // g(P(Q)) = sqrt(3/2) (1 - n3^2) for the leading director n of Q.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    if (in_B(Q)) continue;
    UniaxialFrame f = decompose(Q);
    double expected = std::sqrt(1.5) * (1.0 - f.n.z() * f.n.z());
    EXPECT_NEAR(field_potential(project_uniaxial(Q)), expected, 1e-12);
  }
}

TEST(Spectral, RoundTripAndOrder) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    Spectral sp = spectral(Q);
    EXPECT_GE(sp.lambda[0], sp.lambda[1]);
    EXPECT_GE(sp.lambda[1], sp.lambda[2]);
    Eigen::Matrix3d rebuilt =
        sp.vectors * sp.lambda.asDiagonal() * sp.vectors.transpose();
    EXPECT_LT((rebuilt - Q).norm(), 1e-12 * std::max(1.0, Q.norm()));
    Eigen::Matrix3d gram = sp.vectors.transpose() * sp.vectors;
    EXPECT_LT((gram - Eigen::Matrix3d::Identity()).norm(), 1e-12);
  }
}

TEST(InB, DetectsDegeneracy) {
  EXPECT_TRUE(in_B(Eigen::Matrix3d::Zero()));
  Eigen::Vector3d n(0.0, 0.0, 1.0), m(1.0, 0.0, 0.0);
  // Oblate combination: top two eigenvalues coincide.
  Eigen::Matrix3d oblate = uniaxial<double>(n) + uniaxial<double>(m);
  EXPECT_TRUE(in_B(oblate));
  EXPECT_FALSE(in_B(q_infinity()));
}

TEST(Decompose, RoundTripAndErrors) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    if (in_B(Q)) continue;
    UniaxialFrame f = decompose(Q);
    EXPECT_GE(f.t, 0.0);
    EXPECT_LT(f.t, 1.0);
    Eigen::Matrix3d rebuilt =
        f.s * (uniaxial<double>(f.n) + f.t * uniaxial<double>(f.m));
    EXPECT_LT((rebuilt - Q).norm(), 1e-12 * std::max(1.0, Q.norm()));
  }
  EXPECT_THROW(decompose(Eigen::Matrix3d::Zero()), DegenerateTensor);
  Eigen::Matrix3d oblate =
      uniaxial<double>(Eigen::Vector3d(0.0, 0.0, 1.0)) +
      uniaxial<double>(Eigen::Vector3d(1.0, 0.0, 0.0));
  EXPECT_THROW(decompose(oblate), DegenerateTensor);
}

TEST(ProjectUniaxial, IdempotentAndClosest) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    if (in_B(Q)) continue;
    Eigen::Matrix3d P = project_uniaxial(Q);
    EXPECT_LT((project_uniaxial(P) - P).norm(), 1e-12);
    EXPECT_NEAR(dist_to_N(P), 0.0, 1e-12);
    EXPECT_NEAR((Q - P).norm(), dist_to_N(Q), 1e-10);
  }
}

TEST(DistToN, MatchesSampledOracle) {
  std::mt19937_64 rng(53);
  auto dirs = fibonacci_directions(10000, false);
  for (int i = 0; i < 20; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    double sampled = 1e300;
    for (const auto& n : dirs)
      sampled = std::min(sampled, (Q - uniaxial<double>(n)).norm());
    double d = dist_to_N(Q);
    EXPECT_LE(d, sampled + 1e-12);
    EXPECT_LE(sampled - d, 1e-3);
  }
}

TEST(Components, RoundTrip) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    Eigen::Matrix3d Q = random_traceless(rng, 1.0);
    Eigen::Matrix3d back = from_components(to_components(Q));
    EXPECT_EQ((back - Q).norm(), 0.0);
    EXPECT_NEAR(back.trace(), 0.0, 1e-15);
    EXPECT_LT((back - back.transpose()).norm(), 1e-15);
  }
}

TEST(LipschitzG, PositiveAndMonotone) {
  double a = lipschitz_g_estimate(0.1, 2000);
  double b = lipschitz_g_estimate(0.3, 2000);
  EXPECT_GT(a, 0.0);
  EXPECT_GE(b, a);
  EXPECT_EQ(lipschitz_g_estimate(0.1, 2000), a);
}

}  // namespace
}  // namespace qcolloid
