#include "qcolloid/elliptic.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {
namespace {

double simpson_E(double m) {
  return adaptive_simpson(
      [m](double t) {
        double s = std::sin(t);
        return std::sqrt(1.0 + m * s * s);
      },
      0.0, M_PI / 2.0, 1e-13);
}

TEST(Carlson, SymmetricSpecialValues) {
  EXPECT_NEAR(carlson_rf(1.0, 1.0, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(carlson_rf(0.0, 1.0, 1.0), M_PI / 2.0, 1e-12);
  EXPECT_NEAR(carlson_rd(1.0, 1.0, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(carlson_rd(0.0, 1.0, 1.0), 3.0 * M_PI / 4.0, 1e-12);
}

TEST(Carlson, DomainGuards) {
  EXPECT_THROW(carlson_rf(-1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(carlson_rd(1.0, 1.0, 0.0), DomainError);
}

TEST(LegendreE, Endpoints) {
  EXPECT_NEAR(legendre_E(0.0), M_PI / 2.0, 1e-14);
  EXPECT_NEAR(legendre_E(1.0), 1.0, 1e-12);
}

TEST(LegendreE, AgainstQuadrature) {
  for (double m : {0.1, 0.5, 0.9, 0.99})
    EXPECT_NEAR(legendre_E(m), simpson_E(-m), 1e-10) << "m = " << m;
}

TEST(LegendreE, Domain) {
  EXPECT_THROW(legendre_E(-0.1), DomainError);
  EXPECT_THROW(legendre_E(1.1), DomainError);
}

TEST(CompleteE, FrozenValues) {
  EXPECT_NEAR(complete_elliptic_E(0.0), M_PI / 2.0, 1e-14);
  EXPECT_NEAR(complete_elliptic_E(-1.0), 1.0, 1e-12);
  EXPECT_NEAR(complete_elliptic_E(-0.5), 1.3506438810476755, 1e-12);
}

TEST(CompleteE, AgainstQuadrature) {
  for (double m : {-1.0, -0.7, -0.3, 0.0, 0.5, 2.0, 10.0})
    EXPECT_NEAR(complete_elliptic_E(m), simpson_E(m), 1e-10) << "m = " << m;
}

TEST(CompleteE, Domain) {
  EXPECT_THROW(complete_elliptic_E(-1.0000001), DomainError);
  EXPECT_NO_THROW(complete_elliptic_E(1e6));
}

}  // namespace
}  // namespace qcolloid
