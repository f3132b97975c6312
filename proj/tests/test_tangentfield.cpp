#include "qcolloid/tangentfield.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "qcolloid/constants.hpp"
#include "qcolloid/energy.hpp"
#include "qcolloid/errors.hpp"

namespace qcolloid {
namespace {

TEST(VStar, ProjectsAndNormalizes) {
  Eigen::Vector3d n(0, 0, 1);
  Eigen::Vector3d nu = Eigen::Vector3d(1, 0, 1).normalized();
  Eigen::Vector3d v = vstar(nu, n);
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  EXPECT_NEAR(v.dot(nu), 0.0, 1e-14);
  // v* lies in the (nu, n) plane on the n side.
  EXPECT_GT(v.dot(n), 0.0);
  EXPECT_NEAR(v[1], 0.0, 1e-14);

  EXPECT_THROW(vstar(n, n), DegenerateNormal);
  EXPECT_THROW(vstar(-n, n), DegenerateNormal);
}

std::map<std::string, int> region_census(const AnalyticShape& shape,
                                         const Eigen::Vector3d& n,
                                         double delta) {
  std::map<std::string, int> counts;
  for (const auto& r : degenerate_regions(shape, n, delta)) ++counts[r.kind];
  return counts;
}

TEST(DegenerateRegions, CatalogByShapeAndOrientation) {
  Eigen::Vector3d e1(1, 0, 0), e3(0, 0, 1);

  auto sphere = region_census(Sphere{1.0}, e3, 0.3);
  EXPECT_EQ(sphere["point"], 2);
  EXPECT_EQ(sphere.size(), 1u);

  auto capsule_axial = region_census(Spherocylinder{1.0, 2.0}, e3, 0.3);
  EXPECT_EQ(capsule_axial["point"], 2);
  EXPECT_EQ(capsule_axial.size(), 1u);

  auto capsule_side = region_census(Spherocylinder{1.0, 2.0}, e1, 0.3);
  EXPECT_EQ(capsule_side["segment"], 2);
  EXPECT_EQ(capsule_side.size(), 1u);

  auto torus_axial = region_census(Torus{2.0, 1.0}, e3, 0.3);
  EXPECT_EQ(torus_axial["band"], 2);
  EXPECT_EQ(torus_axial.size(), 1u);

  auto torus_tilted =
      region_census(Torus{2.0, 1.0}, Eigen::Vector3d(0.5, 0.0, std::sqrt(0.75)),
                    0.2);
  EXPECT_EQ(torus_tilted["point"], 4);
  EXPECT_EQ(torus_tilted.size(), 1u);

  auto rc_axial = region_census(RoundedCube{1.0, 0.1}, e3, 0.05);
  EXPECT_EQ(rc_axial["face"], 2);
  EXPECT_EQ(rc_axial.size(), 1u);

  auto rc_diag =
      region_census(RoundedCube{1.0, 0.1},
                    Eigen::Vector3d(1, 1, 1).normalized(), 0.05);
  EXPECT_EQ(rc_diag["point"], 2);
  EXPECT_EQ(rc_diag.size(), 1u);
}

TEST(DegenerateRegions, SidesAndCenters) {
  Eigen::Vector3d e3(0, 0, 1);
  auto regions = degenerate_regions(Sphere{1.0}, e3, 0.3);
  ASSERT_EQ(regions.size(), 2u);
  int plus = 0, minus = 0;
  for (const auto& r : regions) {
    EXPECT_NEAR(std::abs(r.center[2]), 1.0, 1e-12);
    EXPECT_FALSE(r.loop.empty());
    (r.side > 0 ? plus : minus)++;
  }
  EXPECT_EQ(plus, 1);
  EXPECT_EQ(minus, 1);
}

TEST(DegenerateRegions, DeltaCap) {
  EXPECT_THROW(degenerate_regions(Sphere{1.0}, Eigen::Vector3d(0, 0, 1), 2.0),
               InputError);
  EXPECT_THROW(degenerate_regions(Sphere{1.0}, Eigen::Vector3d(0, 0, 1), 0.0),
               InputError);
}

TEST(LoopDegree, VStarWindsOnceAroundSpherePoles) {
  Sphere s{1.0};
  Eigen::Vector3d n(0, 0, 1);
  TangentField raw = vstar_field(n);
  // Latitude circles, positively oriented around the pole they enclose
  // (counterclockwise seen from outside along the pole's normal).
  for (double z0 : {0.8, -0.8}) {
    std::vector<Eigen::Vector3d> loop;
    double rho = std::sqrt(1.0 - z0 * z0);
    double dir = z0 > 0.0 ? 1.0 : -1.0;
    for (int k = 0; k < 96; ++k) {
      double t = dir * 2.0 * kPi * k / 96;
      loop.emplace_back(rho * std::cos(t), rho * std::sin(t), z0);
    }
    EXPECT_EQ(loop_degree(s, loop, raw), 1) << "z0 = " << z0;
  }
}

TEST(LoopDegree, DefectProfileMatchesItsSign) {
  Sphere s{1.0};
  for (int sign : {1, -1}) {
    Eigen::Vector3d p(0, 0, 1);
    TangentField local = defect_profile(s, p, 0.5, sign);
    std::vector<Eigen::Vector3d> loop;
    double z0 = std::cos(0.25);
    double rho = std::sin(0.25);
    for (int k = 0; k < 96; ++k) {
      double t = 2.0 * kPi * k / 96;
      loop.emplace_back(rho * std::cos(t), rho * std::sin(t), z0);
    }
    EXPECT_EQ(loop_degree(s, loop, local), sign);
  }
}

struct FieldCheck {
  double max_norm_err = 0.0;
  double max_tangent_err = 0.0;
  int degree_sum = 0;
};

FieldCheck check_field(const AnalyticShape& shape, const Eigen::Vector3d& n,
                       double delta) {
  TangentField field = build_boundary_field(shape, n, delta);
  FieldCheck out;
  for (const auto& d : field.defects) out.degree_sum += d.degree;
  for (const auto& s : sample(shape, 24)) {
    bool near_defect = false;
    for (const auto& d : field.defects)
      if ((s.x - d.p).norm() < 1e-6) near_defect = true;
    if (near_defect) continue;
    Eigen::Vector3d v = field.eval({s.x, s.nu});
    out.max_norm_err = std::max(out.max_norm_err, std::abs(v.norm() - 1.0));
    out.max_tangent_err =
        std::max(out.max_tangent_err, std::abs(v.dot(s.nu)));
  }
  return out;
}

TEST(BoundaryField, UnitTangentWithEulerDegreeOnSpheres) {
  Eigen::Vector3d n = Eigen::Vector3d(0.2, -0.1, 0.97).normalized();
  FieldCheck sphere = check_field(Sphere{1.0}, n, 0.4);
  EXPECT_LT(sphere.max_norm_err, 1e-8);
  EXPECT_LT(sphere.max_tangent_err, 1e-8);
  EXPECT_EQ(sphere.degree_sum, 2);

  FieldCheck capsule = check_field(Spherocylinder{1.0, 2.0},
                                   Eigen::Vector3d(0, 0, 1), 0.4);
  EXPECT_LT(capsule.max_norm_err, 1e-8);
  EXPECT_LT(capsule.max_tangent_err, 1e-8);
  EXPECT_EQ(capsule.degree_sum, 2);
}

TEST(BoundaryField, TorusBandsCarryNoDefects) {
  TangentField field =
      build_boundary_field(Torus{2.0, 1.0}, Eigen::Vector3d(0, 0, 1), 0.3);
  EXPECT_TRUE(field.defects.empty());
  FieldCheck t = check_field(Torus{2.0, 1.0}, Eigen::Vector3d(0, 0, 1), 0.3);
  EXPECT_LT(t.max_norm_err, 1e-8);
  EXPECT_LT(t.max_tangent_err, 1e-8);
  EXPECT_EQ(t.degree_sum, 0);
}

TEST(BoundaryField, EqualsProjectionAwayFromRegions) {
  Eigen::Vector3d n(0, 0, 1);
  Sphere s{1.0};
  TangentField field = build_boundary_field(s, n, 0.3);
  TangentField raw = vstar_field(n);
  // Equatorial belt points sit far outside both polar regions.
  for (double t : {0.0, 1.0, 2.5, 4.0, 5.5}) {
    Eigen::Vector3d x(std::cos(t), std::sin(t), 0.0);
    SurfacePoint sp{x, x};
    EXPECT_NEAR((field.eval(sp) - raw.eval(sp)).norm(), 0.0, 1e-12);
  }
}

TEST(BoundaryField, EnergyDominatesTheOrientationBound) {
  // |v . n| <= sqrt(1 - (nu . n)^2) for unit tangential v, so the field
  // energy can only exceed the orientation energy.
  struct Case {
    AnalyticShape shape;
    Eigen::Vector3d n;
    double delta;
  };
  const Case cases[] = {
      {Sphere{1.0}, Eigen::Vector3d(0, 0, 1), 0.4},
      {Spherocylinder{1.0, 2.0}, Eigen::Vector3d(0, 0, 1), 0.4},
      {Torus{2.0, 1.0}, Eigen::Vector3d(0, 0, 1), 0.3},
  };
  for (const auto& c : cases) {
    TangentField field = build_boundary_field(c.shape, c.n, c.delta);
    auto samples = sample(c.shape, 32);
    double ef = field_surface_energy(samples, field, c.n);
    double e0v = e0_quadrature(samples, c.n).value;
    EXPECT_GE(ef, e0v - 1e-8) << shape_name(c.shape);
    EXPECT_LT(ef, 10.0 * (1.0 + e0v)) << shape_name(c.shape);
  }
}

TEST(BoundaryField, DefectsSitInsideTheirRegions) {
  Eigen::Vector3d n = Eigen::Vector3d(0.5, 0.0, std::sqrt(0.75));
  Torus shape{2.0, 1.0};
  TangentField field = build_boundary_field(shape, n, 0.2);
  auto regions = degenerate_regions(shape, n, 0.2);
  ASSERT_EQ(field.defects.size(), 4u);
  EXPECT_EQ(regions.size(), 4u);
  int total = 0;
  for (const auto& d : field.defects) {
    total += d.degree;
    bool found = false;
    for (const auto& r : regions)
      if ((d.p - r.center).norm() < 1e-9) found = true;
    EXPECT_TRUE(found);
    SurfacePoint cp = closest_surface_point(shape, d.p);
    EXPECT_NEAR((cp.p - d.p).norm(), 0.0, 1e-9);
  }
  EXPECT_EQ(total, euler_characteristic(shape));
}

}  // namespace
}  // namespace qcolloid
