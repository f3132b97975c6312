#include "qcolloid/surfaces.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"

namespace qcolloid {
namespace {

TEST(ValidateShape, AcceptsSaneRejectsDegenerate) {
  EXPECT_NO_THROW(validate_shape(Sphere{1.0}));
  EXPECT_NO_THROW(validate_shape(Spherocylinder{1.0, 2.0}));
  EXPECT_NO_THROW(validate_shape(Torus{2.0, 1.0}));
  EXPECT_NO_THROW(validate_shape(Cube{1.0}));
  EXPECT_NO_THROW(validate_shape(RoundedCube{1.0, 0.2}));

  EXPECT_THROW(validate_shape(Sphere{-1.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(Sphere{0.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(Spherocylinder{1.0, 0.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(Torus{1.0, 2.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(Torus{2.0, 2.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(Cube{0.0}), DegenerateParameter);
  EXPECT_THROW(validate_shape(RoundedCube{1.0, 0.6}), DegenerateParameter);
  EXPECT_THROW(validate_shape(RoundedCube{1.0, 0.5}), DegenerateParameter);
  EXPECT_THROW(validate_shape(RoundedCube{1.0, 0.0}), DegenerateParameter);
}

TEST(ShapeFacts, AreaFormulas) {
  EXPECT_NEAR(area(Sphere{2.0}), 16.0 * kPi, 1e-12);
  EXPECT_NEAR(area(Spherocylinder{1.0, 2.0}), 4.0 * kPi + 4.0 * kPi, 1e-12);
  EXPECT_NEAR(area(Torus{2.0, 1.0}), 8.0 * kPi * kPi, 1e-12);
  EXPECT_NEAR(area(Cube{1.5}), 24.0 * 2.25, 1e-12);
  double a = 1.5 - 0.3;
  EXPECT_NEAR(area(RoundedCube{1.5, 0.3}),
              24.0 * a * a + 12.0 * kPi * 0.3 * a + 4.0 * kPi * 0.09, 1e-12);
}

TEST(ShapeFacts, CurvatureAndRollingRadius) {
  EXPECT_NEAR(max_curvature(Sphere{2.0}), 0.5, 1e-15);
  EXPECT_NEAR(max_curvature(Spherocylinder{0.5, 3.0}), 2.0, 1e-15);
  EXPECT_NEAR(max_curvature(Torus{3.0, 1.0}), 1.0, 1e-15);
  // Tube curvature loses to the inner-ring curvature when r > R - r.
  EXPECT_NEAR(max_curvature(Torus{3.0, 2.0}), 1.0, 1e-15);
  EXPECT_NEAR(max_curvature(RoundedCube{1.0, 0.25}), 4.0, 1e-15);
  EXPECT_THROW(max_curvature(Cube{1.0}), NotC11);

  EXPECT_NEAR(rolling_radius(Sphere{2.0}), 1.0, 1e-15);
  EXPECT_NEAR(rolling_radius(Torus{3.0, 1.0}), 0.5, 1e-15);
}

TEST(ShapeFacts, EulerCharacteristic) {
  EXPECT_EQ(euler_characteristic(Sphere{1.0}), 2);
  EXPECT_EQ(euler_characteristic(Spherocylinder{1.0, 1.0}), 2);
  EXPECT_EQ(euler_characteristic(Torus{2.0, 1.0}), 0);
  EXPECT_EQ(euler_characteristic(Cube{1.0}), 2);
  EXPECT_EQ(euler_characteristic(RoundedCube{1.0, 0.2}), 2);
}

TEST(ShapeFacts, ShapeNames) {
  EXPECT_EQ(shape_name(Sphere{1.0}), "sphere");
  EXPECT_EQ(shape_name(Spherocylinder{1.0, 1.0}), "spherocylinder");
  EXPECT_EQ(shape_name(Torus{2.0, 1.0}), "torus");
  EXPECT_EQ(shape_name(Cube{1.0}), "cube");
  EXPECT_EQ(shape_name(RoundedCube{1.0, 0.2}), "roundedcube");
}

TEST(SymmetricDifference, MatchesAreaIdentity) {
  Cube cube{1.5};
  RoundedCube rc{1.5, 0.3};
  double h = 1.5 - 0.3;
  double expected = area(cube) + area(rc) - 48.0 * h * h;
  EXPECT_NEAR(symmetric_difference_area(cube, rc), expected, 1e-10);
  EXPECT_NEAR(symmetric_difference_area(rc, cube), expected, 1e-10);
}

TEST(SymmetricDifference, RejectsOtherPairs) {
  EXPECT_THROW(symmetric_difference_area(Sphere{1.0}, Cube{1.0}),
               UnsupportedPair);
  EXPECT_THROW(symmetric_difference_area(Cube{1.0}, Cube{1.0}),
               UnsupportedPair);
  // Same pair kinds but mismatched outer size.
  EXPECT_THROW(
      symmetric_difference_area(Cube{1.0}, RoundedCube{1.0 + 1e-6, 0.2}),
      UnsupportedPair);
}

TEST(ProfileSegmentTest, LineAndArcGeometry) {
  auto ln = ProfileSegment::line({0.0, 0.0}, {1.0, 1.0});
  EXPECT_NEAR(ln.length(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR((ln.point(0.5) - Eigen::Vector2d(0.5, 0.5)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((ln.derivative(0.3) - Eigen::Vector2d(1.0, 1.0)).norm(), 0.0,
              1e-15);

  auto ar = ProfileSegment::arc({0.0, 0.0}, 1.0, 0.0, 0.5 * kPi);
  EXPECT_NEAR(ar.length(), 0.5 * kPi, 1e-15);
  EXPECT_NEAR((ar.point(0.0) - Eigen::Vector2d(1.0, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((ar.point(1.0) - Eigen::Vector2d(0.0, 1.0)).norm(), 0.0, 1e-15);
  // Constant speed: |derivative| = arc length everywhere.
  EXPECT_NEAR(ar.derivative(0.7).norm(), 0.5 * kPi, 1e-13);

  EXPECT_THROW(ProfileSegment::line({1.0, 2.0}, {1.0, 2.0}), InputError);
  EXPECT_THROW(ProfileSegment::arc({0.0, 0.0}, 0.0, 0.0, 1.0), InputError);
  EXPECT_THROW(ProfileSegment::arc({0.0, 0.0}, 1.0, 1.0, 1.0), InputError);
}

TEST(MakeRevolution, ValidatesChains) {
  EXPECT_THROW(make_revolution({}, false), InputError);

  // Gap between consecutive segments.
  std::vector<ProfileSegment> gap = {
      ProfileSegment::line({0.0, 0.0}, {1.0, 0.0}),
      ProfileSegment::line({2.0, 0.0}, {0.0, 3.0}),
  };
  EXPECT_THROW(make_revolution(gap, false), InputError);

  // Open chain must start and end on the axis.
  std::vector<ProfileSegment> off_axis = {
      ProfileSegment::line({0.0, 0.0}, {1.0, 1.0}),
  };
  EXPECT_THROW(make_revolution(off_axis, false), InputError);

  // Closed flag with a non-closing loop.
  std::vector<ProfileSegment> not_closed = {
      ProfileSegment::line({1.0, 0.0}, {2.0, 0.0}),
      ProfileSegment::line({2.0, 0.0}, {2.0, 1.0}),
  };
  EXPECT_THROW(make_revolution(not_closed, true), InputError);

  // Profile dipping to negative gamma1.
  std::vector<ProfileSegment> crossing = {
      ProfileSegment::line({0.0, 0.0}, {-0.2, 1.0}),
      ProfileSegment::line({-0.2, 1.0}, {0.0, 2.0}),
  };
  EXPECT_THROW(make_revolution(crossing, false), InputError);
}

TEST(RevolutionProfile, KnownLengthsAndRejections) {
  RevolutionSurface sph = revolution_profile(Sphere{2.0});
  EXPECT_FALSE(sph.closed);
  EXPECT_NEAR(sph.total_length(), 2.0 * kPi, 1e-12);

  RevolutionSurface cap = revolution_profile(Spherocylinder{1.0, 2.0});
  EXPECT_FALSE(cap.closed);
  EXPECT_NEAR(cap.total_length(), kPi + 2.0, 1e-12);

  RevolutionSurface tor = revolution_profile(Torus{2.0, 1.0});
  EXPECT_TRUE(tor.closed);
  EXPECT_NEAR(tor.total_length(), 2.0 * kPi, 1e-12);

  EXPECT_THROW(revolution_profile(Cube{1.0}), NotC11);
  EXPECT_THROW(revolution_profile(RoundedCube{1.0, 0.2}), InputError);
}

TEST(RevolutionProfile, PointsLieOnSurfaceWithOutwardNormals) {
  AnalyticShape shapes[] = {Sphere{2.0}, Spherocylinder{1.0, 2.0},
                            Torus{2.0, 1.0}};
  for (const auto& shape : shapes) {
    RevolutionSurface surf = revolution_profile(shape);
    for (double s : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      for (double theta : {0.1, 2.0, 4.5}) {
        Eigen::Vector3d x = surf.point(s, theta);
        SurfacePoint q = closest_surface_point(shape, x);
        EXPECT_NEAR((q.p - x).norm(), 0.0, 1e-9);
        Eigen::Vector3d nu = revolution_normal(surf, s, theta);
        EXPECT_NEAR(nu.norm(), 1.0, 1e-12);
        EXPECT_NEAR((nu - q.nu).norm(), 0.0, 1e-9);
      }
    }
  }
}

TEST(ClosestPoint, KnownProjections) {
  SurfacePoint s = closest_surface_point(Sphere{1.0}, {2.0, 0.0, 0.0});
  EXPECT_NEAR((s.p - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((s.nu - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-14);

  // Side of the cylinder, then a cap.
  SurfacePoint c =
      closest_surface_point(Spherocylinder{1.0, 2.0}, {1.5, 0.0, 0.5});
  EXPECT_NEAR((c.p - Eigen::Vector3d(1, 0, 0.5)).norm(), 0.0, 1e-14);
  SurfacePoint t =
      closest_surface_point(Spherocylinder{1.0, 2.0}, {0.0, 0.0, 3.0});
  EXPECT_NEAR((t.p - Eigen::Vector3d(0, 0, 2)).norm(), 0.0, 1e-14);

  SurfacePoint u = closest_surface_point(Torus{2.0, 1.0}, {3.5, 0.0, 0.0});
  EXPECT_NEAR((u.p - Eigen::Vector3d(3, 0, 0)).norm(), 0.0, 1e-14);

  // Cube face, then past a corner.
  SurfacePoint f = closest_surface_point(Cube{1.0}, {2.0, 0.5, -0.3});
  EXPECT_NEAR((f.p - Eigen::Vector3d(1, 0.5, -0.3)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((f.nu - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-14);
  SurfacePoint k = closest_surface_point(Cube{1.0}, {2.0, 2.0, 2.0});
  EXPECT_NEAR((k.p - Eigen::Vector3d(1, 1, 1)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((k.nu - Eigen::Vector3d(1, 1, 1).normalized()).norm(), 0.0,
              1e-14);

  // Rounded cube corner cap.
  RoundedCube rc{1.0, 0.2};
  SurfacePoint r = closest_surface_point(rc, {2.0, 2.0, 2.0});
  Eigen::Vector3d dir = Eigen::Vector3d(1, 1, 1).normalized();
  EXPECT_NEAR((r.nu - dir).norm(), 0.0, 1e-14);
  EXPECT_NEAR((r.p - (Eigen::Vector3d(0.8, 0.8, 0.8) + 0.2 * dir)).norm(), 0.0,
              1e-14);

  // Interior points still project to the boundary.
  SurfacePoint in = closest_surface_point(Cube{1.0}, {0.9, 0.1, 0.0});
  EXPECT_NEAR((in.p - Eigen::Vector3d(1, 0.1, 0.0)).norm(), 0.0, 1e-14);
}

TEST(ClosestPoint, Idempotent) {
  AnalyticShape shapes[] = {Sphere{1.5}, Spherocylinder{1.0, 2.0},
                            Torus{2.0, 0.7}, Cube{1.0}, RoundedCube{1.0, 0.2}};
  Eigen::Vector3d probes[] = {{2.3, 0.4, 1.7}, {-0.2, 1.9, -2.5},
                              {0.05, -0.02, 0.01}};
  for (const auto& shape : shapes) {
    for (const auto& x : probes) {
      SurfacePoint q = closest_surface_point(shape, x);
      SurfacePoint q2 = closest_surface_point(shape, q.p);
      EXPECT_NEAR((q2.p - q.p).norm(), 0.0, 1e-10);
      EXPECT_NEAR(q.nu.norm(), 1.0, 1e-12);
    }
  }
}

double weight_sum(const std::vector<QuadratureSample>& samples) {
  double s = 0.0;
  for (const auto& q : samples) s += q.w;
  return s;
}

TEST(Sample, WeightsSumToAreaAndPointsLieOnSurface) {
  AnalyticShape shapes[] = {Sphere{1.5}, Spherocylinder{1.0, 2.0},
                            Torus{2.0, 0.7}, Cube{1.0}, RoundedCube{1.0, 0.2}};
  for (const auto& shape : shapes) {
    auto samples = sample(shape, 32);
    ASSERT_FALSE(samples.empty());
    EXPECT_NEAR(weight_sum(samples) / area(shape), 1.0, 1e-9)
        << shape_name(shape);
    for (size_t i = 0; i < samples.size(); i += 97) {
      const auto& q = samples[i];
      EXPECT_GT(q.w, 0.0);
      EXPECT_NEAR(q.nu.norm(), 1.0, 1e-12);
      SurfacePoint cp = closest_surface_point(shape, q.x);
      EXPECT_NEAR((cp.p - q.x).norm(), 0.0, 1e-9);
      EXPECT_NEAR((cp.nu - q.nu).norm(), 0.0, 1e-9);
    }
  }
}

TEST(Sample, RejectsCoarseResolution) {
  EXPECT_THROW(sample(Sphere{1.0}, 7), InputError);
  EXPECT_NO_THROW(sample(Sphere{1.0}, 8));
}

TEST(SampleAligned, SameTotalsRotatedRule) {
  Eigen::Vector3d align = Eigen::Vector3d(0.3, -0.4, 0.5).normalized();
  auto plain = sample(Sphere{2.0}, 16);
  auto turned = sample_aligned(Sphere{2.0}, 16, align);
  ASSERT_EQ(plain.size(), turned.size());
  EXPECT_NEAR(weight_sum(turned), weight_sum(plain), 1e-10);
  for (size_t i = 0; i < turned.size(); i += 53) {
    EXPECT_NEAR(turned[i].x.norm(), 2.0, 1e-12);
    EXPECT_NEAR((turned[i].nu - turned[i].x / 2.0).norm(), 0.0, 1e-12);
  }

  auto tor = sample_aligned(Torus{2.0, 0.7}, 16, align);
  EXPECT_NEAR(weight_sum(tor) / area(Torus{2.0, 0.7}), 1.0, 1e-9);
  for (size_t i = 0; i < tor.size(); i += 101) {
    SurfacePoint cp = closest_surface_point(Torus{2.0, 0.7}, tor[i].x);
    EXPECT_NEAR((cp.p - tor[i].x).norm(), 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace qcolloid
