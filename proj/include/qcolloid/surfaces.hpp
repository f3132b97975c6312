#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace qcolloid {

// All shapes sit in particle-radius units with the symmetry axis along e3.

struct Sphere {
  double R;
};

// Cylinder of length L capped by hemispheres of radius R.
struct Spherocylinder {
  double R;
  double L;
};

// Ring radius R, tube radius r, R > r > 0.
struct Torus {
  double R;
  double r;
};

// Axis-aligned, vertices (+-R, +-R, +-R); side length 2R. Not C^{1,1}.
struct Cube {
  double R;
};

// Cube of side 2R with edges and corners blended at radius eps < R/2:
// 6 flat faces, 12 quarter cylinders, 8 eighth spheres.
struct RoundedCube {
  double R;
  double eps;
};

using AnalyticShape =
    std::variant<Sphere, Spherocylinder, Torus, Cube, RoundedCube>;

// Throws DegenerateParameter when sizes are out of range.
void validate_shape(const AnalyticShape& shape);

std::string shape_name(const AnalyticShape& shape);

double area(const AnalyticShape& shape);

// Largest principal curvature magnitude. Throws NotC11 for Cube.
double max_curvature(const AnalyticShape& shape);

// Safe tube radius 1/(2 max_curvature).
double rolling_radius(const AnalyticShape& shape);

int euler_characteristic(const AnalyticShape& shape);

// Exact area of the symmetric difference. Supported pair: Cube(R) with
// RoundedCube(R, eps), either order. Throws UnsupportedPair otherwise.
double symmetric_difference_area(const AnalyticShape& a,
                                 const AnalyticShape& b);

// ----- surfaces of revolution -----

// Planar profile piece in the (x1, x3) half-plane, parameterized on [0, 1]
// with constant speed (lines and circular arcs only).
struct ProfileSegment {
  enum class Kind { line, arc };

  static ProfileSegment line(const Eigen::Vector2d& a,
                             const Eigen::Vector2d& b);
  static ProfileSegment arc(const Eigen::Vector2d& center, double radius,
                            double ang0, double ang1);

  Eigen::Vector2d point(double u) const;
  Eigen::Vector2d derivative(double u) const;
  double length() const;

  Kind kind = Kind::line;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  double ang0 = 0.0;
  double ang1 = 0.0;
};

struct RevolutionSurface {
  std::vector<ProfileSegment> parts;
  bool closed = false;       // profile loop (torus-like) vs axis-to-axis chain
  double orientation = 1.0;  // sign making profile normals point outward
  std::vector<double> cum;   // cumulative arc-length fractions, size parts+1

  // Global s in [0, 1] proportional to profile arc length.
  void locate(double s, int* part, double* u) const;
  Eigen::Vector3d point(double s, double theta) const;
  double total_length() const;
};

// Validates the chain (gamma1 >= 0; closed loop, or both endpoints on the
// axis), fixes the outward orientation, precomputes arc-length fractions.
RevolutionSurface make_revolution(std::vector<ProfileSegment> parts,
                                  bool closed);

// Sphere, Spherocylinder, Torus. Throws NotC11 for Cube and InputError for
// shapes that are not surfaces of revolution.
RevolutionSurface revolution_profile(const AnalyticShape& shape);

// Outward unit normal: profile normal (-gamma3', gamma1')/|gamma'| revolved
// by theta. Throws DegenerateParameter where |gamma'| = 0.
Eigen::Vector3d revolution_normal(const RevolutionSurface& surface, double s,
                                  double theta);

// ----- closest-point queries -----

struct SurfacePoint {
  Eigen::Vector3d p;
  Eigen::Vector3d nu;  // outward unit normal at p
};

SurfacePoint closest_surface_point(const AnalyticShape& shape,
                                   const Eigen::Vector3d& x);

inline Eigen::Vector3d outward_normal(const AnalyticShape& shape,
                                      const Eigen::Vector3d& p) {
  return closest_surface_point(shape, p).nu;
}

// ----- quadrature sampling -----

struct QuadratureSample {
  Eigen::Vector3d x;
  Eigen::Vector3d nu;
  double w;  // area weight
};

// resolution >= 8. Revolution shapes: Gauss-Legendre along the profile per
// segment x uniform midpoints in theta. Cube and RoundedCube: per-patch
// rules (faces, quarter cylinders, eighth spheres) with exact patch areas.
std::vector<QuadratureSample> sample(const AnalyticShape& shape,
                                     int resolution);

// Same rule rigidly rotated: for the sphere the polar axis is taken to
// `align`; for other revolution shapes the sample azimuth is aligned to the
// azimuth of `align` (axis fixed). Cube family is returned unrotated. Used
// where cancellation symmetric about `align` matters.
std::vector<QuadratureSample> sample_aligned(const AnalyticShape& shape,
                                             int resolution,
                                             const Eigen::Vector3d& align);

}  // namespace qcolloid
