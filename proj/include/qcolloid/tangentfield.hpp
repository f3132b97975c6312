#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "qcolloid/geodesic.hpp"
#include "qcolloid/surfaces.hpp"

namespace qcolloid {

// Tangential projection of the far-field direction, normalized. Throws
// DegenerateNormal where nu is within 1e-12 of +-n.
Eigen::Vector3d vstar(const Eigen::Vector3d& nu, const Eigen::Vector3d& n);

// Neighborhood of one connected component of the set {nu = +-n}.
// kind "point"   : isolated locus point, region is the geodesic ball of
//                  radius delta around center
// kind "segment" : locus is a straight segment (cylinder ridge), region is
//                  a stadium of half-width delta
// kind "face"    : locus is a flat face, region reaches delta past its rim
// kind "band"    : locus is a circle (torus top/bottom), region is the
//                  annulus of half-width delta, bounded by loop and loop2
struct Region {
  std::string kind;
  int side = 1;  // +1 where nu = +n on the locus
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> loop;
  std::vector<Eigen::Vector3d> loop2;
  double delta = 0.0;
  // When dist_scale > 0 the geodesic distance to the locus equals
  // dist_scale * angle(nu, dist_dir). Holds for all kinds except the
  // torus cases, which use chart or angular coordinates instead.
  double dist_scale = 0.0;
  Eigen::Vector3d dist_dir = Eigen::Vector3d::Zero();
};

std::vector<Region> degenerate_regions(const AnalyticShape& shape,
                                       const Eigen::Vector3d& n, double delta);

struct DefectRecord {
  Eigen::Vector3d p;
  int degree;
  double patch_radius;
};

struct TangentField {
  std::function<Eigen::Vector3d(const SurfacePoint&)> eval;
  std::vector<DefectRecord> defects;
};

// The bare projected field v*; defect list empty.
TangentField vstar_field(const Eigen::Vector3d& n);

// Winding number of the field around a closed loop, computed from pairwise
// parallel-transport increments plus the signed spherical area of the
// Gauss-map image. Refines the loop up to four doublings before giving up
// with NonConvergedDegree.
int loop_degree(const SurfaceQuery& query, std::vector<Eigen::Vector3d> loop,
                const TangentField& field);
int loop_degree(const AnalyticShape& shape, std::vector<Eigen::Vector3d> loop,
                const TangentField& field);

// Local model field with one defect of the given sign at p, defined on the
// geodesic ball of radius delta_prime.
TangentField defect_profile(const AnalyticShape& shape,
                            const Eigen::Vector3d& p, double delta_prime,
                            int sign);

// Global tangential unit field equal to v* away from the degenerate
// regions, interpolated inward to one defect per region (none for bands).
TangentField build_boundary_field(const AnalyticShape& shape,
                                  const Eigen::Vector3d& n, double delta);

// Quadrature of the anchoring density 1 - |v . n| over the samples,
// scaled by 24^(1/4). Samples within 1e-12 of a defect are skipped.
double field_surface_energy(const std::vector<QuadratureSample>& samples,
                            const TangentField& field,
                            const Eigen::Vector3d& n);

}  // namespace qcolloid
