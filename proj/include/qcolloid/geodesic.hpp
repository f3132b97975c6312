#pragma once

#include <Eigen/Dense>

#include <functional>

#include "qcolloid/mesh.hpp"
#include "qcolloid/surfaces.hpp"

namespace qcolloid {

// Projection-based access to a surface. `project` maps any nearby ambient
// point to its closest surface point with outward normal. Spheres carry
// closed forms; meshes use a tangent-plane chart instead of integration.
struct SurfaceQuery {
  std::function<SurfacePoint(const Eigen::Vector3d&)> project;
  bool exact_sphere = false;
  Eigen::Vector3d sphere_center = Eigen::Vector3d::Zero();
  double sphere_radius = 0.0;
  bool flat_chart = false;
};

SurfaceQuery make_query(const AnalyticShape& shape);
// The mesh must outlive the query.
SurfaceQuery make_query(const TriMesh& mesh);

struct GeodesicEnd {
  Eigen::Vector3d x;   // endpoint on the surface
  Eigen::Vector3d u;   // unit tangent at x, the transported ray direction
  Eigen::Vector3d nu;  // outward normal at x
};

// Unit-speed geodesic from p along dir (unit tangent) for the given length.
// RK4 on (x, u) with projection cleanup after every step.
GeodesicEnd trace_geodesic(const SurfaceQuery& query, const Eigen::Vector3d& p,
                           const Eigen::Vector3d& dir, double length,
                           double step_hint);

// Exponential-map chart at a fixed point with frame (t1, t2 = nu x t1).
class ExpChart {
 public:
  ExpChart(const SurfaceQuery& query, const Eigen::Vector3d& p,
           double step_hint);

  const Eigen::Vector3d& p() const { return p_; }
  const Eigen::Vector3d& nu() const { return nu_; }
  const Eigen::Vector3d& t1() const { return t1_; }
  const Eigen::Vector3d& t2() const { return t2_; }

  GeodesicEnd exp(const Eigen::Vector2d& tau) const;

  // Inverse of exp by fixed-point iteration; valid for targets well inside
  // the injectivity radius.
  Eigen::Vector2d log(const Eigen::Vector3d& omega) const;

 private:
  const SurfaceQuery* query_;
  Eigen::Vector3d p_, nu_, t1_, t2_;
  double step_hint_;
};

}  // namespace qcolloid
