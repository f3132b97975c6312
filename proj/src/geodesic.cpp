#include "qcolloid/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {

namespace {

Eigen::Vector3d tangentialize(const Eigen::Vector3d& v,
                              const Eigen::Vector3d& nu) {
  Eigen::Vector3d t = v - v.dot(nu) * nu;
  double len = t.norm();
  if (len < 1e-14) throw NumericalError("tangent direction collapsed");
  return t / len;
}

// Normal curvature along u at x, from a central difference of the projected
// normal. The geodesic equation needs only kappa_n = u . (D nu) u.
double normal_curvature(const SurfaceQuery& q, const Eigen::Vector3d& x,
                        const Eigen::Vector3d& u) {
  const double eps = 1e-5;
  Eigen::Vector3d np = q.project(x + eps * u).nu;
  Eigen::Vector3d nm = q.project(x - eps * u).nu;
  return u.dot(np - nm) / (2.0 * eps);
}

GeodesicEnd trace_sphere(const SurfaceQuery& q, const Eigen::Vector3d& p,
                         const Eigen::Vector3d& dir, double length) {
  Eigen::Vector3d rhat = (p - q.sphere_center) / q.sphere_radius;
  Eigen::Vector3d d = tangentialize(dir, rhat);
  double a = length / q.sphere_radius;
  GeodesicEnd end;
  end.nu = std::cos(a) * rhat + std::sin(a) * d;
  end.x = q.sphere_center + q.sphere_radius * end.nu;
  end.u = std::cos(a) * d - std::sin(a) * rhat;
  return end;
}

}  // namespace

SurfaceQuery make_query(const AnalyticShape& shape) {
  validate_shape(shape);
  if (std::holds_alternative<Cube>(shape))
    throw NotC11("geodesics need a C^{1,1} surface");
  SurfaceQuery q;
  q.project = [shape](const Eigen::Vector3d& x) {
    return closest_surface_point(shape, x);
  };
  if (const Sphere* s = std::get_if<Sphere>(&shape)) {
    q.exact_sphere = true;
    q.sphere_radius = s->R;
  }
  return q;
}

SurfaceQuery make_query(const TriMesh& mesh) {
  SurfaceQuery q;
  q.project = [&mesh](const Eigen::Vector3d& x) {
    return closest_surface_point(mesh, x);
  };
  q.flat_chart = true;
  return q;
}

GeodesicEnd trace_geodesic(const SurfaceQuery& query, const Eigen::Vector3d& p,
                           const Eigen::Vector3d& dir, double length,
                           double step_hint) {
  SurfacePoint start = query.project(p);
  Eigen::Vector3d u0 = tangentialize(dir, start.nu);
  if (length <= 0.0) return {start.p, u0, start.nu};
  if (query.exact_sphere) return trace_sphere(query, start.p, u0, length);
  if (query.flat_chart) {
    // Straight march in the tangent plane, re-projected at the end.
    SurfacePoint end = query.project(start.p + length * u0);
    return {end.p, tangentialize(u0, end.nu), end.nu};
  }

  int steps = std::clamp(static_cast<int>(std::ceil(length / step_hint)), 4,
                         4096);
  double h = length / steps;
  Eigen::Vector3d x = start.p;
  Eigen::Vector3d u = u0;
  for (int i = 0; i < steps; ++i) {
    auto accel = [&query](const Eigen::Vector3d& xi, const Eigen::Vector3d& ui)
        -> Eigen::Vector3d {
      SurfacePoint sp = query.project(xi);
      double k = normal_curvature(query, sp.p, ui);
      return -k * sp.nu;
    };
    Eigen::Vector3d k1x = u, k1u = accel(x, u);
    Eigen::Vector3d k2x = u + 0.5 * h * k1u,
                    k2u = accel(x + 0.5 * h * k1x, u + 0.5 * h * k1u);
    Eigen::Vector3d k3x = u + 0.5 * h * k2u,
                    k3u = accel(x + 0.5 * h * k2x, u + 0.5 * h * k2u);
    Eigen::Vector3d k4x = u + h * k3u, k4u = accel(x + h * k3x, u + h * k3u);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    SurfacePoint sp = query.project(x);
    x = sp.p;
    u = tangentialize(u, sp.nu);
  }
  SurfacePoint sp = query.project(x);
  return {sp.p, tangentialize(u, sp.nu), sp.nu};
}

ExpChart::ExpChart(const SurfaceQuery& query, const Eigen::Vector3d& p,
                   double step_hint)
    : query_(&query), step_hint_(step_hint) {
  SurfacePoint sp = query.project(p);
  p_ = sp.p;
  nu_ = sp.nu;
  t1_ = any_orthogonal(nu_);
  t2_ = nu_.cross(t1_);
}

GeodesicEnd ExpChart::exp(const Eigen::Vector2d& tau) const {
  double rho = tau.norm();
  if (rho < 1e-15) return {p_, t1_, nu_};
  Eigen::Vector3d dir = (tau.x() * t1_ + tau.y() * t2_) / rho;
  return trace_geodesic(*query_, p_, dir, rho, step_hint_);
}

Eigen::Vector2d ExpChart::log(const Eigen::Vector3d& omega) const {
  if (query_->exact_sphere) {
    Eigen::Vector3d rhat = (p_ - query_->sphere_center) / query_->sphere_radius;
    Eigen::Vector3d what =
        (omega - query_->sphere_center).normalized();
    double ang = std::atan2(rhat.cross(what).norm(), rhat.dot(what));
    if (ang < 1e-14) return Eigen::Vector2d::Zero();
    Eigen::Vector3d dir = tangentialize(what - what.dot(rhat) * rhat, rhat);
    double len = query_->sphere_radius * ang;
    return {len * dir.dot(t1_), len * dir.dot(t2_)};
  }
  Eigen::Vector3d d = omega - p_;
  Eigen::Vector2d tau(d.dot(t1_), d.dot(t2_));
  if (query_->flat_chart) return tau;
  for (int it = 0; it < 40; ++it) {
    GeodesicEnd end = exp(tau);
    Eigen::Vector3d e = end.x - omega;
    Eigen::Vector2d corr(e.dot(t1_), e.dot(t2_));
    tau -= corr;
    if (corr.norm() < 1e-12) break;
  }
  return tau;
}

}  // namespace qcolloid
