#include "qcolloid/tangentfield.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {

namespace {

constexpr int kCirclePts = 192;
constexpr int kLinePts = 96;
constexpr int kArcPts = 32;
constexpr int kRays = 512;

Eigen::Vector3d unit_or_throw(const Eigen::Vector3d& v, const char* what) {
  double len = v.norm();
  if (len < 1e-12) throw NonUnitDirector(what);
  return v / len;
}

Eigen::Vector3d project_tangent(const Eigen::Vector3d& v,
                                const Eigen::Vector3d& nu) {
  return v - v.dot(nu) * nu;
}

// Signed solid angle of the spherical triangle (a, b, c), unit inputs.
double solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                   const Eigen::Vector3d& c) {
  double num = a.dot(b.cross(c));
  double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

// Makes the loop counterclockwise around center as seen along the outward
// normal there, so it is the positive boundary of the enclosed region.
void orient_loop(std::vector<Eigen::Vector3d>& loop,
                 const Eigen::Vector3d& center, const Eigen::Vector3d& nu) {
  double circ = 0.0;
  for (size_t k = 0; k < loop.size(); ++k) {
    const Eigen::Vector3d& p = loop[k];
    const Eigen::Vector3d& q = loop[(k + 1) % loop.size()];
    circ += (p - center).cross(q - center).dot(nu);
  }
  if (circ < 0.0) std::reverse(loop.begin(), loop.end());
}

// Geodesic circle of radius rho on a sphere of radius scale centered at c,
// around the surface point c + scale * axis.
std::vector<Eigen::Vector3d> sphere_circle(const Eigen::Vector3d& c,
                                           double scale,
                                           const Eigen::Vector3d& axis,
                                           double rho, int npts) {
  Eigen::Vector3d a1 = any_orthogonal(axis);
  Eigen::Vector3d a2 = axis.cross(a1);
  std::vector<Eigen::Vector3d> pts(npts);
  double ca = std::cos(rho / scale), sa = std::sin(rho / scale);
  for (int k = 0; k < npts; ++k) {
    double psi = 2.0 * kPi * k / npts;
    pts[k] = c + scale * (ca * axis +
                          sa * (std::cos(psi) * a1 + std::sin(psi) * a2));
  }
  return pts;
}

// Stadium around a cylinder ridge segment. The ridge runs along zhat from
// cap center c0 to cap center c1 at radius scale in direction hhat; the
// caps are spheres of the same radius. delta is the geodesic half-width.
std::vector<Eigen::Vector3d> stadium_loop(const Eigen::Vector3d& c0,
                                          const Eigen::Vector3d& c1,
                                          const Eigen::Vector3d& zhat,
                                          const Eigen::Vector3d& hhat,
                                          double scale, double delta) {
  double beta = delta / scale;
  Eigen::Vector3d hperp = zhat.cross(hhat);
  double cb = std::cos(beta), sb = std::sin(beta);
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(2 * kLinePts + 2 * kArcPts);
  auto online = [&](double t, double sgn) {
    return (1.0 - t) * c0 + t * c1 + scale * (cb * hhat + sgn * sb * hperp);
  };
  auto oncap = [&](const Eigen::Vector3d& c, const Eigen::Vector3d& zdir,
                   double alpha) {
    return c + scale * (cb * hhat +
                        sb * (std::cos(alpha) * zdir +
                              std::sin(alpha) * hperp));
  };
  for (int k = 0; k < kLinePts; ++k)
    pts.push_back(online(static_cast<double>(k) / kLinePts, +1.0));
  for (int k = 0; k < kArcPts; ++k)
    pts.push_back(oncap(c1, zhat, kPi / 2 - kPi * k / kArcPts));
  for (int k = 0; k < kLinePts; ++k)
    pts.push_back(online(1.0 - static_cast<double>(k) / kLinePts, -1.0));
  for (int k = 0; k < kArcPts; ++k)
    pts.push_back(oncap(c0, -zhat, -kPi / 2 + kPi * k / kArcPts));
  return pts;
}

Eigen::Vector3d slerp(const Eigen::Vector3d& d1, const Eigen::Vector3d& d2,
                      double s) {
  double omega = std::atan2(d1.cross(d2).norm(), d1.dot(d2));
  if (omega < 1e-12) return d1;
  return (std::sin((1.0 - s) * omega) * d1 + std::sin(s * omega) * d2) /
         std::sin(omega);
}

// Boundary of a face region of a rounded cube: four ridge lines at wrap
// angle delta/eps past the face rim, joined by corner arcs.
std::vector<Eigen::Vector3d> face_loop(int axis, int side, double a,
                                       double eps, double delta) {
  double phi = delta / eps;
  Eigen::Vector3d what = side * Eigen::Vector3d::Unit(axis);
  Eigen::Vector3d uhat = Eigen::Vector3d::Unit((axis + 1) % 3);
  Eigen::Vector3d vhat = Eigen::Vector3d::Unit((axis + 2) % 3);
  double sp = std::sin(phi), cp = std::cos(phi);
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(4 * (kLinePts / 2 + kArcPts / 2));
  auto line_v = [&](double sv, double t) {
    return t * uhat + sv * (a + eps * sp) * vhat + (a + eps * cp) * what;
  };
  auto line_u = [&](double su, double t) {
    return su * (a + eps * sp) * uhat + t * vhat + (a + eps * cp) * what;
  };
  auto corner_arc = [&](double su, double sv, const Eigen::Vector3d& d1,
                        const Eigen::Vector3d& d2) {
    Eigen::Vector3d c = su * a * uhat + sv * a * vhat + a * what;
    for (int k = 0; k < kArcPts / 2; ++k)
      pts.push_back(c + eps * slerp(d1, d2,
                                    static_cast<double>(k) / (kArcPts / 2)));
  };
  auto dv = [&](double sv) -> Eigen::Vector3d {
    return sv * sp * vhat + cp * what;
  };
  auto du = [&](double su) -> Eigen::Vector3d {
    return su * sp * uhat + cp * what;
  };
  int nl = kLinePts / 2;
  for (int k = 0; k < nl; ++k)
    pts.push_back(line_v(+1, a - 2.0 * a * k / nl));
  corner_arc(-1, +1, dv(+1), du(-1));
  for (int k = 0; k < nl; ++k)
    pts.push_back(line_u(-1, a - 2.0 * a * k / nl));
  corner_arc(-1, -1, du(-1), dv(-1));
  for (int k = 0; k < nl; ++k)
    pts.push_back(line_v(-1, -a + 2.0 * a * k / nl));
  corner_arc(+1, -1, dv(-1), du(+1));
  for (int k = 0; k < nl; ++k)
    pts.push_back(line_u(+1, -a + 2.0 * a * k / nl));
  corner_arc(+1, +1, du(+1), dv(+1));
  return pts;
}

std::vector<Eigen::Vector3d> chart_circle(const SurfaceQuery& query,
                                          const Eigen::Vector3d& center,
                                          double rho, double hint) {
  ExpChart chart(query, center, hint);
  std::vector<Eigen::Vector3d> pts(kCirclePts);
  for (int k = 0; k < kCirclePts; ++k) {
    double psi = 2.0 * kPi * k / kCirclePts;
    pts[k] = chart.exp(rho * Eigen::Vector2d(std::cos(psi), std::sin(psi))).x;
  }
  return pts;
}

double torus_phi(const Eigen::Vector3d& p, double R) {
  return std::atan2(std::hypot(p.x(), p.y()) - R, p.z());
}

void check_delta(bool ok, const char* what) {
  if (!ok) throw InputError(std::string("delta too large for ") + what);
}

std::vector<Region> regions_sphere(const Sphere& s, const Eigen::Vector3d& n,
                                   double delta) {
  check_delta(delta <= 0.9 * s.R * kPi / 2, "the sphere caps");
  std::vector<Region> out;
  for (int side : {+1, -1}) {
    Region r;
    r.kind = "point";
    r.side = side;
    r.center = side * s.R * n;
    r.delta = delta;
    r.dist_scale = s.R;
    r.dist_dir = side * n;
    r.loop = sphere_circle(Eigen::Vector3d::Zero(), s.R, side * n, delta,
                           kCirclePts);
    orient_loop(r.loop, r.center, side * n);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Region> regions_spherocylinder(const Spherocylinder& s,
                                           const Eigen::Vector3d& n,
                                           double delta) {
  double nh = std::hypot(n.x(), n.y());
  std::vector<Region> out;
  if (nh < 1e-9 || std::abs(n.z()) >= 1e-9) {
    // Isolated cap points.
    double alpha = std::acos(std::min(1.0, std::abs(n.z())));
    check_delta(delta <= 0.9 * s.R * (kPi / 2 - alpha),
                "the spherocylinder cap regions");
    double zs = n.z() >= 0.0 ? 1.0 : -1.0;
    for (int side : {+1, -1}) {
      Eigen::Vector3d cap(0.0, 0.0, side * zs * s.L / 2);
      Eigen::Vector3d axis = side * n;
      Region r;
      r.kind = "point";
      r.side = side;
      r.center = cap + s.R * axis;
      r.delta = delta;
      r.dist_scale = s.R;
      r.dist_dir = axis;
      r.loop = sphere_circle(cap, s.R, axis, delta, kCirclePts);
      orient_loop(r.loop, r.center, axis);
      out.push_back(std::move(r));
    }
    return out;
  }
  // Horizontal n: the locus is a vertical ridge line on the barrel.
  check_delta(delta <= 0.9 * s.R * kPi / 2, "the spherocylinder ridge");
  Eigen::Vector3d hhat(n.x() / nh, n.y() / nh, 0.0);
  for (int side : {+1, -1}) {
    Eigen::Vector3d dir = side * hhat;
    Region r;
    r.kind = "segment";
    r.side = side;
    r.center = s.R * dir;
    r.delta = delta;
    r.dist_scale = s.R;
    r.dist_dir = dir;
    r.loop = stadium_loop(Eigen::Vector3d(0, 0, -s.L / 2),
                          Eigen::Vector3d(0, 0, s.L / 2),
                          Eigen::Vector3d::UnitZ(), dir, s.R, delta);
    orient_loop(r.loop, r.center, dir);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Region> regions_torus(const Torus& t, const Eigen::Vector3d& n,
                                  double delta) {
  std::vector<Region> out;
  double nh = std::hypot(n.x(), n.y());
  if (std::abs(n.z()) >= 1.0 - 1e-9) {
    // Degenerate circles at the top and bottom of the tube.
    check_delta(delta <= 0.9 * t.r * kPi / 2, "the torus bands");
    double s = delta / t.r;
    for (int side : {+1, -1}) {
      double phi_c = (side * n.z() > 0.0) ? 0.0 : kPi;
      Region r;
      r.kind = "band";
      r.side = side;
      r.delta = delta;
      double z_c = t.r * std::cos(phi_c);
      r.center = Eigen::Vector3d(t.R + t.r * std::sin(phi_c), 0.0, z_c);
      for (int which = 0; which < 2; ++which) {
        double phi = phi_c + (which == 0 ? s : -s);
        std::vector<Eigen::Vector3d> circle(kCirclePts);
        for (int k = 0; k < kCirclePts; ++k) {
          double th = 2.0 * kPi * k / kCirclePts;
          circle[k] =
              Eigen::Vector3d((t.R + t.r * std::sin(phi)) * std::cos(th),
                              (t.R + t.r * std::sin(phi)) * std::sin(th),
                              t.r * std::cos(phi));
        }
        (which == 0 ? r.loop : r.loop2) = std::move(circle);
      }
      out.push_back(std::move(r));
    }
    return out;
  }
  // Four isolated points, two on the outer equatorial side, two inner.
  double phi_n = std::atan2(nh, n.z());
  check_delta(delta <= 0.45 * t.r * std::min(phi_n, kPi - phi_n),
              "the torus point regions");
  double az = (nh > 0.0) ? std::atan2(n.y(), n.x()) : 0.0;
  Eigen::Matrix3d rot =
      Eigen::AngleAxisd(az, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  AnalyticShape shape = t;
  SurfaceQuery query = make_query(shape);
  struct Seed {
    int side;
    double theta, phi;
  };
  const Seed seeds[4] = {{+1, 0.0, phi_n},
                         {+1, kPi, -phi_n},
                         {-1, kPi, kPi - phi_n},
                         {-1, 0.0, kPi + phi_n}};
  for (const Seed& sd : seeds) {
    Region r;
    r.kind = "point";
    r.side = sd.side;
    double w = t.R + t.r * std::sin(sd.phi);
    r.center = rot * Eigen::Vector3d(w * std::cos(sd.theta),
                                     w * std::sin(sd.theta),
                                     t.r * std::cos(sd.phi));
    r.delta = delta;
    r.loop = chart_circle(query, r.center, delta, delta / 8);
    orient_loop(r.loop, r.center, query.project(r.center).nu);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Region> regions_rounded_cube(const RoundedCube& rc,
                                         const Eigen::Vector3d& n,
                                         double delta) {
  double a = rc.R - rc.eps;
  int zeros = 0;
  for (int j = 0; j < 3; ++j)
    if (std::abs(n[j]) < 1e-9) ++zeros;
  std::vector<Region> out;
  if (zeros == 2) {
    // Face regions around the two faces normal to the surviving axis.
    int axis = 0;
    for (int j = 0; j < 3; ++j)
      if (std::abs(n[j]) >= 1e-9) axis = j;
    check_delta(delta <= 0.9 * rc.eps * kPi / 2, "the face regions");
    check_delta(delta / 4 <= 0.9 * a, "the face patch");
    int sgn = n[axis] > 0.0 ? 1 : -1;
    for (int side : {+1, -1}) {
      int face_side = side * sgn;
      Region r;
      r.kind = "face";
      r.side = side;
      r.center = face_side * (a + rc.eps) * Eigen::Vector3d::Unit(axis);
      r.delta = delta;
      r.dist_scale = rc.eps;
      r.dist_dir = face_side * Eigen::Vector3d::Unit(axis);
      r.loop = face_loop(axis, face_side, a, rc.eps, delta);
      orient_loop(r.loop, r.center, r.dist_dir);
      out.push_back(std::move(r));
    }
    return out;
  }
  if (zeros == 1) {
    // Ridge segment on one edge cylinder, capped by corner spheres.
    int zaxis = 0;
    for (int j = 0; j < 3; ++j)
      if (std::abs(n[j]) < 1e-9) zaxis = j;
    Eigen::Vector3d zhat = Eigen::Vector3d::Unit(zaxis);
    Eigen::Vector3d nh = n - n[zaxis] * zhat;
    nh.normalize();
    double margin = kPi / 2;
    for (int j = 0; j < 3; ++j)
      if (j != zaxis) margin = std::min(margin, std::asin(std::abs(nh[j])));
    check_delta(delta <= 0.9 * rc.eps * margin, "the edge regions");
    for (int side : {+1, -1}) {
      Eigen::Vector3d dir = side * nh;
      Eigen::Vector3d corner_base = Eigen::Vector3d::Zero();
      for (int j = 0; j < 3; ++j)
        if (j != zaxis) corner_base[j] = a * (dir[j] > 0.0 ? 1.0 : -1.0);
      Region r;
      r.kind = "segment";
      r.side = side;
      r.center = corner_base + rc.eps * dir;
      r.delta = delta;
      r.dist_scale = rc.eps;
      r.dist_dir = dir;
      r.loop = stadium_loop(corner_base - a * zhat, corner_base + a * zhat,
                            zhat, dir, rc.eps, delta);
      orient_loop(r.loop, r.center, dir);
      out.push_back(std::move(r));
    }
    return out;
  }
  // All components nonzero: two antipodal corner points.
  double margin = kPi / 2;
  for (int j = 0; j < 3; ++j)
    margin = std::min(margin, std::asin(std::abs(n[j])));
  check_delta(delta <= 0.9 * rc.eps * margin, "the corner regions");
  for (int side : {+1, -1}) {
    Eigen::Vector3d dir = side * n;
    Eigen::Vector3d corner(a * (dir.x() > 0.0 ? 1.0 : -1.0),
                           a * (dir.y() > 0.0 ? 1.0 : -1.0),
                           a * (dir.z() > 0.0 ? 1.0 : -1.0));
    Region r;
    r.kind = "point";
    r.side = side;
    r.center = corner + rc.eps * dir;
    r.delta = delta;
    r.dist_scale = rc.eps;
    r.dist_dir = dir;
    r.loop = sphere_circle(corner, rc.eps, dir, delta, kCirclePts);
    orient_loop(r.loop, r.center, dir);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Eigen::Vector3d vstar(const Eigen::Vector3d& nu, const Eigen::Vector3d& n) {
  double d = nu.dot(n);
  if (std::abs(d) >= 1.0 - 1e-12)
    throw DegenerateNormal("normal aligned with the far field");
  return (n - d * nu).normalized();
}

TangentField vstar_field(const Eigen::Vector3d& n) {
  Eigen::Vector3d nn = unit_or_throw(n, "far-field direction");
  TangentField f;
  f.eval = [nn](const SurfacePoint& sp) { return vstar(sp.nu, nn); };
  return f;
}

std::vector<Region> degenerate_regions(const AnalyticShape& shape,
                                       const Eigen::Vector3d& n,
                                       double delta) {
  validate_shape(shape);
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  Eigen::Vector3d nn = unit_or_throw(n, "far-field direction");
  if (const Sphere* s = std::get_if<Sphere>(&shape))
    return regions_sphere(*s, nn, delta);
  if (const Spherocylinder* s = std::get_if<Spherocylinder>(&shape))
    return regions_spherocylinder(*s, nn, delta);
  if (const Torus* t = std::get_if<Torus>(&shape))
    return regions_torus(*t, nn, delta);
  if (const RoundedCube* rc = std::get_if<RoundedCube>(&shape))
    return regions_rounded_cube(*rc, nn, delta);
  throw NotC11("degenerate regions need a C^{1,1} surface");
}

int loop_degree(const SurfaceQuery& query, std::vector<Eigen::Vector3d> loop,
                const TangentField& field) {
  if (loop.size() < 3) throw InputError("loop needs at least 3 points");
  for (int refine = 0; refine <= 4; ++refine) {
    const int npts = static_cast<int>(loop.size());
    std::vector<SurfacePoint> sp(npts);
    std::vector<Eigen::Vector3d> v(npts);
    bool ok = true;
    for (int k = 0; k < npts; ++k) {
      sp[k] = query.project(loop[k]);
      Eigen::Vector3d t = project_tangent(field.eval(sp[k]), sp[k].nu);
      double len = t.norm();
      if (len < 1e-12) {
        ok = false;
        break;
      }
      v[k] = t / len;
    }
    if (ok) {
      double turn = 0.0;
      for (int k = 0; k < npts; ++k) {
        int k1 = (k + 1) % npts;
        Eigen::Vector3d a = project_tangent(v[k], sp[k1].nu);
        double len = a.norm();
        if (len < 1e-12) {
          ok = false;
          break;
        }
        a /= len;
        turn += std::atan2(a.cross(v[k1]).dot(sp[k1].nu), a.dot(v[k1]));
      }
      if (ok) {
        double gauss = 0.0;
        for (int k = 1; k + 1 < npts; ++k)
          gauss += solid_angle(sp[0].nu, sp[k].nu, sp[k + 1].nu);
        double raw = (turn + gauss) / (2.0 * kPi);
        double snapped = std::round(raw);
        if (std::abs(raw - snapped) < 1e-3)
          return static_cast<int>(snapped);
      }
    }
    std::vector<Eigen::Vector3d> next;
    next.reserve(2 * loop.size());
    for (int k = 0; k < npts; ++k) {
      next.push_back(loop[k]);
      next.push_back(
          query.project(0.5 * (loop[k] + loop[(k + 1) % npts])).p);
    }
    loop = std::move(next);
  }
  throw NonConvergedDegree("loop winding did not settle on an integer");
}

int loop_degree(const AnalyticShape& shape, std::vector<Eigen::Vector3d> loop,
                const TangentField& field) {
  return loop_degree(make_query(shape), std::move(loop), field);
}

TangentField defect_profile(const AnalyticShape& shape,
                            const Eigen::Vector3d& p, double delta_prime,
                            int sign) {
  if (!(delta_prime > 0.0)) throw InputError("patch radius must be positive");
  if (sign != 1 && sign != -1) throw InputError("defect sign must be +-1");
  auto query = std::make_shared<SurfaceQuery>(make_query(shape));
  auto chart = std::make_shared<ExpChart>(*query, p, delta_prime / 8);
  TangentField f;
  f.defects = {{chart->p(), sign, delta_prime}};
  double dp = delta_prime;
  f.eval = [query, chart, dp, sign](const SurfacePoint& sp) {
    Eigen::Vector2d tau = chart->log(sp.p);
    Eigen::Vector3d m =
        (tau.x() * chart->t1() + sign * tau.y() * chart->t2()) / dp;
    Eigen::Vector3d mt = project_tangent(m, sp.nu);
    double len = mt.norm();
    if (len < 1e-10)
      throw DegenerateProjection("defect model degenerates here");
    return Eigen::Vector3d(mt / len);
  };
  return f;
}

namespace {

struct Patch {
  Region region;
  int degree = 0;
  std::shared_ptr<ExpChart> chart;
  std::vector<double> th_in, th_out, rho_out;  // indexed by ray, kRays + 1
  // band data
  double phi_c = 0.0, half_width = 0.0, alpha0 = 0.0, dalpha = 0.0;
};

void unwrap_inplace(std::vector<double>& th) {
  for (size_t k = 1; k < th.size(); ++k)
    th[k] -= 2.0 * kPi * std::round((th[k] - th[k - 1]) / (2.0 * kPi));
}

double lerp_table(const std::vector<double>& tab, double psi) {
  double f = psi / (2.0 * kPi) * kRays;
  int k = std::clamp(static_cast<int>(std::floor(f)), 0, kRays - 1);
  double t = f - k;
  return tab[k] * (1.0 - t) + tab[k + 1] * t;
}

// First radius along the chart ray at which dist reaches delta.
double march_exit(const SurfaceQuery& query, const ExpChart& chart,
                  double psi, double delta, double cap_len,
                  const std::function<double(const SurfacePoint&)>& dist) {
  Eigen::Vector3d dir =
      std::cos(psi) * chart.t1() + std::sin(psi) * chart.t2();
  double h = delta / 8;
  Eigen::Vector3d x = chart.p();
  Eigen::Vector3d u = dir;
  double rho = 0.0;
  while (rho < cap_len) {
    GeodesicEnd next = trace_geodesic(query, x, u, h, h / 4);
    if (dist({next.x, next.nu}) >= delta) {
      double lo = 0.0, hi = h;
      for (int it = 0; it < 45; ++it) {
        double mid = 0.5 * (lo + hi);
        GeodesicEnd probe = trace_geodesic(query, x, u, mid, h / 4);
        (dist({probe.x, probe.nu}) >= delta ? hi : lo) = mid;
      }
      return rho + 0.5 * (lo + hi);
    }
    x = next.x;
    u = next.u;
    rho += h;
  }
  throw NumericalError("region boundary not found along ray");
}

}  // namespace

TangentField build_boundary_field(const AnalyticShape& shape,
                                  const Eigen::Vector3d& n, double delta) {
  Eigen::Vector3d nn = unit_or_throw(n, "far-field direction");
  std::vector<Region> regions = degenerate_regions(shape, nn, delta);
  auto query = std::make_shared<SurfaceQuery>(make_query(shape));
  TangentField vf = vstar_field(nn);
  const double dprime = delta / 4;

  const Torus* torus = std::get_if<Torus>(&shape);
  auto patches = std::make_shared<std::vector<Patch>>();
  for (Region& region : regions) {
    Patch patch;
    patch.degree = (region.kind == "band")
                       ? 0
                       : loop_degree(*query, region.loop, vf);
    if (region.kind == "band") {
      double s = delta / torus->r;
      patch.phi_c = (region.side * nn.z() > 0.0) ? 0.0 : kPi;
      patch.half_width = s;
      // Edge angles of v* in the meridian frame, and their theta-windings.
      auto frame_angle = [&](double phi, double theta) {
        Eigen::Vector3d nu(std::sin(phi) * std::cos(theta),
                           std::sin(phi) * std::sin(theta), std::cos(phi));
        Eigen::Vector3d um(std::cos(phi) * std::cos(theta),
                           std::cos(phi) * std::sin(theta), -std::sin(phi));
        Eigen::Vector3d et(-std::sin(theta), std::cos(theta), 0.0);
        Eigen::Vector3d v = vstar(nu, nn);
        return std::atan2(v.dot(et), v.dot(um));
      };
      const int nth = 64;
      std::vector<double> ain(nth + 1), aout(nth + 1);
      for (int k = 0; k <= nth; ++k) {
        double th = 2.0 * kPi * k / nth;
        ain[k] = frame_angle(patch.phi_c - s, th);
        aout[k] = frame_angle(patch.phi_c + s, th);
      }
      unwrap_inplace(ain);
      unwrap_inplace(aout);
      long win = std::lround((ain[nth] - ain[0]) / (2.0 * kPi));
      long wout = std::lround((aout[nth] - aout[0]) / (2.0 * kPi));
      if (win != wout)
        throw NumericalError("band edges wind differently, no defect-free "
                             "fill exists");
      patch.alpha0 = ain[0];
      patch.dalpha = wrap_angle(aout[0] - ain[0]);
      if (patch.dalpha <= -kPi + 1e-12) patch.dalpha = kPi;
      patch.region = std::move(region);
      patches->push_back(std::move(patch));
      continue;
    }
    if (std::abs(patch.degree) != 1)
      throw NumericalError("region winding admits no single defect");
    patch.chart =
        std::make_shared<ExpChart>(*query, region.center, delta / 8);
    const int d = patch.degree;
    const ExpChart& chart = *patch.chart;
    std::function<double(const SurfacePoint&)> dist;
    double cap_len = 4.0 * delta;
    if (region.kind != "point") {
      double scale = region.dist_scale;
      Eigen::Vector3d dd = region.dist_dir;
      dist = [scale, dd](const SurfacePoint& sp) {
        return scale *
               std::atan2(sp.nu.cross(dd).norm(), sp.nu.dot(dd));
      };
      if (const Spherocylinder* sc = std::get_if<Spherocylinder>(&shape))
        cap_len += sc->L / 2;
      if (const RoundedCube* rcp = std::get_if<RoundedCube>(&shape))
        cap_len += 3.0 * rcp->R;
    }
    patch.th_in.resize(kRays + 1);
    patch.th_out.resize(kRays + 1);
    patch.rho_out.resize(kRays + 1);
    for (int k = 0; k <= kRays; ++k) {
      double psi = 2.0 * kPi * k / kRays;
      double rout = (region.kind == "point")
                        ? delta
                        : march_exit(*query, chart, psi, delta, cap_len,
                                     dist);
      patch.rho_out[k] = rout;
      GeodesicEnd inner =
          chart.exp(dprime * Eigen::Vector2d(std::cos(psi), std::sin(psi)));
      Eigen::Vector3d m =
          std::cos(psi) * chart.t1() + d * std::sin(psi) * chart.t2();
      Eigen::Vector3d mt = project_tangent(m, inner.nu);
      if (mt.norm() < 1e-10)
        throw DegenerateProjection("defect model degenerates on the patch");
      mt.normalize();
      Eigen::Vector3d win = inner.nu.cross(inner.u);
      patch.th_in[k] = std::atan2(mt.dot(win), mt.dot(inner.u));
      GeodesicEnd outer =
          chart.exp(rout * Eigen::Vector2d(std::cos(psi), std::sin(psi)));
      Eigen::Vector3d vo = vstar(outer.nu, nn);
      Eigen::Vector3d wout3 = outer.nu.cross(outer.u);
      patch.th_out[k] = std::atan2(vo.dot(wout3), vo.dot(outer.u));
    }
    unwrap_inplace(patch.th_in);
    unwrap_inplace(patch.th_out);
    long win_in =
        std::lround((patch.th_in[kRays] - patch.th_in[0]) / (2.0 * kPi));
    long win_out =
        std::lround((patch.th_out[kRays] - patch.th_out[0]) / (2.0 * kPi));
    if (win_in != d - 1 || win_out != d - 1)
      throw NumericalError("interpolation windings disagree across the "
                           "region");
    double shift = wrap_angle(patch.th_out[0] - patch.th_in[0]);
    if (shift <= -kPi + 1e-12) shift = kPi;
    shift += patch.th_in[0] - patch.th_out[0];
    for (double& v : patch.th_out) v += shift;
    patch.region = std::move(region);
    patches->push_back(std::move(patch));
  }

  TangentField field;
  for (const Patch& patch : *patches)
    if (patch.region.kind != "band")
      field.defects.push_back(
          {patch.region.center, patch.degree, dprime});

  double tR = torus ? torus->R : 0.0;
  field.eval = [patches, query, nn, delta, dprime,
                tR](const SurfacePoint& sp) -> Eigen::Vector3d {
    for (const Patch& patch : *patches) {
      const Region& region = patch.region;
      if (region.kind == "band") {
        double wc = wrap_angle(torus_phi(sp.p, tR) - patch.phi_c);
        if (std::abs(wc) >= patch.half_width) continue;
        double theta = std::atan2(sp.p.y(), sp.p.x());
        double phi = patch.phi_c + wc;
        Eigen::Vector3d um(std::cos(phi) * std::cos(theta),
                           std::cos(phi) * std::sin(theta), -std::sin(phi));
        Eigen::Vector3d et(-std::sin(theta), std::cos(theta), 0.0);
        double alpha = patch.alpha0 +
                       patch.dalpha * (wc + patch.half_width) /
                           (2.0 * patch.half_width);
        Eigen::Vector3d v = std::cos(alpha) * um + std::sin(alpha) * et;
        return project_tangent(v, sp.nu).normalized();
      }
      if (region.dist_scale > 0.0) {
        double dist = region.dist_scale *
                      std::atan2(sp.nu.cross(region.dist_dir).norm(),
                                 sp.nu.dot(region.dist_dir));
        if (dist >= region.delta) continue;
      } else if ((sp.p - region.center).norm() >= region.delta) {
        continue;  // chord never exceeds geodesic distance
      }
      Eigen::Vector2d tau = patch.chart->log(sp.p);
      double rho = tau.norm();
      if (region.kind == "point" && rho >= region.delta) continue;
      if (rho <= dprime) {
        Eigen::Vector3d m = (tau.x() * patch.chart->t1() +
                             patch.degree * tau.y() * patch.chart->t2()) /
                            dprime;
        Eigen::Vector3d mt = project_tangent(m, sp.nu);
        double len = mt.norm();
        if (len < 1e-10)
          throw DegenerateProjection("defect model degenerates here");
        return Eigen::Vector3d(mt / len);
      }
      double psi = std::atan2(tau.y(), tau.x());
      if (psi < 0.0) psi += 2.0 * kPi;
      double rout = lerp_table(patch.rho_out, psi);
      double t = std::clamp((rho - dprime) / (rout - dprime), 0.0, 1.0);
      double theta = (1.0 - t) * lerp_table(patch.th_in, psi) +
                     t * lerp_table(patch.th_out, psi);
      GeodesicEnd end = patch.chart->exp(tau);
      Eigen::Vector3d v = std::cos(theta) * end.u +
                          std::sin(theta) * end.nu.cross(end.u);
      return project_tangent(v, sp.nu).normalized();
    }
    return vstar(sp.nu, nn);
  };
  return field;
}

double field_surface_energy(const std::vector<QuadratureSample>& samples,
                            const TangentField& field,
                            const Eigen::Vector3d& n) {
  Eigen::Vector3d nn = unit_or_throw(n, "far-field direction");
  NeumaierSum acc;
  for (const QuadratureSample& s : samples) {
    bool at_defect = false;
    for (const DefectRecord& d : field.defects)
      if ((s.x - d.p).norm() < 1e-12) at_defect = true;
    if (at_defect) continue;
    Eigen::Vector3d v = field.eval({s.x, s.nu});
    acc.add(s.w * (1.0 - std::abs(v.dot(nn))));
  }
  return kQuartRoot24 * acc.value();
}

}  // namespace qcolloid
