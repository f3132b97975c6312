#include "qcolloid/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {

void validate_shape(const AnalyticShape& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (!(s.R > 0.0)) throw DegenerateParameter("Sphere: R must be > 0");
        } else if constexpr (std::is_same_v<T, Spherocylinder>) {
          if (!(s.R > 0.0) || !(s.L > 0.0))
            throw DegenerateParameter("Spherocylinder: R, L must be > 0");
        } else if constexpr (std::is_same_v<T, Torus>) {
          if (!(s.r > 0.0) || !(s.R > s.r))
            throw DegenerateParameter("Torus: requires R > r > 0");
        } else if constexpr (std::is_same_v<T, Cube>) {
          if (!(s.R > 0.0)) throw DegenerateParameter("Cube: R must be > 0");
        } else {
          if (!(s.R > 0.0) || !(s.eps > 0.0) || !(s.eps < 0.5 * s.R))
            throw DegenerateParameter("RoundedCube: requires 0 < eps < R/2");
        }
      },
      shape);
}

std::string shape_name(const AnalyticShape& shape) {
  struct Namer {
    std::string operator()(const Sphere&) const { return "sphere"; }
    std::string operator()(const Spherocylinder&) const {
      return "spherocylinder";
    }
    std::string operator()(const Torus&) const { return "torus"; }
    std::string operator()(const Cube&) const { return "cube"; }
    std::string operator()(const RoundedCube&) const { return "roundedcube"; }
  };
  return std::visit(Namer{}, shape);
}

double area(const AnalyticShape& shape) {
  validate_shape(shape);
  struct Area {
    double operator()(const Sphere& s) const { return 4.0 * kPi * s.R * s.R; }
    double operator()(const Spherocylinder& s) const {
      return 4.0 * kPi * s.R * s.R + 2.0 * kPi * s.R * s.L;
    }
    double operator()(const Torus& s) const {
      return 4.0 * kPi * kPi * s.R * s.r;
    }
    double operator()(const Cube& s) const { return 24.0 * s.R * s.R; }
    double operator()(const RoundedCube& s) const {
      double a = s.R - s.eps;
      return 24.0 * a * a + 12.0 * kPi * s.eps * a +
             4.0 * kPi * s.eps * s.eps;
    }
  };
  return std::visit(Area{}, shape);
}

double max_curvature(const AnalyticShape& shape) {
  validate_shape(shape);
  struct Curv {
    double operator()(const Sphere& s) const { return 1.0 / s.R; }
    double operator()(const Spherocylinder& s) const { return 1.0 / s.R; }
    double operator()(const Torus& s) const {
      // Tube curvature 1/r and the inner-equator hoop value 1/(R - r).
      return std::max(1.0 / s.r, 1.0 / (s.R - s.r));
    }
    double operator()(const Cube&) const {
      throw NotC11("max_curvature: cube has edges");
    }
    double operator()(const RoundedCube& s) const { return 1.0 / s.eps; }
  };
  return std::visit(Curv{}, shape);
}

double rolling_radius(const AnalyticShape& shape) {
  return 1.0 / (2.0 * max_curvature(shape));
}

int euler_characteristic(const AnalyticShape& shape) {
  return std::holds_alternative<Torus>(shape) ? 0 : 2;
}

double symmetric_difference_area(const AnalyticShape& a,
                                 const AnalyticShape& b) {
  const Cube* cube = std::get_if<Cube>(&a);
  const RoundedCube* rc = std::get_if<RoundedCube>(&b);
  if (!cube || !rc) {
    cube = std::get_if<Cube>(&b);
    rc = std::get_if<RoundedCube>(&a);
  }
  if (!cube || !rc)
    throw UnsupportedPair(
        "symmetric_difference_area: supported pair is Cube / RoundedCube");
  validate_shape(*cube);
  validate_shape(*rc);
  if (std::abs(cube->R - rc->R) > 1e-12)
    throw UnsupportedPair(
        "symmetric_difference_area: shapes must share the base size R");
  double R = cube->R, eps = rc->eps, half = R - eps;
  // Face frames lost from the cube, plus blend patches gained.
  double lost = 24.0 * R * R - 24.0 * half * half;
  double gained = 12.0 * kPi * eps * half + 4.0 * kPi * eps * eps;
  return lost + gained;
}

// ----- profile segments -----

ProfileSegment ProfileSegment::line(const Eigen::Vector2d& a,
                                    const Eigen::Vector2d& b) {
  if ((b - a).norm() < 1e-14)
    throw InputError("ProfileSegment::line: zero length");
  ProfileSegment seg;
  seg.kind = Kind::line;
  seg.a = a;
  seg.b = b;
  return seg;
}

ProfileSegment ProfileSegment::arc(const Eigen::Vector2d& center,
                                   double radius, double ang0, double ang1) {
  if (!(radius > 0.0) || std::abs(ang1 - ang0) < 1e-14)
    throw InputError("ProfileSegment::arc: degenerate arc");
  ProfileSegment seg;
  seg.kind = Kind::arc;
  seg.center = center;
  seg.radius = radius;
  seg.ang0 = ang0;
  seg.ang1 = ang1;
  return seg;
}

Eigen::Vector2d ProfileSegment::point(double u) const {
  if (kind == Kind::line) return a + u * (b - a);
  double ang = ang0 + u * (ang1 - ang0);
  return center + radius * Eigen::Vector2d(std::cos(ang), std::sin(ang));
}

Eigen::Vector2d ProfileSegment::derivative(double u) const {
  if (kind == Kind::line) return b - a;
  double ang = ang0 + u * (ang1 - ang0);
  return radius * (ang1 - ang0) *
         Eigen::Vector2d(-std::sin(ang), std::cos(ang));
}

double ProfileSegment::length() const {
  if (kind == Kind::line) return (b - a).norm();
  return radius * std::abs(ang1 - ang0);
}

// ----- revolution surfaces -----

void RevolutionSurface::locate(double s, int* part, double* u) const {
  s = std::clamp(s, 0.0, 1.0);
  int n = static_cast<int>(parts.size());
  int i = n - 1;
  for (int k = 0; k < n; ++k) {
    if (s <= cum[k + 1]) {
      i = k;
      break;
    }
  }
  double span = cum[i + 1] - cum[i];
  *part = i;
  *u = span > 0.0 ? (s - cum[i]) / span : 0.0;
}

Eigen::Vector3d RevolutionSurface::point(double s, double theta) const {
  int i;
  double u;
  locate(s, &i, &u);
  Eigen::Vector2d g = parts[i].point(u);
  return {g[0] * std::cos(theta), g[0] * std::sin(theta), g[1]};
}

double RevolutionSurface::total_length() const {
  double len = 0.0;
  for (const auto& seg : parts) len += seg.length();
  return len;
}

RevolutionSurface make_revolution(std::vector<ProfileSegment> parts,
                                  bool closed) {
  if (parts.empty()) throw InputError("make_revolution: empty profile");
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if ((parts[i].point(1.0) - parts[i + 1].point(0.0)).norm() > 1e-9)
      throw InputError("make_revolution: profile chain is not connected");
  }
  Eigen::Vector2d first = parts.front().point(0.0);
  Eigen::Vector2d last = parts.back().point(1.0);
  if (closed) {
    if ((first - last).norm() > 1e-9)
      throw InputError("make_revolution: closed profile does not close");
  } else {
    if (std::abs(first[0]) > 1e-9 || std::abs(last[0]) > 1e-9)
      throw InputError(
          "make_revolution: open profile endpoints must sit on the axis");
  }

  RevolutionSurface surf;
  surf.parts = std::move(parts);
  surf.closed = closed;

  double total = surf.total_length();
  surf.cum.resize(surf.parts.size() + 1);
  surf.cum[0] = 0.0;
  for (size_t i = 0; i < surf.parts.size(); ++i)
    surf.cum[i + 1] = surf.cum[i] + surf.parts[i].length() / total;
  surf.cum.back() = 1.0;

  // Probe widest point; gamma1 must be nonnegative along the way.
  double best = -1.0, best_a = 0.0;
  for (const auto& seg : surf.parts) {
    for (int j = 0; j <= 64; ++j) {
      double u = j / 64.0;
      Eigen::Vector2d g = seg.point(u);
      if (g[0] < -1e-9)
        throw InputError("make_revolution: profile crosses the axis");
      if (g[0] > best) {
        best = g[0];
        Eigen::Vector2d d = seg.derivative(u);
        best_a = -d[1] / d.norm();
      }
    }
  }
  surf.orientation = best_a < 0.0 ? -1.0 : 1.0;
  return surf;
}

RevolutionSurface revolution_profile(const AnalyticShape& shape) {
  validate_shape(shape);
  using V2 = Eigen::Vector2d;
  if (const Sphere* s = std::get_if<Sphere>(&shape)) {
    return make_revolution(
        {ProfileSegment::arc(V2(0, 0), s->R, 0.5 * kPi, -0.5 * kPi)}, false);
  }
  if (const Spherocylinder* s = std::get_if<Spherocylinder>(&shape)) {
    double h = 0.5 * s->L;
    return make_revolution(
        {ProfileSegment::arc(V2(0, h), s->R, 0.5 * kPi, 0.0),
         ProfileSegment::line(V2(s->R, h), V2(s->R, -h)),
         ProfileSegment::arc(V2(0, -h), s->R, 0.0, -0.5 * kPi)},
        false);
  }
  if (const Torus* s = std::get_if<Torus>(&shape)) {
    // Two half-turns so tube top and bottom are segment endpoints.
    return make_revolution(
        {ProfileSegment::arc(V2(s->R, 0), s->r, 0.5 * kPi, -0.5 * kPi),
         ProfileSegment::arc(V2(s->R, 0), s->r, -0.5 * kPi, -1.5 * kPi)},
        true);
  }
  if (std::holds_alternative<Cube>(shape))
    throw NotC11("revolution_profile: cube is not C^{1,1}");
  throw InputError("revolution_profile: not a surface of revolution");
}

Eigen::Vector3d revolution_normal(const RevolutionSurface& surface, double s,
                                  double theta) {
  int i;
  double u;
  surface.locate(s, &i, &u);
  Eigen::Vector2d d = surface.parts[i].derivative(u);
  double len = d.norm();
  if (len < 1e-14)
    throw DegenerateParameter("revolution_normal: |gamma'| = 0");
  double a = surface.orientation * (-d[1]) / len;
  double c = surface.orientation * d[0] / len;
  return {a * std::cos(theta), a * std::sin(theta), c};
}

// ----- closest-point queries -----

namespace {

// Projection onto the boundary of the axis-aligned box [-h, h]^3 with the
// outward normal there. Interior points go to the nearest face.
SurfacePoint box_surface_project(const Eigen::Vector3d& x, double h) {
  Eigen::Vector3d c = x.cwiseMax(-h).cwiseMin(h);
  if ((x - c).norm() > 1e-14) {
    Eigen::Vector3d nu = (x - c).normalized();
    return {c, nu};
  }
  int k = 0;
  double slack = h - std::abs(x[0]);
  for (int j = 1; j < 3; ++j) {
    double sj = h - std::abs(x[j]);
    if (sj < slack) {
      slack = sj;
      k = j;
    }
  }
  Eigen::Vector3d p = x;
  double sgn = x[k] >= 0.0 ? 1.0 : -1.0;
  p[k] = sgn * h;
  Eigen::Vector3d nu = Eigen::Vector3d::Zero();
  nu[k] = sgn;
  return {p, nu};
}

}  // namespace

SurfacePoint closest_surface_point(const AnalyticShape& shape,
                                   const Eigen::Vector3d& x) {
  validate_shape(shape);
  if (const Sphere* s = std::get_if<Sphere>(&shape)) {
    double n = x.norm();
    Eigen::Vector3d nu = n > 1e-14 ? (x / n).eval() : Eigen::Vector3d(0, 0, 1);
    return {s->R * nu, nu};
  }
  if (const Spherocylinder* s = std::get_if<Spherocylinder>(&shape)) {
    double h = 0.5 * s->L;
    Eigen::Vector3d c(0, 0, std::clamp(x[2], -h, h));
    Eigen::Vector3d d = x - c;
    Eigen::Vector3d nu =
        d.norm() > 1e-14 ? d.normalized() : Eigen::Vector3d(1, 0, 0);
    return {c + s->R * nu, nu};
  }
  if (const Torus* s = std::get_if<Torus>(&shape)) {
    double rho = std::hypot(x[0], x[1]);
    Eigen::Vector3d q = rho > 1e-14
                            ? Eigen::Vector3d(s->R * x[0] / rho,
                                              s->R * x[1] / rho, 0.0)
                            : Eigen::Vector3d(s->R, 0.0, 0.0);
    Eigen::Vector3d d = x - q;
    Eigen::Vector3d nu =
        d.norm() > 1e-14 ? d.normalized() : Eigen::Vector3d(q[0] / s->R,
                                                            q[1] / s->R, 0.0);
    return {q + s->r * nu, nu};
  }
  if (const Cube* s = std::get_if<Cube>(&shape))
    return box_surface_project(x, s->R);
  const RoundedCube& s = std::get<RoundedCube>(shape);
  double a = s.R - s.eps;
  Eigen::Vector3d c = x.cwiseMax(-a).cwiseMin(a);
  Eigen::Vector3d d = x - c;
  if (d.norm() > 1e-14) {
    Eigen::Vector3d nu = d.normalized();
    return {c + s.eps * nu, nu};
  }
  SurfacePoint core = box_surface_project(x, a);
  return {core.p + s.eps * core.nu, core.nu};
}

// ----- quadrature sampling -----

namespace {

void sample_revolution(const RevolutionSurface& surf, int resolution,
                       std::vector<QuadratureSample>* out) {
  int ntheta = 2 * resolution;
  double dtheta = 2.0 * kPi / ntheta;
  for (size_t pi = 0; pi < surf.parts.size(); ++pi) {
    const auto& seg = surf.parts[pi];
    const QuadRule& rule = gauss_legendre(resolution);
    for (int i = 0; i < resolution; ++i) {
      double u = 0.5 * (rule.x[i] + 1.0);
      double wu = 0.5 * rule.w[i];
      Eigen::Vector2d g = seg.point(u);
      Eigen::Vector2d d = seg.derivative(u);
      double jac = g[0] * d.norm();
      double a = surf.orientation * (-d[1]) / d.norm();
      double c = surf.orientation * d[0] / d.norm();
      for (int j = 0; j < ntheta; ++j) {
        double theta = (j + 0.5) * dtheta;
        double ct = std::cos(theta), st = std::sin(theta);
        QuadratureSample smp;
        smp.x = {g[0] * ct, g[0] * st, g[1]};
        smp.nu = {a * ct, a * st, c};
        smp.w = jac * wu * dtheta;
        out->push_back(smp);
      }
    }
  }
}

void sample_cube(double R, int resolution, std::vector<QuadratureSample>* out) {
  double h = 2.0 * R / resolution;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      Eigen::Vector3d nu = Eigen::Vector3d::Zero();
      nu[axis] = sgn;
      int u_axis = (axis + 1) % 3, v_axis = (axis + 2) % 3;
      for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
          Eigen::Vector3d p;
          p[axis] = sgn * R;
          p[u_axis] = -R + (i + 0.5) * h;
          p[v_axis] = -R + (j + 0.5) * h;
          out->push_back({p, nu, h * h});
        }
      }
    }
  }
}

void sample_rounded_cube(const RoundedCube& s, int resolution,
                         std::vector<QuadratureSample>* out) {
  double a = s.R - s.eps, eps = s.eps;
  // Flat faces.
  double h = 2.0 * a / resolution;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      Eigen::Vector3d nu = Eigen::Vector3d::Zero();
      nu[axis] = sgn;
      int u_axis = (axis + 1) % 3, v_axis = (axis + 2) % 3;
      for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
          Eigen::Vector3d p;
          p[axis] = sgn * s.R;
          p[u_axis] = -a + (i + 0.5) * h;
          p[v_axis] = -a + (j + 0.5) * h;
          out->push_back({p, nu, h * h});
        }
      }
    }
  }
  // Edge quarter cylinders: axis k runs along the edge, the normal sweeps
  // the quadrant with signs (si, sj) in the other two axes.
  int nt = std::max(8, resolution / 2);
  double dt = 0.5 * kPi / nt;
  for (int k = 0; k < 3; ++k) {
    int i_axis = (k + 1) % 3, j_axis = (k + 2) % 3;
    for (int si = -1; si <= 1; si += 2) {
      for (int sj = -1; sj <= 1; sj += 2) {
        for (int it = 0; it < nt; ++it) {
          double t = (it + 0.5) * dt;
          Eigen::Vector3d nu = Eigen::Vector3d::Zero();
          nu[i_axis] = si * std::cos(t);
          nu[j_axis] = sj * std::sin(t);
          for (int m = 0; m < resolution; ++m) {
            Eigen::Vector3d p = eps * nu;
            p[i_axis] += si * a;
            p[j_axis] += sj * a;
            p[k] = -a + (m + 0.5) * (2.0 * a / resolution);
            out->push_back({p, nu, eps * dt * (2.0 * a / resolution)});
          }
        }
      }
    }
  }
  // Corner eighth spheres: polar angle by Gauss-Legendre, azimuth uniform.
  int np = std::max(8, resolution / 2);
  QuadRule polar = gauss_legendre_on(np, 0.0, 0.5 * kPi);
  int nq = std::max(8, resolution / 2);
  double dq = 0.5 * kPi / nq;
  for (int s1 = -1; s1 <= 1; s1 += 2) {
    for (int s2 = -1; s2 <= 1; s2 += 2) {
      for (int s3 = -1; s3 <= 1; s3 += 2) {
        Eigen::Vector3d corner(s1 * a, s2 * a, s3 * a);
        for (int ip = 0; ip < np; ++ip) {
          double phi = polar.x[ip];
          double wphi = polar.w[ip] * std::sin(phi);
          for (int iq = 0; iq < nq; ++iq) {
            double q = (iq + 0.5) * dq;
            Eigen::Vector3d nu(s1 * std::sin(phi) * std::cos(q),
                               s2 * std::sin(phi) * std::sin(q),
                               s3 * std::cos(phi));
            out->push_back({corner + eps * nu, nu, eps * eps * wphi * dq});
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<QuadratureSample> sample(const AnalyticShape& shape,
                                     int resolution) {
  validate_shape(shape);
  if (resolution < 8) throw InputError("sample: resolution must be >= 8");
  std::vector<QuadratureSample> out;
  if (const Cube* s = std::get_if<Cube>(&shape)) {
    sample_cube(s->R, resolution, &out);
  } else if (const RoundedCube* s = std::get_if<RoundedCube>(&shape)) {
    sample_rounded_cube(*s, resolution, &out);
  } else {
    sample_revolution(revolution_profile(shape), resolution, &out);
  }
  return out;
}

std::vector<QuadratureSample> sample_aligned(const AnalyticShape& shape,
                                             int resolution,
                                             const Eigen::Vector3d& align) {
  Eigen::Vector3d n = align.normalized();
  if (std::holds_alternative<Sphere>(shape)) {
    auto base = sample(shape, resolution);
    Eigen::Matrix3d R =
        Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d(0, 0, 1), n)
            .toRotationMatrix();
    for (auto& smp : base) {
      smp.x = R * smp.x;
      smp.nu = R * smp.nu;
    }
    return base;
  }
  if (std::holds_alternative<Spherocylinder>(shape) ||
      std::holds_alternative<Torus>(shape)) {
    double phi = std::atan2(n[1], n[0]);
    if (n.head<2>().norm() < 1e-14) phi = 0.0;
    Eigen::Matrix3d R =
        Eigen::AngleAxisd(phi, Eigen::Vector3d(0, 0, 1)).toRotationMatrix();
    auto base = sample(shape, resolution);
    for (auto& smp : base) {
      smp.x = R * smp.x;
      smp.nu = R * smp.nu;
    }
    return base;
  }
  return sample(shape, resolution);
}

}  // namespace qcolloid
