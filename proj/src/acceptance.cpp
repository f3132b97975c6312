#include "qcolloid/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qcolloid/constants.hpp"
#include "qcolloid/energy.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/mesh.hpp"
#include "qcolloid/numerics.hpp"
#include "qcolloid/orient.hpp"
#include "qcolloid/profile.hpp"
#include "qcolloid/qtensor.hpp"
#include "qcolloid/surfaces.hpp"
#include "qcolloid/tangentfield.hpp"

namespace qcolloid {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = {gauss(rng), gauss(rng), gauss(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

// ---- check 1: sphere value through every engine ----

Outcome sphere_engines() {
  AnalyticShape sphere = Sphere{1.0};
  auto mesh_samples = sample(tessellate(sphere, 256));
  const double target = 5.968925;
  std::mt19937_64 rng(0xc01d5eedull);
  double worst_exact = 0.0, worst_mesh = 0.0;
  for (int k = 0; k < 10; ++k) {
    Eigen::Vector3d n = random_unit(rng);
    double closed = e0(sphere, n, Engine::Closed).value;
    double revolution = e0(sphere, n, Engine::Revolution).value;
    double meshed = e0_quadrature(mesh_samples, n).value;
    worst_exact = std::max({worst_exact, std::abs(closed - target),
                            std::abs(revolution - target)});
    worst_mesh = std::max(worst_mesh, std::abs(meshed - target));
  }
  return {worst_exact <= 5e-6 && worst_mesh <= 1e-2,
          fmt("closed/revolution dev %.2e (tol 5e-06), mesh dev %.2e "
              "(tol 1e-02)",
              worst_exact, worst_mesh)};
}

// ---- check 2: capsule energy against the reference curve ----

// Energy minus the sphere value for Spherocylinder(1, 2), tabulated over
// |n1|; the curve is even in n1.
constexpr double kCapsuleBase = 5.968925;
struct CurvePoint {
  double n1, offset;
};
constexpr CurvePoint kCapsuleCurve[] = {
    {0.99, 9.60282},     {0.975, 9.0470157},  {0.95, 8.2881565},
    {0.925, 7.6413149},  {0.9, 7.0668152},    {0.875, 6.5459916},
    {0.85, 6.0679461},   {0.8, 5.2137358},    {0.75, 4.4678824},
    {0.7, 3.8093796},    {0.65, 3.224605},    {0.6, 2.7040743},
    {0.55, 2.2408598},   {0.5, 1.829728},     {0.45, 1.466629},
    {0.4, 1.1483766},    {0.35, 0.872438},    {0.3, 0.63679118},
    {0.25, 0.43982321},  {0.2, 0.2802611},    {0.15, 0.1571199},
    {0.1, 0.0696658},    {0.05, 0.01739},     {0.0, 0.0},
};

Outcome capsule_curve() {
  AnalyticShape capsule = Spherocylinder{1.0, 2.0};
  double worst = 0.0;
  int count = 0;
  for (const auto& row : kCapsuleCurve) {
    for (int sign : {-1, 1}) {
      if (row.n1 == 0.0 && sign < 0) continue;
      double n1 = sign * row.n1;
      Eigen::Vector3d n(n1, 0.0, std::sqrt(std::max(0.0, 1.0 - n1 * n1)));
      double e = e0(capsule, n).value;
      worst = std::max(worst, std::abs(e - (kCapsuleBase + row.offset)));
      ++count;
    }
  }
  return {worst <= 1e-3 && count == 47,
          fmt("%d points, worst dev %.2e (tol 1e-03)", count, worst)};
}

// ---- check 3: torus energy curve and its axial reduction ----

struct TorusPoint {
  double n3, e;
};

Outcome torus_curve() {
  constexpr TorusPoint rows[] = {
      {0.0, 27.602923},  {0.5, 34.269213},   {-0.5, 34.269213},
      {0.75, 43.789151}, {-0.75, 43.789151}, {1.0, 63.504403},
      {-1.0, 63.504403}};
  double worst = 0.0;
  for (const auto& row : rows)
    worst = std::max(worst, std::abs(e0_torus(2.0, 1.0, row.n3).value - row.e));
  // At |n3| = 1 the azimuthal integral collapses and the energy reduces to
  // 2 pi 24^{1/4} (4 pi - 8).
  double axial = e0_torus(2.0, 1.0, 1.0).value;
  double exact = 2.0 * kPi * kQuartRoot24 * (4.0 * kPi - 8.0);
  double axial_dev = std::abs(axial - exact);
  return {worst <= 1e-3 && axial_dev <= 1e-9,
          fmt("curve dev %.2e (tol 1e-03), axial reduction dev %.2e "
              "(tol 1e-09)",
              worst, axial_dev)};
}

// ---- check 4: critical points of the cube energy ----

struct MatchResult {
  bool ok = false;
  double worst = 0.0;
  int count = 0;
};

// Reported points of one kind must biject onto the expected set within tol.
MatchResult match_set(const OrientationReport& rep, const char* kind,
                      const std::vector<Eigen::Vector3d>& expected,
                      double tol) {
  std::vector<const CriticalPoint*> got;
  for (const CriticalPoint& p : rep.points)
    if (p.kind == kind) got.push_back(&p);
  MatchResult out;
  out.count = static_cast<int>(got.size());
  if (got.size() != expected.size()) return out;
  std::vector<bool> used(got.size(), false);
  for (const Eigen::Vector3d& e : expected) {
    int best = -1;
    double bd = 1e300;
    for (size_t i = 0; i < got.size(); ++i) {
      if (used[i]) continue;
      double d = sphere_distance(got[i]->n, e);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || bd > tol) return out;
    used[best] = true;
    out.worst = std::max(out.worst, bd);
  }
  out.ok = true;
  return out;
}

Outcome cube_census() {
  MinimizeOptions opts;
  opts.census = true;
  OrientationReport rep = minimize(Cube{1.0}, opts);

  const double s3 = 1.0 / std::sqrt(3.0);
  const double s2 = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Vector3d> minima, maxima, saddles;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) minima.emplace_back(sx * s3, sy * s3, sz * s3);
  for (int j = 0; j < 3; ++j)
    for (int s : {-1, 1}) maxima.push_back(s * Eigen::Vector3d::Unit(j));
  for (int zero = 0; zero < 3; ++zero)
    for (int sa : {-1, 1})
      for (int sb : {-1, 1}) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        v[(zero + 1) % 3] = sa * s2;
        v[(zero + 2) % 3] = sb * s2;
        saddles.push_back(v);
      }

  MatchResult mn = match_set(rep, "minimum", minima, 1e-4);
  MatchResult mx = match_set(rep, "maximum", maxima, 1e-4);
  MatchResult sd = match_set(rep, "saddle", saddles, 1e-4);
  return {mn.ok && mx.ok && sd.ok,
          fmt("minima %d/8, maxima %d/6, saddles %d/12, worst offset %.2e "
              "(tol 1e-04)",
              mn.count, mx.count, sd.count,
              std::max({mn.worst, mx.worst, sd.worst}))};
}

// ---- check 5: optimizer against known minimizer orbits ----

Outcome optimizer_ground_truth() {
  OrientationReport sc = minimize(Spherocylinder{1.0, 2.0});
  bool sc_ok = sc.points.size() == 2;
  double worst_residual = 0.0;
  int axis_up = 0, axis_down = 0;
  for (const CriticalPoint& p : sc.points) {
    sc_ok = sc_ok && p.kind == "minimum" &&
            std::abs(std::abs(p.n.z()) - 1.0) <= 1e-6 &&
            std::abs(p.energy - 5.968925) <= 1e-3 && p.residual < 1e-6;
    (p.n.z() > 0.0 ? axis_up : axis_down)++;
    worst_residual = std::max(worst_residual, p.residual);
  }
  sc_ok = sc_ok && axis_up == 1 && axis_down == 1;

  OrientationReport to = minimize(Torus{2.0, 1.0});
  bool to_ok = to.points.size() == 1;
  for (const CriticalPoint& p : to.points) {
    to_ok = to_ok && p.kind == "minimum" && std::abs(p.n.z()) <= 1e-4 &&
            std::abs(p.energy - 27.602923) <= 1e-3 && p.residual < 1e-6;
    worst_residual = std::max(worst_residual, p.residual);
  }
  return {sc_ok && to_ok,
          fmt("capsule axis pair %s, torus circle %s, worst residual %.2e "
              "(tol 1e-06)",
              sc_ok ? "ok" : "bad", to_ok ? "ok" : "bad", worst_residual)};
}

// ---- check 6: residual vs finite differences of the energy ----

Outcome gradient_consistency() {
  const AnalyticShape shapes[] = {Sphere{1.0}, Spherocylinder{1.0, 2.0},
                                  Torus{2.0, 1.0}, Cube{1.0},
                                  RoundedCube{1.0, 0.1}};
  std::mt19937_64 rng(0x6ead1e47ull);
  double worst_ratio = 0.0;
  bool ok = true;
  for (int k = 0; k < 20; ++k) {
    const AnalyticShape& shape = shapes[k % 5];
    auto samples = sample(shape, 32);
    // Stay clear of directions where some sample normal is nearly aligned
    // with n; the energy density is not smooth there. Fine sample sets leave
    // only thin clearances, so take the best of a bounded draw budget rather
    // than redrawing to a fixed floor.
    Eigen::Vector3d n = random_unit(rng);
    double best_gap = -1.0;
    for (int draw = 0; draw < 512 && best_gap <= 2e-3; ++draw) {
      Eigen::Vector3d cand = random_unit(rng);
      double gap = 1e300;
      for (const QuadratureSample& s : samples) {
        double d = s.nu.dot(cand);
        gap = std::min(gap, 1.0 - d * d);
      }
      if (gap > best_gap) {
        best_gap = gap;
        n = cand;
      }
    }
    Eigen::Vector3d t1 = any_orthogonal(n);
    Eigen::Vector3d t2 = n.cross(t1);
    Eigen::Vector3d r = kQuartRoot24 * residual(samples, n);
    auto energy = [&](const Eigen::Vector3d& m) {
      return e0_quadrature(samples, m.normalized()).value;
    };
    const double h = 1e-5;
    Eigen::Vector2d fd((energy(n + h * t1) - energy(n - h * t1)) / (2.0 * h),
                       (energy(n + h * t2) - energy(n - h * t2)) / (2.0 * h));
    Eigen::Vector2d an(r.dot(t1), r.dot(t2));
    double err = (an - fd).norm();
    double tol = std::max(1e-5, 1e-3 * fd.norm());
    worst_ratio = std::max(worst_ratio, err / tol);
    ok = ok && err <= tol;
  }
  return {ok, fmt("20 pairs, worst error/tol %.3f", worst_ratio)};
}

// ---- check 7: boundary layer profile ----

// Independent solve of the layer equation Phi'' = sqrt(3/2) sin Phi cos Phi
// with Phi(0) = phi0, Phi(40) = 0: damped Newton on the second-difference
// system. Returns the max pointwise gap to the closed-form angle.
double bvp_discrepancy(double phi0) {
  const double len = 40.0;
  const int n = 80000;
  const double h = len / n;
  std::vector<double> phi(n + 1);
  for (int i = 0; i <= n; ++i) phi[i] = phi0 * std::exp(-i * h);
  phi[n] = 0.0;

  auto sup_residual = [&](const std::vector<double>& p) {
    double m = 0.0;
    for (int i = 1; i < n; ++i) {
      double F = (p[i - 1] - 2.0 * p[i] + p[i + 1]) / (h * h) -
                 kSqrt32 * std::sin(p[i]) * std::cos(p[i]);
      m = std::max(m, std::abs(F));
    }
    return m;
  };

  std::vector<double> diag(n - 1), rhs(n - 1), step(n - 1), cand(n + 1);
  const double off = 1.0 / (h * h);
  for (int iter = 0; iter < 60; ++iter) {
    for (int i = 1; i < n; ++i) {
      rhs[i - 1] = -((phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) / (h * h) -
                     kSqrt32 * std::sin(phi[i]) * std::cos(phi[i]));
      diag[i - 1] = -2.0 / (h * h) - kSqrt32 * std::cos(2.0 * phi[i]);
    }
    // Thomas elimination with constant off-diagonals.
    std::vector<double> dmod = diag, rmod = rhs;
    for (int i = 1; i < n - 1; ++i) {
      double w = off / dmod[i - 1];
      dmod[i] -= w * off;
      rmod[i] -= w * rmod[i - 1];
    }
    step[n - 2] = rmod[n - 2] / dmod[n - 2];
    for (int i = n - 3; i >= 0; --i)
      step[i] = (rmod[i] - off * step[i + 1]) / dmod[i];

    double base = sup_residual(phi);
    double t = 1.0;
    bool moved = false;
    double moved_size = 0.0;
    for (int bt = 0; bt < 30; ++bt) {
      cand = phi;
      double biggest = 0.0;
      for (int i = 1; i < n; ++i) {
        cand[i] += t * step[i - 1];
        biggest = std::max(biggest, std::abs(t * step[i - 1]));
      }
      if (sup_residual(cand) < base) {
        phi.swap(cand);
        moved = true;
        moved_size = biggest;
        break;
      }
      t *= 0.5;
    }
    if (!moved || moved_size < 1e-12) break;
  }
  if (sup_residual(phi) > 1e-6) return 1e300;

  double worst = 0.0;
  for (int i = 0; i <= n; ++i)
    worst =
        std::max(worst, std::abs(phi[i] - optimal_profile_angle(phi0, i * h)));
  return worst;
}

Outcome profile_suite() {
  double worst_energy = 0.0;
  for (int k = 0; k < 20; ++k) {
    double phi0 = (kPi / 2.0) * k / 19.0;
    double expected = kQuartRoot24 * (1.0 - std::cos(phi0));
    worst_energy = std::max(worst_energy,
                            std::abs(profile_energy(phi0) - expected));
  }
  double worst_bvp = 0.0;
  for (double phi0 : {kPi / 2.0, 1.0, 0.6})
    worst_bvp = std::max(worst_bvp, bvp_discrepancy(phi0));
  double worst_decay = 0.0;
  for (double phi0 : {kPi / 2.0, 1.0, 0.6})
    for (double H : {2.0, 4.0, 6.0}) {
      DecayCheck c = decay_bound_check(phi0, H);
      worst_decay = std::max(worst_decay, c.measured / c.bound);
    }
  return {worst_energy <= 1e-6 && worst_bvp < 1e-6 && worst_decay <= 1.0,
          fmt("energy dev %.2e (tol 1e-06), solver gap %.2e (tol 1e-06), "
              "decay ratio %.3f (max 1)",
              worst_energy, worst_bvp, worst_decay)};
}

// ---- check 8: defect topology ----

std::vector<Eigen::Vector3d> refine_loop(
    const std::vector<Eigen::Vector3d>& loop) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(2 * loop.size());
  for (size_t i = 0; i < loop.size(); ++i) {
    out.push_back(loop[i]);
    out.push_back(0.5 * (loop[i] + loop[(i + 1) % loop.size()]));
  }
  return out;
}

Outcome defect_topology() {
  struct Case {
    AnalyticShape shape;
    double delta;
  };
  const Case cases[] = {{Sphere{1.0}, 0.3},
                        {Spherocylinder{1.0, 2.0}, 0.3},
                        {Torus{2.0, 1.0}, 0.3},
                        {RoundedCube{1.0, 0.1}, 0.05}};
  const Eigen::Vector3d dirs[] = {
      Eigen::Vector3d(0.0, 0.0, 1.0),
      Eigen::Vector3d(1.0, 1.0, 1.0).normalized()};
  bool ok = true;
  std::string sums;
  for (const Case& c : cases) {
    for (const Eigen::Vector3d& n : dirs) {
      TangentField field = build_boundary_field(c.shape, n, c.delta);
      int total = 0;
      for (const DefectRecord& d : field.defects) total += d.degree;
      int chi = euler_characteristic(c.shape);
      ok = ok && total == chi;
      sums += fmt("%s%d", sums.empty() ? "" : "/", total);

      TangentField bare = vstar_field(n);
      for (const Region& region : degenerate_regions(c.shape, n, c.delta)) {
        for (const auto* loop : {&region.loop, &region.loop2}) {
          if (loop->size() < 3) continue;
          int d1 = loop_degree(c.shape, *loop, bare);
          int d2 = loop_degree(c.shape, refine_loop(*loop), bare);
          ok = ok && d1 == d2;
        }
      }
    }
  }
  return {ok, fmt("degree sums %s, loop degrees refinement-stable %s",
                  sums.c_str(), ok ? "yes" : "no")};
}

// ---- check 9: energy of the built field converges to the infimum ----

Outcome field_convergence() {
  AnalyticShape sphere = Sphere{1.0};
  auto samples = sample(sphere, 128);
  Eigen::Vector3d n(0.0, 0.0, 1.0);
  double base = e0_sphere(1.0).value;
  double gaps[3];
  const double deltas[3] = {0.4, 0.2, 0.1};
  for (int i = 0; i < 3; ++i) {
    TangentField field = build_boundary_field(sphere, n, deltas[i]);
    gaps[i] = field_surface_energy(samples, field, n) - base;
  }
  bool ok = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 0.05 &&
            gaps[2] > -1e-8;
  return {ok, fmt("gaps %.4f > %.4f > %.4f, last < 0.05", gaps[0], gaps[1],
                  gaps[2])};
}

// ---- check 10: rounding the cube keeps minimizers and energies close ----

Outcome rounding_stability() {
  StabilityReport rep = approx_stability(1.0, {0.2, 0.1, 0.05}, 0.05);
  bool ok = rep.rows.size() == 3;
  double prev = 1e300;
  for (const StabilityRow& row : rep.rows) {
    ok = ok && row.max_min_distance <= prev + 1e-12 &&
         row.energy_gap_measured <= row.energy_gap_bound + 1e-9;
    prev = row.max_min_distance;
  }
  ok = ok && !rep.rows.empty() && rep.rows.back().max_min_distance < 0.05;
  std::string dists;
  for (const StabilityRow& row : rep.rows)
    dists += fmt("%s%.4f", dists.empty() ? "" : " >= ", row.max_min_distance);
  return {ok, fmt("minimizer distances %s (last < 0.05), energy gaps within "
                  "area bounds",
                  dists.c_str())};
}

// ---- check 11: potentials of the tensor model ----

Outcome tensor_suite() {
  const int kSamples = 100000;
  std::mt19937_64 rng(0xace17ab1eull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto rand_traceless = [&]() {
    Eigen::Matrix<double, 5, 1> c;
    for (int i = 0; i < 5; ++i) c[i] = gauss(rng);
    return from_components(c);
  };

  const Eigen::Matrix3d Qinf =
      uniaxial<double>(Eigen::Vector3d(0.0, 0.0, 1.0));

  double min_f = 1e300, min_g = 1e300;
  double min_coer_01 = 1e300, min_coer_001 = 1e300;
  double worst_gid = 0.0, worst_gamma = 0.0, worst_eig = 0.0, worst_idem = 0.0;
  long n_close = 0, n_far = 0;
  bool iff_ok = true;

  for (int i = 0; i < kSamples; ++i) {
    Eigen::Matrix3d Q;
    double d;
    for (;;) {
      int stratum = i % 10;
      if (stratum < 6) {
        Q = rand_traceless();
      } else if (stratum < 9) {
        // Hug the minimizer set at a controlled distance; too-tangent
        // perturbations are redrawn so the distance stays near the scale.
        double scale = stratum == 6 ? 1e-6 : stratum == 7 ? 1e-4 : 1e-2;
        Eigen::Matrix3d U = rand_traceless();
        Q = uniaxial<double>(random_unit(rng)) + (scale / U.norm()) * U;
        if (dist_to_N(Q) < 0.3 * scale) continue;
      } else {
        Q = std::pow(10.0, -2.0 + 2.5 * uni(rng)) * rand_traceless();
      }
      d = dist_to_N(Q);
      // The nearness threshold below sits inside this strip; keeping the
      // strip unpopulated makes the two-sided comparison decidable.
      if (d < 0.8e-5 || d > 1.2e-5) break;
    }

    double f = bulk_potential(Q);
    double g = field_potential(Q);
    min_f = std::min(min_f, f);
    min_g = std::min(min_g, g);

    bool close = d < 1e-5, small = f < 1e-10;
    if (close != small) iff_ok = false;
    (close ? n_close : n_far)++;

    double sep2 = (Q - Qinf).squaredNorm();
    if (sep2 > 1e-18) {
      min_coer_01 = std::min(min_coer_01, (f + 1e-2 * g) / sep2);
      min_coer_001 = std::min(min_coer_001, (f + 1e-4 * g) / sep2);
    }

    if (!in_B(Q)) {
      UniaxialFrame frame = decompose(Q);
      Eigen::Matrix3d P = uniaxial<double>(frame.n);
      double nz = frame.n.z();
      worst_gid = std::max(
          worst_gid,
          std::abs(field_potential(P) - kSqrt32 * (1.0 - nz * nz)));
      Spectral sp = spectral(P);
      worst_gamma =
          std::max(worst_gamma, std::abs(sp.lambda[0] - sp.lambda[1] - 1.0));
      worst_eig = std::max({worst_eig, std::abs(sp.lambda[0] - 2.0 / 3.0),
                            std::abs(sp.lambda[1] + 1.0 / 3.0),
                            std::abs(sp.lambda[2] + 1.0 / 3.0)});
      worst_idem = std::max(worst_idem, (project_uniaxial(P) - P).norm());
    }
  }

  // The vertical uniaxial ray, where the alignment potential vanishes.
  double worst_ray = 0.0;
  for (int k = 0; k <= 60; ++k)
    worst_ray = std::max(worst_ray, field_potential((0.05 * k) * Qinf));

  // Pointwise derivative bound along smooth unit curves: the vertical
  // component can not turn faster than the whole director.
  bool curve_ok = true;
  for (int c = 0; c < 10; ++c) {
    Eigen::Vector3d coef[5];
    double low = 0.0;
    do {
      for (auto& v : coef) v = {gauss(rng), gauss(rng), gauss(rng)};
      low = 1e300;
      for (int k = 0; k < 400; ++k) {
        double t = 2.0 * kPi * k / 400;
        low = std::min(low, (coef[0] + coef[1] * std::cos(t) +
                             coef[2] * std::sin(t) + coef[3] * std::cos(2 * t) +
                             coef[4] * std::sin(2 * t))
                                .norm());
      }
    } while (low < 0.3);
    auto dir = [&](double t) {
      return (coef[0] + coef[1] * std::cos(t) + coef[2] * std::sin(t) +
              coef[3] * std::cos(2 * t) + coef[4] * std::sin(2 * t))
          .normalized();
    };
    const double h = 1e-5;
    for (int k = 0; k < 200; ++k) {
      double t = 2.0 * kPi * k / 200;
      Eigen::Vector3d n0 = dir(t);
      Eigen::Vector3d nd = (dir(t + h) - dir(t - h)) / (2.0 * h);
      double den = 1.0 - n0.z() * n0.z();
      if (den < 1e-14) continue;
      if (nd.z() * nd.z() / den > nd.squaredNorm() + 1e-8) curve_ok = false;
    }
  }

  bool pass = min_f >= 0.0 && min_g >= 0.0 && iff_ok && n_close >= 5000 &&
              n_far >= 5000 && min_coer_01 > 0.0 && min_coer_001 > 0.0 &&
              worst_gid <= 1e-12 && worst_gamma <= 1e-14 &&
              worst_eig <= 1e-14 && worst_idem <= 1e-12 &&
              worst_ray <= 1e-15 && curve_ok;
  return {pass,
          fmt("min f %.1e, min g %.1e, near/far split %ld/%ld, coercivity "
              "%.1e/%.1e, projection devs %.1e/%.1e/%.1e, ray %.1e, curves %s",
              min_f, min_g, n_close, n_far, min_coer_01, min_coer_001,
              worst_gid, worst_gamma, worst_idem, worst_ray,
              curve_ok ? "ok" : "bad")};
}

}  // namespace

std::vector<CheckResult> run_acceptance(std::ostream& out) {
  struct Item {
    int id;
    const char* name;
    double budget;  // seconds; 0 = no limit
    Outcome (*fn)();
  };
  const Item items[] = {
      {1, "sphere energy across engines", 5.0, sphere_engines},
      {2, "capsule energy curve", 10.0, capsule_curve},
      {3, "torus energy curve", 10.0, torus_curve},
      {4, "cube critical point census", 30.0, cube_census},
      {5, "optimizer ground truth", 0.0, optimizer_ground_truth},
      {6, "gradient consistency", 0.0, gradient_consistency},
      {7, "boundary layer profile", 0.0, profile_suite},
      {8, "defect topology", 0.0, defect_topology},
      {9, "boundary field convergence", 0.0, field_convergence},
      {10, "rounded cube stability", 0.0, rounding_stability},
      {11, "tensor potential suite", 60.0, tensor_suite},
  };
  std::vector<CheckResult> results;
  for (const Item& item : items) {
    CheckResult r;
    r.id = item.id;
    r.name = item.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = item.fn();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    if (item.budget > 0.0 && r.seconds > item.budget) {
      r.pass = false;
      r.detail += fmt("%sover the %.0f s budget", r.detail.empty() ? "" : "; ",
                      item.budget);
    }
    char line[640];
    std::snprintf(line, sizeof line, "%s  check %2d: %-32s (%7.2f s)  %s\n",
                  r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.detail.c_str());
    out << line;
    results.push_back(r);
  }
  return results;
}

}  // namespace qcolloid
