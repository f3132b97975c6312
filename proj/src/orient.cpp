#include "qcolloid/orient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>

#include "qcolloid/constants.hpp"
#include "qcolloid/energy.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {

namespace {

Eigen::Vector3d retract(const Eigen::Vector3d& n, const Eigen::Vector3d& v) {
  return (n + v).normalized();
}

// Natural/clamped cubic interpolant used to cache the axisymmetric energy
// profile of quadrature-backed shapes, so descents stay cheap and smooth.
struct Spline1D {
  std::vector<double> x, y, m;

  double eval(double t) const {
    t = std::clamp(t, x.front(), x.back());
    size_t k = std::upper_bound(x.begin(), x.end(), t) - x.begin();
    k = std::clamp<size_t>(k, 1, x.size() - 1) - 1;
    double h = x[k + 1] - x[k];
    double s = t - x[k];
    return y[k] +
           s * ((y[k + 1] - y[k]) / h - h * (2.0 * m[k] + m[k + 1]) / 6.0) +
           s * s * m[k] / 2.0 + s * s * s * (m[k + 1] - m[k]) / (6.0 * h);
  }
};

// Second-derivative spline system, clamped (zero slope) on the left and
// natural on the right; solved by the Thomas algorithm.
Spline1D make_spline_clamped_left(std::vector<double> xs,
                                  std::vector<double> ys) {
  const size_t n = xs.size();
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  double h = xs[1] - xs[0];
  b[0] = h / 3.0;
  c[0] = h / 6.0;
  d[0] = (ys[1] - ys[0]) / h;
  for (size_t k = 1; k + 1 < n; ++k) {
    a[k] = h / 6.0;
    b[k] = 2.0 * h / 3.0;
    c[k] = h / 6.0;
    d[k] = (ys[k + 1] - 2.0 * ys[k] + ys[k - 1]) / h;
  }
  b[n - 1] = 1.0;
  for (size_t k = 1; k < n; ++k) {
    double w = a[k] / b[k - 1];
    b[k] -= w * c[k - 1];
    d[k] -= w * d[k - 1];
  }
  std::vector<double> m(n);
  m[n - 1] = d[n - 1] / b[n - 1];
  for (size_t k = n - 1; k-- > 0;) m[k] = (d[k] - c[k] * m[k + 1]) / b[k];
  return {std::move(xs), std::move(ys), std::move(m)};
}

struct EnergyFn {
  std::function<double(const Eigen::Vector3d&)> value;
  double h_grad = 1e-6;
};

EnergyFn make_energy_fn(const AnalyticShape& shape) {
  if (const Torus* t = std::get_if<Torus>(&shape)) {
    const int knots = 257;
    std::vector<double> xs(knots), ys(knots);
    for (int k = 0; k < knots; ++k) {
      xs[k] = static_cast<double>(k) / (knots - 1);
      ys[k] = e0_torus(t->R, t->r, xs[k], 16).value;
    }
    auto spline = std::make_shared<Spline1D>(
        make_spline_clamped_left(std::move(xs), std::move(ys)));
    EnergyFn fn;
    fn.value = [spline](const Eigen::Vector3d& n) {
      return spline->eval(std::min(std::abs(n.z()), 1.0));
    };
    return fn;
  }
  EnergyFn fn;
  AnalyticShape copy = shape;
  fn.value = [copy](const Eigen::Vector3d& n) {
    return e0(copy, n, Engine::Closed).value;
  };
  return fn;
}

Eigen::Vector2d fd_grad(const EnergyFn& fn, const Eigen::Vector3d& n,
                        const Eigen::Vector3d& t1, const Eigen::Vector3d& t2,
                        double h) {
  return {(fn.value(retract(n, h * t1)) - fn.value(retract(n, -h * t1))) /
              (2.0 * h),
          (fn.value(retract(n, h * t2)) - fn.value(retract(n, -h * t2))) /
              (2.0 * h)};
}

// sign = +1 descends the energy, -1 ascends. Regularized Newton steps on
// the tangent chart; a backtracking gradient step picks up whatever the
// Newton model rejects. Plain gradient descent is not enough here: its
// contraction factor can sit arbitrarily close to 1, which starves the
// iteration cap on perfectly smooth shapes.
Eigen::Vector3d descend(const EnergyFn& fn, Eigen::Vector3d n, int sign,
                        int max_iters, double grad_tol) {
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::Vector3d t1 = any_orthogonal(n);
    Eigen::Vector3d t2 = n.cross(t1);
    Eigen::Vector2d g = sign * fd_grad(fn, n, t1, t2, fn.h_grad);
    double gn = g.norm();
    if (gn < grad_tol) return n;
    double f0 = sign * fn.value(n);
    bool moved = false;

    const double h = 1e-4;
    auto fc = [&](double p, double q) {
      return sign * fn.value(retract(n, p * t1 + q * t2));
    };
    double h11 = (fc(h, 0) - 2.0 * f0 + fc(-h, 0)) / (h * h);
    double h22 = (fc(0, h) - 2.0 * f0 + fc(0, -h)) / (h * h);
    double h12 =
        (fc(h, h) - fc(h, -h) - fc(-h, h) + fc(-h, -h)) / (4.0 * h * h);
    Eigen::Matrix2d hess;
    hess << h11, h12, h12, h22;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
    // Floor the eigenvalues so flat or indefinite directions still give a
    // finite, correctly signed step.
    double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    double lfloor = std::max(1e-6, 1e-3 * lmax);
    Eigen::Vector2d step = Eigen::Vector2d::Zero();
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d v = es.eigenvectors().col(j);
      step -= (g.dot(v) / std::max(es.eigenvalues()[j], lfloor)) * v;
    }
    double sn = step.norm();
    if (sn > 0.5) step *= 0.5 / sn;
    if (sn > 1e-14) {
      Eigen::Vector3d cand = retract(n, step.x() * t1 + step.y() * t2);
      if (sign * fn.value(cand) < f0) {
        n = cand;
        moved = true;
      }
    }

    if (!moved) {
      Eigen::Vector3d dir = -(g.x() * t1 + g.y() * t2);
      double t = 0.25 / (1.0 + gn);
      for (int bt = 0; bt < 48; ++bt) {
        Eigen::Vector3d cand = retract(n, t * dir);
        // The decrease quantum must stay representable at f0's scale, or the
        // test passes on zero progress and the loop spins at the noise floor.
        double want = std::max(1e-4 * t * gn * gn, std::abs(f0) * 1e-15);
        if (sign * fn.value(cand) <= f0 - want) {
          n = cand;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved || t * gn < 1e-13) return n;
    }
  }
  throw NoConvergence("orientation descent exceeded the iteration cap");
}

// Replaces near-symmetric components (zeros, matched magnitudes) by their
// exact symmetric values when the energy does not get worse for the search
// direction at hand.
Eigen::Vector3d snap_symmetric(const EnergyFn& fn, const Eigen::Vector3d& n,
                               int sign) {
  const double tol = 3e-5;
  Eigen::Vector3d s = n;
  for (int j = 0; j < 3; ++j)
    if (std::abs(s[j]) < tol) s[j] = 0.0;
  // Chain near-equal magnitudes into groups and set each group to its mean.
  // Pairwise averaging would leave a full diagonal with unequal components.
  int group[3] = {-1, -1, -1};
  int ngroups = 0;
  for (int i = 0; i < 3; ++i) {
    if (s[i] == 0.0) continue;
    if (group[i] < 0) group[i] = ngroups++;
    for (int j = i + 1; j < 3; ++j)
      if (s[j] != 0.0 && group[j] < 0 &&
          std::abs(std::abs(s[i]) - std::abs(s[j])) < tol)
        group[j] = group[i];
  }
  for (int gid = 0; gid < ngroups; ++gid) {
    double sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < 3; ++i)
      if (group[i] == gid) {
        sum += std::abs(s[i]);
        ++cnt;
      }
    if (cnt < 2) continue;
    for (int i = 0; i < 3; ++i)
      if (group[i] == gid) s[i] = std::copysign(sum / cnt, s[i]);
  }
  double len = s.norm();
  if (len < 0.5) return n;
  s /= len;
  if ((s - n).norm() < 1e-15) return n;
  double e0v = fn.value(n);
  if (sign * (fn.value(s) - e0v) <= 1e-9 * (1.0 + std::abs(e0v))) return s;
  return n;
}

struct Candidate {
  Eigen::Vector3d n;
  int provenance;  // +1 descent, -1 ascent, 0 Newton
};

std::vector<int> pick_starts(const std::vector<Eigen::Vector3d>& seeds,
                             const std::vector<double>& score, int count,
                             double min_sep) {
  std::vector<int> order(seeds.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&score](int a, int b) { return score[a] < score[b]; });
  std::vector<int> chosen;
  for (int idx : order) {
    bool far_enough = true;
    for (int c : chosen)
      if (sphere_distance(seeds[idx], seeds[c]) < min_sep) {
        far_enough = false;
        break;
      }
    if (far_enough) chosen.push_back(idx);
    if (static_cast<int>(chosen.size()) >= count) break;
  }
  return chosen;
}

std::string classify(const EnergyFn& fn, const Eigen::Vector3d& n,
                     int provenance) {
  Eigen::Vector3d t1 = any_orthogonal(n);
  Eigen::Vector3d t2 = n.cross(t1);
  const double h = 1e-4;
  auto f = [&](double p, double q) {
    return fn.value(retract(n, p * t1 + q * t2));
  };
  double f0 = fn.value(n);
  double h11 = (f(h, 0) - 2.0 * f0 + f(-h, 0)) / (h * h);
  double h22 = (f(0, h) - 2.0 * f0 + f(0, -h)) / (h * h);
  double h12 =
      (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  double tr = h11 + h22, det = h11 * h22 - h12 * h12;
  double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  double l1 = 0.5 * (tr - disc), l2 = 0.5 * (tr + disc);
  double tol = 1e-4 * std::max({1.0, std::abs(l1), std::abs(l2)});
  if (l1 >= -tol && l2 > tol) return "minimum";
  if (l2 <= tol && l1 < -tol) return "maximum";
  if (l1 < -tol && l2 > tol) return "saddle";
  if (provenance > 0) return "minimum";
  if (provenance < 0) return "maximum";
  return "saddle";
}

bool is_revolution(const AnalyticShape& shape) {
  return std::holds_alternative<Sphere>(shape) ||
         std::holds_alternative<Spherocylinder>(shape) ||
         std::holds_alternative<Torus>(shape);
}

std::string orbit_note(const AnalyticShape& shape, const Eigen::Vector3d& n) {
  char buf[64];
  if (is_revolution(shape)) {
    double z = std::abs(n.z());
    if (z >= 1.0 - 1e-6) return "axis pair +-e3";
    if (z <= 1e-6) return "equatorial circle n3=0";
    std::snprintf(buf, sizeof buf, "circle |n3|=%.6f", z);
    return buf;
  }
  int zeros = 0, big = 0;
  double maxc = n.cwiseAbs().maxCoeff();
  for (int j = 0; j < 3; ++j) {
    if (std::abs(n[j]) < 1e-6) ++zeros;
    if (std::abs(std::abs(n[j]) - maxc) < 1e-6) ++big;
  }
  if (zeros == 2) return "face axis orbit (6)";
  if (zeros == 1 && big == 2) return "edge diagonal orbit (12)";
  if (zeros == 0 && big == 3) return "corner diagonal orbit (8)";
  std::snprintf(buf, sizeof buf, "orbit of (%.4f, %.4f, %.4f)", n.x(), n.y(),
                n.z());
  return buf;
}

}  // namespace

Eigen::Vector3d residual(const std::vector<QuadratureSample>& samples,
                         const Eigen::Vector3d& n) {
  Eigen::Vector3d nn = n.normalized();
  NeumaierSum acc[3];
  for (const QuadratureSample& s : samples) {
    double d = s.nu.dot(nn);
    double g2 = 1.0 - d * d;
    if (g2 < 1e-12) continue;
    Eigen::Vector3d contrib = (d * s.nu - d * d * nn) / std::sqrt(g2);
    for (int j = 0; j < 3; ++j) acc[j].add(s.w * contrib[j]);
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

double residual_norm(const AnalyticShape& shape, const Eigen::Vector3d& n,
                     int resolution) {
  Eigen::Vector3d nn = n.normalized();
  return residual(sample_aligned(shape, resolution, nn), nn).norm();
}

OrientationReport minimize(const AnalyticShape& shape,
                           const MinimizeOptions& opts) {
  validate_shape(shape);
  OrientationReport report;

  if (std::holds_alternative<Sphere>(shape)) {
    Eigen::Vector3d n(0.0, 0.0, 1.0);
    CriticalPoint cp{n, e0(shape, n).value,
                     residual_norm(shape, n, opts.resolution), "minimum",
                     "energy constant over directions"};
    report.tolerance = cp.residual + 1e-12;
    report.points = {cp};
    return report;
  }

  EnergyFn fn = make_energy_fn(shape);
  std::vector<Eigen::Vector3d> seeds =
      fibonacci_directions(opts.seeds, true);
  std::vector<double> escore(seeds.size());
  for (size_t i = 0; i < seeds.size(); ++i) escore[i] = fn.value(seeds[i]);

  std::vector<Candidate> cands;
  for (int idx : pick_starts(seeds, escore, opts.starts, 0.25))
    cands.push_back(
        {snap_symmetric(fn,
                        descend(fn, seeds[idx], +1, opts.max_iters,
                                opts.grad_tol),
                        +1),
         +1});
  if (opts.census) {
    std::vector<double> neg(escore.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -escore[i];
    for (int idx : pick_starts(seeds, neg, opts.starts, 0.25))
      cands.push_back(
          {snap_symmetric(fn,
                          descend(fn, seeds[idx], -1, opts.max_iters,
                                  opts.grad_tol),
                          -1),
           -1});
    // Newton on the chart gradient picks up the saddles between basins.
    for (size_t i = 0; i < seeds.size(); i += 8) {
      Eigen::Vector3d n = seeds[i];
      bool converged = false;
      for (int it = 0; it < 80; ++it) {
        Eigen::Vector3d t1 = any_orthogonal(n);
        Eigen::Vector3d t2 = n.cross(t1);
        Eigen::Vector2d g = fd_grad(fn, n, t1, t2, fn.h_grad);
        if (g.norm() < 1e-7) {
          converged = true;
          break;
        }
        const double h = 1e-3;
        auto f = [&](double p, double q) {
          return fn.value(retract(n, p * t1 + q * t2));
        };
        double f0 = fn.value(n);
        double h11 = (f(h, 0) - 2.0 * f0 + f(-h, 0)) / (h * h);
        double h22 = (f(0, h) - 2.0 * f0 + f(0, -h)) / (h * h);
        double h12 =
            (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
        double det = h11 * h22 - h12 * h12;
        if (std::abs(det) < 1e-12 * (1.0 + h11 * h11 + h22 * h22)) break;
        Eigen::Vector2d step(-(h22 * g.x() - h12 * g.y()) / det,
                             -(h11 * g.y() - h12 * g.x()) / det);
        double sn = step.norm();
        if (sn > 0.2) step *= 0.2 / sn;
        n = retract(n, step.x() * t1 + step.y() * t2);
        if (sn < 1e-12) {
          converged = true;
          break;
        }
      }
      if (converged)
        cands.push_back({snap_symmetric(fn, n, 0), 0});
    }
  }

  // Antipodal copies carry the same energy; keep both orientations.
  size_t base = cands.size();
  for (size_t i = 0; i < base; ++i)
    cands.push_back({-cands[i].n, cands[i].provenance});

  std::vector<Candidate> reps;
  for (const Candidate& c : cands) {
    bool merged = false;
    for (Candidate& r : reps)
      if (sphere_distance(c.n, r.n) < 1e-3) {
        merged = true;
        break;
      }
    if (!merged) reps.push_back(c);
  }

  if (is_revolution(shape)) {
    // Orientations at one latitude form a single orbit; keep a canonical
    // representative per latitude.
    std::map<long, Candidate> by_lat;
    for (const Candidate& c : reps) {
      long key = std::lround(c.n.z() * 1e6);
      double zh = std::abs(c.n.z()) >= 1.0 - 1e-9 ? 1.0 : std::abs(c.n.z());
      Eigen::Vector3d canon(std::sqrt(std::max(0.0, 1.0 - zh * zh)), 0.0,
                            std::copysign(zh, c.n.z()));
      if (zh == 0.0) canon.z() = 0.0;
      by_lat.emplace(key, Candidate{canon, c.provenance});
    }
    reps.clear();
    for (auto& [key, c] : by_lat) reps.push_back(c);
  }

  for (const Candidate& c : reps) {
    CriticalPoint cp;
    cp.n = c.n;
    cp.energy = e0(shape, c.n).value;
    cp.residual = residual_norm(shape, c.n, opts.resolution);
    cp.kind = classify(fn, c.n, c.provenance);
    cp.orbit = orbit_note(shape, c.n);
    if (!opts.census && cp.kind != "minimum") continue;
    report.points.push_back(std::move(cp));
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return std::lexicographical_compare(
                  a.n.data(), a.n.data() + 3, b.n.data(), b.n.data() + 3);
            });
  double worst = 0.0;
  for (const CriticalPoint& p : report.points)
    worst = std::max(worst, p.residual);
  report.tolerance = worst + 1e-12;
  return report;
}

ScanGrid scan(const AnalyticShape& shape, const std::string& param, double lo,
              double hi, int count) {
  validate_shape(shape);
  if (count < 2) throw InputError("scan needs at least two grid points");
  if (!(lo < hi)) throw InputError("scan range must be increasing");
  ScanGrid grid;
  grid.param = param;
  auto push = [&](double p, double q, const Eigen::Vector3d& n) {
    grid.c1.push_back(p);
    grid.c2.push_back(q);
    grid.dirs.push_back(n);
    grid.energy.push_back(e0(shape, n).value);
  };
  if (param == "n1" || param == "n3") {
    for (int k = 0; k < count; ++k) {
      double p = lo + (hi - lo) * k / (count - 1);
      if (std::abs(p) > 1.0) throw InputError("components must lie in [-1, 1]");
      double w = std::sqrt(std::max(0.0, 1.0 - p * p));
      Eigen::Vector3d n = (param == "n1") ? Eigen::Vector3d(p, 0.0, w)
                                          : Eigen::Vector3d(w, 0.0, p);
      push(p, 0.0, n);
    }
    return grid;
  }
  if (param == "disk") {
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) {
        double p = lo + (hi - lo) * i / (count - 1);
        double q = lo + (hi - lo) * j / (count - 1);
        double rest = 1.0 - p * p - q * q;
        if (rest < 0.0) continue;
        push(p, q, Eigen::Vector3d(p, q, std::sqrt(rest)));
      }
    return grid;
  }
  throw InputError("unknown scan parameter: " + param);
}

StabilityReport approx_stability(double R, const std::vector<double>& eps_list,
                                 double delta) {
  if (!(R > 0.0)) throw InputError("cube half-side must be positive");
  if (eps_list.empty()) throw InputError("need at least one rounding radius");
  for (size_t i = 0; i + 1 < eps_list.size(); ++i)
    if (!(eps_list[i] > eps_list[i + 1]))
      throw InputError("rounding radii must decrease strictly");
  if (!(delta > 0.0)) throw InputError("distance target must be positive");

  AnalyticShape cube = Cube{R};
  EnergyFn cube_fn;
  cube_fn.value = [R](const Eigen::Vector3d& n) {
    return e0_cube(2.0 * R, n).value;
  };
  // The sharp cube's minimizers, found on its own closed form.
  std::vector<Eigen::Vector3d> seeds = fibonacci_directions(2048, true);
  std::vector<double> escore(seeds.size());
  for (size_t i = 0; i < seeds.size(); ++i)
    escore[i] = cube_fn.value(seeds[i]);
  std::vector<Eigen::Vector3d> exact;
  for (int idx : pick_starts(seeds, escore, 32, 0.25)) {
    Eigen::Vector3d n =
        snap_symmetric(cube_fn, descend(cube_fn, seeds[idx], +1, 500, 1e-8),
                       +1);
    for (const Eigen::Vector3d& cand : {n, Eigen::Vector3d(-n)}) {
      bool dup = false;
      for (const Eigen::Vector3d& e : exact)
        if (sphere_distance(cand, e) < 1e-3) dup = true;
      if (!dup) exact.push_back(cand);
    }
  }

  std::mt19937_64 rng(20240907ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::Vector3d> probes(500);
  for (Eigen::Vector3d& p : probes) {
    do {
      p = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    } while (p.norm() < 1e-6);
    p.normalize();
  }

  StabilityReport report;
  report.delta = delta;
  double prev = 1e300;
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps < R))
      throw InputError("rounding radius must satisfy 0 < eps < R");
    AnalyticShape rc = RoundedCube{R, eps};
    MinimizeOptions opts;
    OrientationReport found = minimize(rc, opts);
    double dmax = 0.0;
    for (const CriticalPoint& p : found.points) {
      if (p.kind != "minimum") continue;
      double dmin = 1e300;
      for (const Eigen::Vector3d& e : exact)
        dmin = std::min(dmin, sphere_distance(p.n, e));
      dmax = std::max(dmax, dmin);
    }
    double bound = kQuartRoot24 * symmetric_difference_area(cube, rc);
    double measured = 0.0;
    for (const Eigen::Vector3d& n : probes)
      measured = std::max(
          measured, std::abs(e0(rc, n).value - e0(cube, n).value));
    if (measured > bound + 1e-9)
      throw StabilityViolation("energy gap exceeds the area bound");
    if (dmax > prev + 1e-12)
      throw StabilityViolation(
          "minimizer distance grew as the rounding shrank");
    prev = dmax;
    report.rows.push_back({eps, dmax, bound, measured});
  }
  if (report.rows.back().max_min_distance >= delta)
    throw StabilityViolation(
        "minimizers did not settle near the sharp cube's");
  return report;
}

}  // namespace qcolloid
