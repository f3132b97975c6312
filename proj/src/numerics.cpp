#include "qcolloid/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"

namespace qcolloid {

namespace {

QuadRule compute_gauss_legendre(int n) {
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n at x.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadRule gauss_legendre_on(int n, double a, double b) {
  const QuadRule& base = gauss_legendre(n);
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = mid + half * base.x[i];
    rule.w[i] = half * base.w[i];
  }
  return rule;
}

namespace {

double simpson(double fa, double fm, double fb, double h6) {
  return h6 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double m, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, (m - a) / 6.0);
  double right = simpson(fm, frm, fb, (b - m) / 6.0);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(fa, fm, fb, (b - a) / 6.0);
  return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

namespace {

// Positive half of the tanh-sinh table for a given side count. c[k] scales
// the half-width into the node's offset from the nearer endpoint, which
// avoids cancellation there; w[k] is the matching weight.
struct TanhSinhRule {
  double w0;
  std::vector<double> c;
  std::vector<double> w;
};

TanhSinhRule compute_tanh_sinh(int side) {
  TanhSinhRule rule;
  double h = 4.0 / side;
  rule.w0 = 0.5 * kPi;
  rule.c.resize(side);
  rule.w.resize(side);
  for (int k = 1; k <= side; ++k) {
    double sh = 0.5 * kPi * std::sinh(h * k);
    double ch = std::cosh(sh);
    rule.c[k - 1] = 2.0 / (std::exp(2.0 * sh) + 1.0);
    rule.w[k - 1] = 0.5 * kPi * std::cosh(h * k) / (ch * ch);
  }
  return rule;
}

const TanhSinhRule& tanh_sinh_rule(int side) {
  static std::mutex mu;
  static std::map<int, TanhSinhRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(side);
  if (it == cache.end()) it = cache.emplace(side, compute_tanh_sinh(side)).first;
  return it->second;
}

}  // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int side) {
  if (side < 1) throw InputError("tanh_sinh needs at least one node per side");
  const TanhSinhRule& rule = tanh_sinh_rule(side);
  double r = 0.5 * (b - a);
  double h = 4.0 / side;
  double lo = std::min(a, b), hi = std::max(a, b);
  NeumaierSum acc;
  acc.add(rule.w0 * f(0.5 * (a + b)));
  for (int k = 0; k < side; ++k) {
    double off = r * rule.c[k];
    // Extreme nodes round onto the endpoints where the integrand may be
    // singular; their weights are far below double precision anyway.
    double xa = a + off;
    if (xa > lo && xa < hi) acc.add(rule.w[k] * f(xa));
    double xb = b - off;
    if (xb > lo && xb < hi) acc.add(rule.w[k] * f(xb));
  }
  return r * h * acc.value();
}

std::vector<Eigen::Vector3d> fibonacci_directions(int n, bool hemisphere) {
  if (n < 1) throw InputError("fibonacci_directions: n must be >= 1");
  std::vector<Eigen::Vector3d> out;
  out.reserve(n);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < n; ++i) {
    // z stratified over [-1,1] (or [0,1] for the hemisphere), azimuth from
    // the golden ratio rotation.
    double u = (i + 0.5) / n;
    double z = hemisphere ? u : 2.0 * u - 1.0;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = 2.0 * kPi * std::fmod(i / golden, 1.0);
    out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return out;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

Eigen::Vector3d any_orthogonal(const Eigen::Vector3d& v) {
  if (v.norm() <= 0.0) throw InputError("any_orthogonal: zero vector");
  int k = 0;
  if (std::abs(v[1]) < std::abs(v[k])) k = 1;
  if (std::abs(v[2]) < std::abs(v[k])) k = 2;
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[k] = 1.0;
  return v.cross(e).normalized();
}

double sphere_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  // atan2 form is accurate for both near-parallel and near-antipodal pairs.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace qcolloid
