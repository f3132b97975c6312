#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace qcolloid {

// Compensated (Neumaier) accumulator. Summation order is fixed by the
// caller, so results are bit-reproducible for a fixed input sequence.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadRule {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
};

// Gauss-Legendre rule on [-1, 1]. Nodes from Newton iteration on the
// Legendre recurrence; cached per order. n >= 1.
const QuadRule& gauss_legendre(int n);

// Same rule mapped to [a, b].
QuadRule gauss_legendre_on(int n, double a, double b);

// Adaptive Simpson on [a, b]. Recurses until the local error estimate is
// below tol; depth capped (integrable kinks converge well before the cap).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

// Tanh-sinh rule on [a, b] with 2 * side + 1 nodes. Converges geometrically
// for integrands analytic inside the interval, algebraic endpoint
// singularities included; nodes that round onto an endpoint are skipped.
// Deterministic for a fixed side count.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int side);

// Near-uniform unit direction set; hemisphere=true keeps z >= 0.
// Deterministic for fixed n.
std::vector<Eigen::Vector3d> fibonacci_directions(int n, bool hemisphere);

// Reduce angle to (-pi, pi].
double wrap_angle(double a);

// Some unit vector orthogonal to v (deterministic choice), |v| > 0.
Eigen::Vector3d any_orthogonal(const Eigen::Vector3d& v);

// Geodesic distance on the unit sphere between unit vectors.
double sphere_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

}  // namespace qcolloid
