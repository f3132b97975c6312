#include "qcolloid/qtensor.hpp"

#include <random>

namespace qcolloid {

namespace {

Eigen::Matrix3d random_traceless(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix<double, 5, 1> v;
  for (int i = 0; i < 5; ++i) v[i] = gauss(rng);
  return from_components(v);
}

}  // namespace

double lipschitz_g_estimate(double q0, int samples) {
  if (!(q0 > 0.0) || q0 >= kSqrt23)
    throw DomainError("lipschitz_g_estimate: q0 must lie in (0, sqrt(2/3))");
  if (samples < 1) throw InputError("lipschitz_g_estimate: samples >= 1");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> radius(kSqrt23 - q0, kSqrt23 + q0);
  const double h = 1e-5;
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    Eigen::Matrix3d U = random_traceless(rng);
    U /= U.norm();
    Eigen::Matrix3d Q = radius(rng) * U;
    Eigen::Matrix3d D = random_traceless(rng);
    D *= h / D.norm();
    double slope = std::abs(field_potential(Q + D) - field_potential(Q)) / h;
    if (slope > sup) sup = slope;
  }
  return sup;
}

}  // namespace qcolloid
