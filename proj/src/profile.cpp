#include "qcolloid/profile.hpp"

#include <cmath>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"
#include "qcolloid/qtensor.hpp"

namespace qcolloid {

namespace {

constexpr double kRayCutoff = 40.0;

void check_phi0(double phi0) {
  if (!(phi0 >= 0.0) || phi0 >= kPi)
    throw DomainError("profile: phi0 must lie in [0, pi)");
}

double density(double phi0, double r) {
  double sl = optimal_profile_slope(phi0, r);
  double s = std::sin(optimal_profile_angle(phi0, r));
  return sl * sl + kSqrt32 * s * s;
}

double trapezoid_energy(double phi0, int n) {
  NeumaierSum acc;
  double h = kRayCutoff / n;
  for (int i = 0; i <= n; ++i) {
    double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc.add(w * density(phi0, i * h));
  }
  return acc.value() * h;
}

}  // namespace

double optimal_profile_angle(double phi0, double r) {
  check_phi0(phi0);
  return 2.0 * std::atan(std::tan(0.5 * phi0) * std::exp(-kProfileRate * r));
}

double optimal_profile_slope(double phi0, double r) {
  check_phi0(phi0);
  double T = std::tan(0.5 * phi0) * std::exp(-kProfileRate * r);
  // d/dr [2 atan(T exp(-k r))] collapses to -k sin(Phi).
  return -2.0 * kProfileRate * T / (1.0 + T * T);
}

double profile_energy(double phi0) {
  check_phi0(phi0);
  const int n = 10000;
  double fine = trapezoid_energy(phi0, n);
  double coarse = trapezoid_energy(phi0, n / 2);
  // Half-resolution pairing cancels the leading trapezoid error term.
  return fine + (fine - coarse) / 3.0;
}

DecayCheck decay_bound_check(double phi0, double H) {
  check_phi0(phi0);
  if (H < 0.0) throw DomainError("decay_bound_check: H must be >= 0");
  double s = std::sin(optimal_profile_angle(phi0, H));
  double T = std::tan(0.5 * phi0);
  DecayCheck out;
  out.measured = s * s;
  out.bound = 4.0 * T * T * std::exp(-kQuartRoot24 * H);
  return out;
}

double ray_energy(const std::vector<Eigen::Vector3d>& director_samples,
                  const RayParams& params) {
  const auto& n = director_samples;
  if (n.size() < 2) throw InputError("ray_energy: need at least 2 samples");
  if (!(params.xi > 0.0) || !(params.eta > 0.0) || !(params.r0 > 0.0))
    throw InputError("ray_energy: xi, eta, r0 must be positive");
  for (const auto& v : n)
    if (std::abs(v.norm() - 1.0) > 1e-8)
      throw NonUnitDirector("ray_energy: non-unit director sample");

  const int m = static_cast<int>(n.size());
  const double h = params.r0 / (m - 1);
  std::vector<Eigen::Matrix3d> Q(m);
  for (int i = 0; i < m; ++i) Q[i] = uniaxial<double>(n[i]);

  NeumaierSum acc;
  for (int i = 0; i < m; ++i) {
    Eigen::Matrix3d dQ;
    if (i == 0)
      dQ = (Q[1] - Q[0]) / h;
    else if (i == m - 1)
      dQ = (Q[m - 1] - Q[m - 2]) / h;
    else
      dQ = (Q[i + 1] - Q[i - 1]) / (2.0 * h);
    double r = i * h;
    double metric = (1.0 + params.kappa1 * r) * (1.0 + params.kappa2 * r);
    double dens = 0.5 * dQ.squaredNorm() +
                  bulk_potential(Q[i]) / (params.xi * params.xi) +
                  field_potential(Q[i]) / (params.eta * params.eta);
    double w = (i == 0 || i == m - 1) ? 0.5 : 1.0;
    acc.add(w * dens * metric);
  }
  return acc.value() * h;
}

}  // namespace qcolloid
