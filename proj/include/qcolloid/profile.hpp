#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qcolloid {

// Polar angle of the optimal boundary-layer director at rescaled depth r:
// Phi(r) = 2 atan(tan(phi0/2) exp(-k r)) with k = (3/2)^(1/4).
// Solves Phi'' = sqrt(3/2) sin(Phi) cos(Phi), Phi(0) = phi0, Phi(inf) = 0.
// phi0 must lie in [0, pi).
double optimal_profile_angle(double phi0, double r);

// dPhi/dr along the optimal profile; equals -k sin(Phi).
double optimal_profile_slope(double phi0, double r);

// Quadrature of slope^2 + sqrt(3/2) sin^2(Phi) over [0, 40].
// Agrees with 24^(1/4) (1 - cos phi0) to well below 1e-6.
double profile_energy(double phi0);

struct DecayCheck {
  double measured;  // sin^2 Phi(H)
  double bound;     // 4 tan^2(phi0/2) exp(-24^(1/4) H)
};

// measured <= bound for every H >= 0.
DecayCheck decay_bound_check(double phi0, double H);

struct RayParams {
  double xi = 1.0;      // ordering coherence length
  double eta = 1.0;     // alignment coherence length
  double kappa1 = 0.0;  // principal curvatures at the ray foot
  double kappa2 = 0.0;
  double r0 = 1.0;      // ray length
};

// Trapezoid energy of a sampled unit director along a surface-normal ray:
// density |dQ/dr|^2/2 + f/xi^2 + g/eta^2 weighted by the tube metric
// (1 + kappa1 r)(1 + kappa2 r). Samples are uniform on [0, r0];
// derivatives by central differences. Throws NonUnitDirector if any
// sample deviates from unit length by more than 1e-8.
double ray_energy(const std::vector<Eigen::Vector3d>& director_samples,
                  const RayParams& params);

}  // namespace qcolloid
