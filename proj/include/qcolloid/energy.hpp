#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qcolloid/surfaces.hpp"

namespace qcolloid {

enum class Engine { Auto, Closed, Revolution, Mesh };

Engine parse_engine(const std::string& name);

struct EnergyValue {
  double value = 0.0;
  std::string engine;  // "closed-form" | "revolution" | "quadrature"
  double est_error = 0.0;
};

// Sum of w * 24^{1/4} * (1 - sqrt(max(0, 1 - (nu.n)^2))) over the samples.
// The max guards roundoff where nu.n = +-1. est_error is 0: a bare sample
// set carries no refinement estimate.
EnergyValue e0_quadrature(const std::vector<QuadratureSample>& samples,
                          const Eigen::Vector3d& n);

// Tensor-product rule on the generating profile: composite Gauss-Legendre
// along arc length, graded toward the latitudes where the normal meets +-n
// (the integrand loses smoothness there), adaptive Simpson in azimuth.
// resolution = nodes per graded panel.
EnergyValue e0_revolution(const RevolutionSurface& surface,
                          const Eigen::Vector3d& n, int resolution = 32);

EnergyValue e0_sphere(double R);

// Transverse component u = sqrt(n1^2 + n2^2) after axial reduction. Closed
// elliptic form for u <= 1 - 1e-3; direct 1-D quadrature above (the elliptic
// argument u^2/(1-u^2) diverges as u -> 1).
EnergyValue e0_spherocylinder(double R, double L, const Eigen::Vector3d& n);

// Double quadrature of the tube-angle form; even in n3 by construction.
EnergyValue e0_torus(double R, double r, double n3, int resolution = 32);

// Box of side R. The geometric Cube{R} has side 2R, so the dispatcher calls
// e0_cube(2R, n).
EnergyValue e0_cube(double R, const Eigen::Vector3d& n);

// Exact piecewise form: flat faces + edge quarter-cylinders + corner
// eighth-spheres of the offset surface.
EnergyValue e0_rounded_cube(double R, double eps, const Eigen::Vector3d& n);

// Engine dispatch. Auto picks the closed form for every analytic shape.
// resolution <= 0 selects a per-engine default (32 revolution, 64 mesh).
EnergyValue e0(const AnalyticShape& shape, const Eigen::Vector3d& n,
               Engine engine = Engine::Auto, int resolution = 0);

}  // namespace qcolloid
