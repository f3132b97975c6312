#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "qcolloid/surfaces.hpp"

namespace qcolloid {

// Quadrature of the alignment torque integrand over the samples. The
// tangential gradient of E0 in the direction argument is 24^(1/4) times
// this. Samples with (nu . n)^2 within 1e-12 of 1 are skipped.
Eigen::Vector3d residual(const std::vector<QuadratureSample>& samples,
                         const Eigen::Vector3d& n);

// Norm of the residual with sampling aligned to n, so contributions that
// are symmetric about n cancel exactly at critical orientations.
double residual_norm(const AnalyticShape& shape, const Eigen::Vector3d& n,
                     int resolution = 48);

struct CriticalPoint {
  Eigen::Vector3d n;
  double energy;
  double residual;
  std::string kind;   // "minimum" | "maximum" | "saddle"
  std::string orbit;  // symmetry-orbit note
};

struct OrientationReport {
  std::vector<CriticalPoint> points;  // energy ascending
  double tolerance = 0.0;             // bound on every listed residual
};

struct MinimizeOptions {
  int seeds = 2048;     // Fibonacci lattice size on the upper hemisphere
  int starts = 32;      // descents launched from the best-ranked seeds
  int max_iters = 500;
  double grad_tol = 1e-8;
  bool census = false;  // also hunt maxima and saddles
  int resolution = 48;  // quadrature resolution for reported residuals
};

// Locates optimal orientations by projected gradient descent with a
// normalizing retraction and Armijo steps, clusters the converged points,
// and classifies them through a finite-difference Hessian on a tangent
// chart. With census also runs ascents and a Newton search for saddles.
OrientationReport minimize(const AnalyticShape& shape,
                           const MinimizeOptions& opts = {});

struct ScanGrid {
  // "n1": directions (p, 0, sqrt(1-p^2)); "n3": (sqrt(1-p^2), 0, p);
  // "disk": (p, q, sqrt(1-p^2-q^2)) over the closed unit disk.
  std::string param;
  std::vector<double> c1, c2;
  std::vector<Eigen::Vector3d> dirs;
  std::vector<double> energy;
};

ScanGrid scan(const AnalyticShape& shape, const std::string& param, double lo,
              double hi, int count);

struct StabilityRow {
  double eps;
  double max_min_distance;
  double energy_gap_bound;
  double energy_gap_measured;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  double delta;
};

// Continuity of optimal orientations under edge rounding: for each radius
// in eps_list (strictly decreasing) the rounded cube's minimizers must lie
// within a nonincreasing geodesic distance of the sharp cube's, below
// delta at the last radius, and the energies must respect the uniform
// symmetric-difference area bound. Throws StabilityViolation otherwise.
StabilityReport approx_stability(double R, const std::vector<double>& eps_list,
                                 double delta);

}  // namespace qcolloid
