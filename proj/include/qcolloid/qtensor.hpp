#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"

namespace qcolloid {

template <class S>
using Mat3T = Eigen::Matrix<S, 3, 3>;

// s * (n n^T - I/3). n must be unit.
template <class S>
Mat3T<S> uniaxial(const Eigen::Matrix<S, 3, 1>& n, S s = S(1)) {
  return s * (n * n.transpose() - Mat3T<S>::Identity() / S(3));
}

// Bulk potential: -|Q|^2/2 - tr(Q^3) + 3|Q|^4/4 + 2/9.
// Nonnegative on symmetric traceless tensors; zero exactly on the
// uniaxial minimizer set.
template <class Derived>
typename Derived::Scalar bulk_potential(const Eigen::MatrixBase<Derived>& Qe) {
  using S = typename Derived::Scalar;
  Mat3T<S> Q = Qe;
  S q2 = (Q * Q).trace();
  S q3 = (Q * Q * Q).trace();
  return -S(0.5) * q2 - q3 + S(0.75) * q2 * q2 + S(2) / S(9);
}

// Alignment potential: sqrt(2/3) - Q_33/|Q|, with value 0 at Q = 0.
// Nonnegative; zero exactly on the ray through the vertical uniaxial state.
template <class Derived>
typename Derived::Scalar field_potential(const Eigen::MatrixBase<Derived>& Qe) {
  using S = typename Derived::Scalar;
  Mat3T<S> Q = Qe;
  S nrm = Q.norm();
  if (nrm < S(1e-14)) return S(0);
  S v = S(kSqrt23) - Q(2, 2) / nrm;
  // The exact value is nonnegative (Q_33 <= sqrt(2/3)|Q|); keep roundoff
  // from leaking a negative sign on the aligned ray.
  return v > S(0) ? v : S(0);
}

struct Spectral {
  Eigen::Vector3d lambda;  // descending
  Eigen::Matrix3d vectors;  // columns match lambda order
};

// Eigen-decomposition with descending eigenvalues; each eigenvector is
// normalized so its first component of magnitude > 1e-12 is positive.
inline Spectral spectral(const Eigen::Matrix3d& Q) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Q);
  if (es.info() != Eigen::Success)
    throw NumericalError("spectral: eigensolver failed");
  Spectral out;
  for (int i = 0; i < 3; ++i) {
    out.lambda[i] = es.eigenvalues()[2 - i];
    Eigen::Vector3d v = es.eigenvectors().col(2 - i);
    for (int k = 0; k < 3; ++k) {
      if (std::abs(v[k]) > 1e-12) {
        if (v[k] < 0.0) v = -v;
        break;
      }
    }
    out.vectors.col(i) = v;
  }
  return out;
}

// True when Q is (numerically) in the degenerate set: zero tensor or
// coinciding top eigenvalues. The eigenvalue gap is compared relative to |Q|.
inline bool in_B(const Eigen::Matrix3d& Q, double tol = 1e-9) {
  double nrm = Q.norm();
  if (nrm < tol) return true;
  Spectral sp = spectral(Q);
  return (sp.lambda[0] - sp.lambda[1]) < tol * nrm;
}

struct UniaxialFrame {
  double s = 0.0;  // lambda1 - lambda3
  double t = 0.0;  // (lambda2 - lambda3) / s, in [0, 1)
  Eigen::Vector3d n;  // leading director
  Eigen::Vector3d m;  // secondary director
};

// Q = s * ((n n^T - I/3) + t (m m^T - I/3)) with the spectral frame.
inline UniaxialFrame decompose(const Eigen::Matrix3d& Q, double tol = 1e-9) {
  if (in_B(Q, tol)) throw DegenerateTensor("decompose: degenerate tensor");
  Spectral sp = spectral(Q);
  UniaxialFrame f;
  f.s = sp.lambda[0] - sp.lambda[2];
  f.t = (sp.lambda[1] - sp.lambda[2]) / f.s;
  f.n = sp.vectors.col(0);
  f.m = sp.vectors.col(1);
  return f;
}

// Closest-uniaxial projection P(Q) = n(Q) n(Q)^T - I/3.
inline Eigen::Matrix3d project_uniaxial(const Eigen::Matrix3d& Q,
                                        double tol = 1e-9) {
  UniaxialFrame f = decompose(Q, tol);
  return uniaxial<double>(f.n);
}

// Frobenius distance to the uniaxial minimizer set, computed from the
// sorted spectra (the set has spectrum {2/3, -1/3, -1/3}).
inline double dist_to_N(const Eigen::Matrix3d& Q) {
  Spectral sp = spectral(Q);
  double d0 = sp.lambda[0] - 2.0 / 3.0;
  double d1 = sp.lambda[1] + 1.0 / 3.0;
  double d2 = sp.lambda[2] + 1.0 / 3.0;
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

// Sampled local Lipschitz bound for the alignment potential over the shell
// | |Q| - sqrt(2/3) | <= q0. Deterministic for fixed inputs.
double lipschitz_g_estimate(double q0, int samples);

// Five independent components [q11, q22, q12, q13, q23];
// q33 = -q11 - q22 restores the trace-free matrix.
inline Eigen::Matrix<double, 5, 1> to_components(const Eigen::Matrix3d& Q) {
  Eigen::Matrix<double, 5, 1> v;
  v << Q(0, 0), Q(1, 1), Q(0, 1), Q(0, 2), Q(1, 2);
  return v;
}

inline Eigen::Matrix3d from_components(const Eigen::Matrix<double, 5, 1>& v) {
  Eigen::Matrix3d Q;
  Q << v[0], v[2], v[3],
       v[2], v[1], v[4],
       v[3], v[4], -v[0] - v[1];
  return Q;
}

}  // namespace qcolloid
