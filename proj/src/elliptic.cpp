#include "qcolloid/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"

namespace qcolloid {

double carlson_rf(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0)
    throw DomainError("carlson_rf: negative argument");
  double xt = x, yt = y, zt = z;
  double mu = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
  for (int it = 0; it < 200; ++it) {
    double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = 1.0 - xt / mu;
    dy = 1.0 - yt / mu;
    dz = 1.0 - zt / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-8) break;
  }
  double e2 = dx * dy - dz * dz;
  double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z <= 0.0)
    throw DomainError("carlson_rd: argument outside domain");
  double xt = x, yt = y, zt = z;
  double sum = 0.0, fac = 1.0;
  double mu = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
  for (int it = 0; it < 200; ++it) {
    double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + 3.0 * zt) / 5.0;
    dx = 1.0 - xt / mu;
    dy = 1.0 - yt / mu;
    dz = 1.0 - zt / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-8) break;
  }
  double ea = dx * dy;
  double eb = dz * dz;
  double ec = ea - eb;
  double ed = ea - 6.0 * eb;
  double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
              dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
             (mu * std::sqrt(mu));
}

double legendre_E(double m) {
  if (m < 0.0 || m > 1.0) throw DomainError("legendre_E: m outside [0, 1]");
  if (m > 1.0 - 1e-14) return 1.0;
  double y = 1.0 - m;
  return carlson_rf(0.0, y, 1.0) - (m / 3.0) * carlson_rd(0.0, y, 1.0);
}

double complete_elliptic_E(double m) {
  if (m < -1.0) throw DomainError("complete_elliptic_E: m < -1");
  if (m <= 0.0) return legendre_E(-m);
  // Imaginary-modulus transformation onto the Legendre range.
  return std::sqrt(1.0 + m) * legendre_E(m / (1.0 + m));
}

}  // namespace qcolloid
