#pragma once

namespace qcolloid {

// Carlson symmetric integrals (duplication algorithm).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

// Complete elliptic integral of the second kind in Legendre parameter form,
// integral of sqrt(1 - m sin^2 t) over [0, pi/2], for m in [0, 1].
double legendre_E(double m);

// integral of sqrt(1 + m sin^2 t) over [0, pi/2] for m >= -1.
// Throws DomainError for m < -1 (integrand turns complex).
double complete_elliptic_E(double m);

}  // namespace qcolloid
