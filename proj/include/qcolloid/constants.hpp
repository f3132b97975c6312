#pragma once

#include <cmath>

namespace qcolloid {

// 24^(1/4): surface density of the optimal boundary layer energy.
// sqrt is correctly rounded, so the value is identical across platforms.
inline const double kQuartRoot24 = std::sqrt(std::sqrt(24.0));

// (3/2)^(1/4): decay rate of the boundary layer profile. Equals kQuartRoot24/2.
inline const double kProfileRate = std::sqrt(std::sqrt(1.5));

inline const double kSqrt32 = std::sqrt(1.5);  // sqrt(3/2)
inline const double kSqrt23 = std::sqrt(2.0 / 3.0);

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qcolloid
