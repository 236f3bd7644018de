#pragma once

namespace parastab {

inline constexpr const char* kVersion = "0.1.0";

// Numerical tolerances for double-precision spectral work on <= 1600-dim
// superoperators. Declared once; every module uses these.
inline constexpr double kHermitianTol = 1e-10;   // density-matrix hermiticity (absolute)
inline constexpr double kTraceTol = 1e-10;       // |tr(rho) - 1|
inline constexpr double kPsdFloor = -1e-9;       // smallest admissible eigenvalue of rho
inline constexpr double kKetNormTol = 1e-12;     // | ||psi|| - 1 |
inline constexpr double kOperatorHermTol = 1e-12;  // relative, for tagged-hermitian operators
inline constexpr double kDegenerateNullTol = 1e-9; // relative |lambda| threshold for L null space
inline constexpr double kTraceDriftTol = 1e-8;   // allowed trace drift along trajectories

// Magnetic flux quantum [Wb]
inline constexpr double kFluxQuantum = 2.067833848e-15;

}  // namespace parastab
