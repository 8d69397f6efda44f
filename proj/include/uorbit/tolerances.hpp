#pragma once

namespace uorbit::tol {

// Spectral layer.
inline constexpr double kHermitian = 1e-12;       // relative to max(1, |A|_max)
inline constexpr double kJacobiOffDiagonal = 1e-13;  // relative to |A|_F
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kNegativeClamp = 1e-10;   // eigenvalues in [-kNegativeClamp, 0) become 0
inline constexpr double kSupport = 1e-12;         // eigenvalue > kSupport is in the support
inline constexpr double kZeroEigenvalue = 1e-14;  // density-matrix eigenvalues below this are exact zeros
inline constexpr double kUnitary = 1e-9;

// States.
inline constexpr double kTraceRepair = 1e-8;
inline constexpr double kTrace = 1e-10;
inline constexpr double kProbabilitySum = 1e-10;

// Quantities.
inline constexpr double kFidelityClamp = 1e-9;
inline constexpr double kEntropyClamp = 1e-9;

// Majorization.
inline constexpr double kMajorization = 1e-10;
inline constexpr double kBistochasticEntry = 1e-12;
inline constexpr double kBistochasticSum = 1e-10;
inline constexpr double kMatchingEntry = 1e-9;
inline constexpr double kBirkhoffResidual = 1e-8;

// Property checks.
inline constexpr double kExactInequality = 1e-9;
inline constexpr double kInverseSqrtInequality = 1e-7;

}  // namespace uorbit::tol
