#pragma once

// Fidelity and relative entropy between unitary orbits.
//
// For states rho, sigma with spectra p = lambda-down(rho), q = lambda-down(sigma):
//   max_U F(rho, U sigma U^dagger) = sum_j sqrt(p_j q_j)
//   min_U F(rho, U sigma U^dagger) = sum_j sqrt(p_j q_{d-1-j})
//   min_U S(U rho U^dagger || sigma) = H(p || q)
//   max_U S(U rho U^dagger || sigma) = H(p || reverse(q))
// Fidelity orbits sigma, relative entropy orbits rho. Fidelity is invariant
// under simultaneous conjugation, so the side that moves does not change
// the attainable set.

#include <string_view>

#include "uorbit/states.hpp"

namespace uorbit {

enum class Quantity { kFidelity, kRelativeEntropy };

std::string_view to_string(Quantity q);

struct OrbitExtremes {
  Quantity quantity;
  double min_value;
  double max_value;
  UnitaryMatrixd minimizer;
  UnitaryMatrixd maximizer;
};

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)), evaluated as the trace norm of sqrt(rho) sqrt(sigma);
/// clamped to [0, 1] when within 1e-9 outside.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Caches sqrt(rho) for repeated F(rho, .) evaluations along an orbit.
class FidelityEvaluator {
 public:
  explicit FidelityEvaluator(const DensityMatrix& rho);

  double operator()(const DensityMatrix& sigma) const;
  double operator()(const HermitianMatrixd& sigma) const;
  /// F(rho, U sigma U^dagger).
  double operator()(const UnitaryMatrixd& u, const DensityMatrix& sigma) const;

  const HermitianMatrixd& sqrt_rho() const noexcept { return sqrt_rho_; }

 private:
  HermitianMatrixd sqrt_rho_;
};

/// sum_j sqrt(p_j q_j).
double classical_fidelity(const ProbabilityVector& p, const ProbabilityVector& q);

/// Tr rho (ln rho - ln sigma); +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sum_j p_j (ln p_j - ln q_j) with 0 ln 0 = 0; +infinity when some p_j > 1e-12 has q_j <= 1e-12.
double classical_relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q);

/// Closed-form extremes of F(rho, U sigma U^dagger) with the optimizing unitaries.
OrbitExtremes fidelity_extremes(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Closed-form extremes of S(U rho U^dagger || sigma). Throws RankError
/// unless sigma is full rank.
OrbitExtremes relative_entropy_extremes(const DensityMatrix& rho, const DensityMatrix& sigma);

/// A unitary U with |F(rho, U sigma U^dagger) - target| <= tol, found by
/// bisection along the geodesic exp(tK) U_min from the minimizer (t = 0)
/// to the maximizer (t = 1).
UnitaryMatrixd unitary_for_target_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double target,
                                           double tol);

/// Skew-Hermitian K with exp(K) = w, from the principal branch of the
/// eigenphases. An eigenphase of exactly +-pi is moved to pi - 1e-9.
SkewHermitianMatrixd unitary_log(const UnitaryMatrixd& w);

}  // namespace uorbit
