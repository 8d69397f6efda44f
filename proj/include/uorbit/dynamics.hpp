#pragma once

// One-parameter orbits U_t sigma U_t^dagger and the fidelity curve
// g(t) = F(rho, U_t sigma U_t^dagger) along them.
//
// extremize_over_hamiltonian_orbit is a numerical heuristic (grid scan plus
// golden-section refinement). It guarantees that every reported value is an
// actual curve sample, hence inside the global orbit interval, but it makes
// no claim of global optimality over t in R.

#include <optional>
#include <vector>

#include "uorbit/orbit_extrema.hpp"

namespace uorbit {

struct OrbitCurve {
  enum class Generator { kHamiltonian, kSkew };

  std::vector<double> times;
  std::vector<double> values;
  Generator generator = Generator::kHamiltonian;
  Quantity quantity = Quantity::kFidelity;
};

struct ScanResult {
  double t_min;
  double g_min;
  double t_max;
  double g_max;
  bool refined;
  int grid;
  double t_end;  // right end of the scanned window [0, t_end]
};

struct ScanOptions {
  std::optional<double> t_max;  // unset: 2 pi / (smallest nonzero eigenvalue gap of H)
  int grid = 256;
  int refine_iters = 60;
};

/// g(t_j) for U_t = exp(-itH).
OrbitCurve orbit_fidelity_curve(const DensityMatrix& rho, const DensityMatrix& sigma, const HermitianMatrixd& h,
                                const std::vector<double>& t_grid);

/// S(U_t rho U_t^dagger || sigma) for U_t = exp(-itH). Requires full-rank sigma.
OrbitCurve relative_entropy_orbit_curve(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const HermitianMatrixd& h, const std::vector<double>& t_grid);

/// dg/dt for U_t = exp(tK):
///   1/2 Tr{ U_t^dagger sqrt(rho) A_t^{-1/2} sqrt(rho) U_t [K, sigma] },
///   A_t = sqrt(rho) U_t sigma U_t^dagger sqrt(rho),
/// with A_t^{-1/2} taken on the support of A_t. Throws SingularityError if
/// the support dimension of A changes across t +- 1e-5.
double fidelity_orbit_derivative(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const SkewHermitianMatrixd& k, double t);

/// |[sigma', sqrt(rho) A_0^{-1/2} sqrt(rho)]|_F with sigma' = U sigma U^dagger.
double stationarity_residual(const DensityMatrix& rho, const DensityMatrix& sigma, const UnitaryMatrixd& u);

/// Default scan window: 2 pi / delta with delta the smallest gap between
/// distinct eigenvalues of H; 2 pi when H is a multiple of the identity.
double default_scan_window(const HermitianMatrixd& h);

ScanResult extremize_over_hamiltonian_orbit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                            const HermitianMatrixd& h, const ScanOptions& opts,
                                            OrbitCurve* coarse_curve = nullptr);

std::vector<double> linspace(double a, double b, int n);

}  // namespace uorbit
