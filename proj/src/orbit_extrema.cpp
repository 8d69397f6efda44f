#include "uorbit/orbit_extrema.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace uorbit {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* op) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << rho.dim() << " vs " << sigma.dim() << ")";
    throw DimensionError(os.str());
  }
}

double clamp_fidelity(double f) {
  if (f < 0.0 && f >= -tol::kFidelityClamp) return 0.0;
  if (f > 1.0 && f <= 1.0 + tol::kFidelityClamp) return 1.0;
  return f;
}

// Tr sqrt(sqrt(rho) sigma sqrt(rho)) = || sqrt(rho) sqrt(sigma) ||_1. Singular
// values carry absolute error ~eps, whereas square roots of the round-off
// eigenvalues of a rank-deficient sqrt(rho) sigma sqrt(rho) add ~sqrt(eps).
double trace_norm(const ComplexMatrixd& m) {
  const Eigen::JacobiSVD<ComplexMatrixd> svd(m);
  return svd.singularValues().sum();
}

// U aligning sigma's descending eigenbasis with rho's, optionally reversed.
UnitaryMatrixd aligning_unitary(const Spectrumd& target, const Spectrumd& source, bool reverse) {
  if (reverse) {
    return target.eigenvectors * UnitaryMatrixd::reversal(target.dim()) * source.eigenvectors.adjoint();
  }
  return target.eigenvectors * source.eigenvectors.adjoint();
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::kFidelity:
      return "fidelity";
    case Quantity::kRelativeEntropy:
      return "relative-entropy";
  }
  return "unknown";
}

FidelityEvaluator::FidelityEvaluator(const DensityMatrix& rho) : sqrt_rho_(psd_sqrt(rho.spectrum())) {}

double FidelityEvaluator::operator()(const HermitianMatrixd& sigma) const {
  if (sigma.dim() != sqrt_rho_.dim()) throw DimensionError("fidelity: dimension mismatch");
  const HermitianMatrixd root = spectral_function(sigma, [](double x) { return std::sqrt(x); }, {.psd = true});
  return clamp_fidelity(trace_norm(sqrt_rho_.matrix() * root.matrix()));
}

double FidelityEvaluator::operator()(const DensityMatrix& sigma) const {
  if (sigma.dim() != sqrt_rho_.dim()) throw DimensionError("fidelity: dimension mismatch");
  return clamp_fidelity(trace_norm(sqrt_rho_.matrix() * psd_sqrt(sigma.spectrum()).matrix()));
}

double FidelityEvaluator::operator()(const UnitaryMatrixd& u, const DensityMatrix& sigma) const {
  if (sigma.dim() != sqrt_rho_.dim() || u.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  // sqrt(U sigma U^dagger) = U sqrt(sigma) U^dagger; the trailing U^dagger leaves singular values alone.
  return clamp_fidelity(trace_norm(sqrt_rho_.matrix() * u.matrix() * psd_sqrt(sigma.spectrum()).matrix()));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  return FidelityEvaluator(rho)(sigma);
}

double classical_fidelity(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw DimensionError("classical_fidelity: length mismatch");
  return (p.values().array() * q.values().array()).sqrt().sum();
}

double classical_relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw DimensionError("classical_relative_entropy: length mismatch");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p[j] <= tol::kSupport) continue;
    if (q[j] <= tol::kSupport) return std::numeric_limits<double>::infinity();
    sum += p[j] * (std::log(p[j]) - std::log(q[j]));
  }
  if (sum < 0.0 && sum >= -tol::kEntropyClamp) return 0.0;
  return sum;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  const Spectrumd& ss = sigma.spectrum();
  const auto& v = ss.eigenvectors.matrix();

  // Weight of rho on ker(sigma).
  double leak = 0.0;
  for (Eigen::Index j = 0; j < ss.dim(); ++j) {
    if (ss.eigenvalues(j) > tol::kSupport) continue;
    leak += (v.col(j).adjoint() * rho.matrix() * v.col(j)).value().real();
  }
  if (leak > tol::kSupport) return std::numeric_limits<double>::infinity();

  const auto xlogx = [](double x) { return x * std::log(x); };
  const double neg_entropy = spectral_trace(rho.spectrum(), xlogx, {.support_only = true, .psd = true});
  const auto log_sigma = spectral_function(ss, [](double x) { return std::log(x); }, {.support_only = true, .psd = true});
  const double cross = (rho.matrix() * log_sigma.matrix()).trace().real();
  const double s = neg_entropy - cross;
  if (s < 0.0 && s >= -tol::kEntropyClamp) return 0.0;
  return s;
}

OrbitExtremes fidelity_extremes(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity_extremes");
  const ProbabilityVector p = spectrum_desc(rho);
  const ProbabilityVector q = spectrum_desc(sigma);
  return OrbitExtremes{
      .quantity = Quantity::kFidelity,
      .min_value = classical_fidelity(p, q.reversed()),
      .max_value = classical_fidelity(p, q),
      .minimizer = aligning_unitary(rho.spectrum(), sigma.spectrum(), true),
      .maximizer = aligning_unitary(rho.spectrum(), sigma.spectrum(), false),
  };
}

OrbitExtremes relative_entropy_extremes(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy_extremes");
  if (sigma.rank() < sigma.dim()) {
    std::ostringstream os;
    os << "relative entropy extremes need a full-rank sigma; rank is " << sigma.rank() << " of " << sigma.dim()
       << " (smallest eigenvalue " << sigma.spectrum().eigenvalues(sigma.dim() - 1) << ")";
    throw RankError(os.str());
  }
  const ProbabilityVector p = spectrum_desc(rho);
  const ProbabilityVector q = spectrum_desc(sigma);
  // The orbit is on rho, so rho's eigenbasis is rotated onto sigma's.
  return OrbitExtremes{
      .quantity = Quantity::kRelativeEntropy,
      .min_value = classical_relative_entropy(p, q),
      .max_value = classical_relative_entropy(p, q.reversed()),
      .minimizer = aligning_unitary(sigma.spectrum(), rho.spectrum(), false),
      .maximizer = aligning_unitary(sigma.spectrum(), rho.spectrum(), true),
  };
}

SkewHermitianMatrixd unitary_log(const UnitaryMatrixd& w) {
  // A unitary is normal, so its complex Schur form is diagonal up to round-off.
  const Eigen::ComplexSchur<ComplexMatrixd> schur(w.matrix());
  const auto& t = schur.matrixT();
  const auto& q = schur.matrixU();
  const Eigen::Index n = w.dim();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double theta = std::arg(t(j, j));
    if (std::abs(theta) == std::numbers::pi) theta = std::numbers::pi - 1e-9;
    phases(j) = std::complex<double>(0.0, theta);
  }
  return SkewHermitianMatrixd::project(q * phases.asDiagonal() * q.adjoint());
}

UnitaryMatrixd unitary_for_target_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double target,
                                           double tol) {
  require_same_dim(rho, sigma, "unitary_for_target_fidelity");
  if (!(tol > 0.0)) throw DomainError("unitary_for_target_fidelity: tol must be positive", tol);

  OrbitExtremes ex = fidelity_extremes(rho, sigma);
  if (!(target >= ex.min_value - tol && target <= ex.max_value + tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "target fidelity " << target << " is outside the attainable interval [" << ex.min_value << ", "
       << ex.max_value << "]";
    throw RangeError(os.str(), ex.min_value, ex.max_value);
  }

  const FidelityEvaluator eval(rho);
  const double g_lo = eval(ex.minimizer, sigma);
  if (std::abs(g_lo - target) <= tol) return ex.minimizer;
  const double g_hi = eval(ex.maximizer, sigma);
  if (std::abs(g_hi - target) <= tol) return ex.maximizer;

  const SkewHermitianMatrixd k = unitary_log(ex.maximizer * ex.minimizer.adjoint());
  const auto path = [&](double t) { return exp_skew(k, t) * ex.minimizer; };

  // g(0) < target < g(1); keep the bracket g(lo) < target < g(hi).
  double lo = 0.0;
  double hi = 1.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    UnitaryMatrixd u = path(mid);
    const double g = eval(u, sigma);
    best_gap = std::min(best_gap, std::abs(g - target));
    if (std::abs(g - target) <= tol) return u;
    (g < target ? lo : hi) = mid;
  }
  throw ConvergenceError("unitary_for_target_fidelity: bisection budget exhausted", best_gap);
}

}  // namespace uorbit
