#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uorbit/spectral.hpp"

namespace uorbit {

/// Non-negative vector summing to one, e.g. a spectrum lambda(rho).
template <typename Real>
class BasicProbabilityVector {
 public:
  /// Entries in [-1e-10, 0) are clamped to 0; the sum must be within 1e-10 of 1.
  explicit BasicProbabilityVector(RealVector<Real> values) : v_(std::move(values)) {
    if (!v_.allFinite()) {
      throw ValidationError(ValidationError::Kind::kNonFinite, "probability vector: entries must be finite");
    }
    for (Eigen::Index j = 0; j < v_.size(); ++j) {
      if (v_(j) < -Real(tol::kNegativeClamp)) {
        std::ostringstream os;
        os << "probability vector: negative entry " << v_(j) << " at index " << j;
        throw ValidationError(ValidationError::Kind::kNotProbability, os.str());
      }
      v_(j) = std::max(v_(j), Real(0));
    }
    if (std::abs(v_.sum() - Real(1)) > Real(tol::kProbabilitySum)) {
      std::ostringstream os;
      os << "probability vector: entries sum to " << v_.sum();
      throw ValidationError(ValidationError::Kind::kNotProbability, os.str());
    }
  }

  const RealVector<Real>& values() const noexcept { return v_; }
  Eigen::Index size() const noexcept { return v_.size(); }
  Real operator[](Eigen::Index j) const { return v_(j); }

  BasicProbabilityVector reversed() const { return BasicProbabilityVector(v_.reverse().eval()); }

 private:
  RealVector<Real> v_;
};

/// Hermitian, positive-semidefinite, unit-trace operator. Carries its own
/// spectrum (descending), computed once at construction.
template <typename Real>
class BasicDensityMatrix {
 public:
  /// Validates and repairs a raw matrix:
  ///  - Hermiticity within 1e-12 relative, then symmetrized;
  ///  - trace within 1e-8 of 1, then renormalized;
  ///  - eigenvalues >= -1e-10, negatives clamped to 0.
  static BasicDensityMatrix from_raw(const ComplexMatrix<Real>& raw) {
    detail::require_square_finite(raw, "density matrix");
    const Real asym = max_abs((raw - raw.adjoint()).eval());
    if (asym > Real(tol::kHermitian) * detail::relative_scale<Real>(raw)) {
      std::ostringstream os;
      os << "density matrix is not Hermitian: |A - A^dagger|_max = " << asym;
      throw ValidationError(ValidationError::Kind::kNonHermitian, os.str());
    }
    auto h = HermitianMatrix<Real>::project(raw);
    const Real tr = h.trace();
    if (std::abs(tr - Real(1)) > Real(tol::kTraceRepair)) {
      std::ostringstream os;
      os << "density matrix trace is " << tr << ", expected 1";
      throw ValidationError(ValidationError::Kind::kBadTrace, os.str());
    }
    Spectrum<Real> s = hermitian_eig(h);
    const Real lowest = s.eigenvalues(s.dim() - 1);
    if (lowest < -Real(tol::kNegativeClamp)) {
      std::ostringstream os;
      os << "density matrix is not positive semidefinite: eigenvalue " << lowest;
      throw ValidationError(ValidationError::Kind::kNotPsd, os.str());
    }
    // Eigenvalues this small are round-off of exact zeros. Left in, their
    // square roots would put ~1e-8 of noise into fidelities.
    const bool had_negative = lowest < Real(0);
    s.eigenvalues = (s.eigenvalues.array() < Real(tol::kZeroEigenvalue)).select(Real(0), s.eigenvalues);
    if (had_negative) h = HermitianMatrix<Real>::project(s.reconstruct());
    const Real total = s.eigenvalues.sum();
    if (total != Real(1)) {
      s.eigenvalues /= total;
      h = (Real(1) / total) * h;
    }
    return BasicDensityMatrix(std::move(h), std::move(s));
  }

  /// diag(p) in the computational basis.
  static BasicDensityMatrix diagonal(const RealVector<Real>& p) {
    return from_raw(p.template cast<std::complex<Real>>().asDiagonal().toDenseMatrix());
  }

  static BasicDensityMatrix maximally_mixed(Eigen::Index dim) {
    return diagonal(RealVector<Real>::Constant(dim, Real(1) / Real(dim)));
  }

  const HermitianMatrix<Real>& hermitian() const noexcept { return h_; }
  const ComplexMatrix<Real>& matrix() const noexcept { return h_.matrix(); }
  const Spectrum<Real>& spectrum() const noexcept { return s_; }
  Eigen::Index dim() const noexcept { return h_.dim(); }

  /// Number of eigenvalues above the support tolerance.
  Eigen::Index rank() const { return (s_.eigenvalues.array() > Real(tol::kSupport)).count(); }

  /// U rho U^dagger. The spectrum is carried over exactly; eigenvectors become U V.
  BasicDensityMatrix conjugated(const UnitaryMatrix<Real>& u) const {
    if (u.dim() != dim()) throw DimensionError("conjugate: dimension mismatch between state and unitary");
    Spectrum<Real> s{s_.eigenvalues, u * s_.eigenvectors};
    return BasicDensityMatrix(conjugate_by(u, h_), std::move(s));
  }

 private:
  BasicDensityMatrix(HermitianMatrix<Real> h, Spectrum<Real> s) : h_(std::move(h)), s_(std::move(s)) {}

  HermitianMatrix<Real> h_;
  Spectrum<Real> s_;
};

using DensityMatrix = BasicDensityMatrix<double>;
using ProbabilityVector = BasicProbabilityVector<double>;

template <typename Real>
BasicDensityMatrix<Real> density_from_raw(const ComplexMatrix<Real>& raw) {
  return BasicDensityMatrix<Real>::from_raw(raw);
}

/// lambda-down(rho): eigenvalues clamped to [0, 1], renormalized, non-increasing.
template <typename Real>
BasicProbabilityVector<Real> spectrum_desc(const BasicDensityMatrix<Real>& rho) {
  RealVector<Real> p = rho.spectrum().eigenvalues.cwiseMax(Real(0)).cwiseMin(Real(1));
  p /= p.sum();
  return BasicProbabilityVector<Real>(std::move(p));
}

/// lambda-up(rho), the reversal of spectrum_desc.
template <typename Real>
BasicProbabilityVector<Real> spectrum_asc(const BasicDensityMatrix<Real>& rho) {
  return spectrum_desc(rho).reversed();
}

template <typename Real>
BasicDensityMatrix<Real> conjugate(const BasicDensityMatrix<Real>& rho, const UnitaryMatrix<Real>& u) {
  return rho.conjugated(u);
}

}  // namespace uorbit
