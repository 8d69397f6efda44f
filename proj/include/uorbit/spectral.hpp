#pragma once

// Hermitian eigendecomposition (cyclic complex Jacobi) and the spectral
// matrix functions built on it: f(A) = V f(Lambda) V^dagger.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <vector>

#include "uorbit/matrix_types.hpp"

namespace uorbit {

/// Eigenpairs of a Hermitian operator. Eigenvalues are non-increasing and
/// column j of `eigenvectors` pairs with eigenvalue j.
template <typename Real>
struct Spectrum {
  RealVector<Real> eigenvalues;
  UnitaryMatrix<Real> eigenvectors = UnitaryMatrix<Real>::identity(0);

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  RealVector<Real> ascending() const { return eigenvalues.reverse(); }

  ComplexMatrix<Real> reconstruct() const {
    const auto& v = eigenvectors.matrix();
    return v * eigenvalues.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
  }
};

using Spectrumd = Spectrum<double>;

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrix<Real>& a) {
  Real s = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver. Sweeps visit (p, q) in row-major order;
/// converged when the off-diagonal Frobenius norm is at most
/// 1e-13 |A|_F. Throws ConvergenceError after 100 sweeps.
template <typename Real>
Spectrum<Real> hermitian_eig(const HermitianMatrix<Real>& h) {
  using C = std::complex<Real>;
  using Index = Eigen::Index;

  ComplexMatrix<Real> a = h.matrix();
  const Index n = a.rows();
  ComplexMatrix<Real> v = ComplexMatrix<Real>::Identity(n, n);

  const Real threshold = Real(tol::kJacobiOffDiagonal) * a.norm();
  Real off = detail::off_diagonal_norm(a);
  int sweeps = 0;
  while (off > threshold) {
    if (sweeps == tol::kJacobiMaxSweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge in " << sweeps << " sweeps; off-diagonal norm " << off;
      throw ConvergenceError(os.str(), static_cast<double>(off));
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const C apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;

        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * mag);
        Real t;
        if (std::abs(theta) > Real(1e150)) {
          t = Real(1) / (Real(2) * theta);
        } else {
          t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        }
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        const C phase = std::conj(apq / mag);

        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
        const C j00 = c, j01 = s, j10 = -s * phase, j11 = c * phase;

        for (Index k = 0; k < n; ++k) {
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
        }
        for (Index k = 0; k < n; ++k) {
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(app - t * mag);
        a(q, q) = C(aqq + t * mag);

        for (Index k = 0; k < n; ++k) {
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
      }
    }
    ++sweeps;
    off = detail::off_diagonal_norm(a);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum<Real> out;
  out.eigenvalues.resize(n);
  ComplexMatrix<Real> sorted(n, n);
  for (Index j = 0; j < n; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.eigenvalues(j) = a(src, src).real();
    sorted.col(j) = v.col(src);
  }
  out.eigenvectors = UnitaryMatrix<Real>::assume_unitary(std::move(sorted));
  return out;
}

/// How spectral_function treats eigenvalues near zero.
///  - psd: eigenvalues in [-1e-10, 0) are clamped to 0; anything lower
///    throws DomainError.
///  - support_only: eigenvalues <= 1e-12 map to 0 without evaluating f.
struct SpectralMode {
  bool support_only = false;
  bool psd = false;
};

namespace detail {

template <typename Real, typename F>
RealVector<Real> apply_to_eigenvalues(const RealVector<Real>& lambda, F&& f, SpectralMode mode) {
  RealVector<Real> out(lambda.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    Real x = lambda(j);
    if (mode.psd && x < Real(0)) {
      if (x < -Real(tol::kNegativeClamp)) {
        std::ostringstream os;
        os << "operator is not positive semidefinite: eigenvalue " << x;
        throw DomainError(os.str(), static_cast<double>(x));
      }
      x = Real(0);
    }
    if (mode.support_only && x <= Real(tol::kSupport)) {
      out(j) = Real(0);
      continue;
    }
    const Real y = f(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "spectral function is not finite at eigenvalue " << x;
      throw DomainError(os.str(), static_cast<double>(x));
    }
    out(j) = y;
  }
  return out;
}

}  // namespace detail

/// V f(Lambda) V^dagger from a precomputed spectrum.
template <typename Real, typename F>
HermitianMatrix<Real> spectral_function(const Spectrum<Real>& s, F&& f, SpectralMode mode = {}) {
  const RealVector<Real> y = detail::apply_to_eigenvalues<Real>(s.eigenvalues, f, mode);
  const auto& v = s.eigenvectors.matrix();
  return HermitianMatrix<Real>::project(v * y.template cast<std::complex<Real>>().asDiagonal() * v.adjoint());
}

template <typename Real, typename F>
HermitianMatrix<Real> spectral_function(const HermitianMatrix<Real>& a, F&& f, SpectralMode mode = {}) {
  return spectral_function(hermitian_eig(a), std::forward<F>(f), mode);
}

/// Tr f(A) = sum_j f(lambda_j), under the same mode rules.
template <typename Real, typename F>
Real spectral_trace(const Spectrum<Real>& s, F&& f, SpectralMode mode = {}) {
  return detail::apply_to_eigenvalues<Real>(s.eigenvalues, f, mode).sum();
}

template <typename Real>
HermitianMatrix<Real> psd_sqrt(const Spectrum<Real>& s) {
  return spectral_function(s, [](Real x) { return std::sqrt(x); }, {.psd = true});
}

/// exp(tK) = V exp(-it Lambda) V^dagger where iK = V Lambda V^dagger.
template <typename Real>
UnitaryMatrix<Real> exp_skew(const SkewHermitianMatrix<Real>& k, Real t) {
  if (!std::isfinite(t)) throw DomainError("exp_skew: t must be finite", static_cast<double>(t));
  const auto ik = HermitianMatrix<Real>::project(std::complex<Real>(0, 1) * k.matrix());
  const Spectrum<Real> s = hermitian_eig(ik);
  const Eigen::Index n = s.dim();
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> phases(n);
  for (Eigen::Index j = 0; j < n; ++j) phases(j) = std::polar(Real(1), -t * s.eigenvalues(j));
  const auto& v = s.eigenvectors.matrix();
  return UnitaryMatrix<Real>::assume_unitary(v * phases.asDiagonal() * v.adjoint());
}

template <typename Real>
HermitianMatrix<Real> expm(const HermitianMatrix<Real>& a) {
  return spectral_function(a, [](Real x) { return std::exp(x); });
}

}  // namespace uorbit
