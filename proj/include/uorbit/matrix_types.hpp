#pragma once

// Dense complex operator types. Every type is templated on the real scalar
// and wraps an Eigen matrix of std::complex<Real>; the wrapped value is
// validated once at construction and immutable afterwards.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "uorbit/errors.hpp"
#include "uorbit/tolerances.hpp"

namespace uorbit {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrixd = ComplexMatrix<double>;

/// Largest absolute entry; zero for an empty matrix.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  using R = typename Derived::RealScalar;
  return m.size() == 0 ? R(0) : m.cwiseAbs().maxCoeff();
}

namespace detail {

template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
  if (!m.allFinite()) {
    throw ValidationError(ValidationError::Kind::kNonFinite, std::string(what) + ": entries must be finite");
  }
}

template <typename Real>
Real relative_scale(const ComplexMatrix<Real>& m) {
  using std::max;
  return max(Real(1), max_abs(m));
}

}  // namespace detail

/// Hermitian operator, stored canonically as (A + A^dagger) / 2.
template <typename Real>
class HermitianMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  explicit HermitianMatrix(const Matrix& a) {
    detail::require_square_finite(a, "HermitianMatrix");
    const Real asym = max_abs((a - a.adjoint()).eval());
    if (asym > Real(tol::kHermitian) * detail::relative_scale<Real>(a)) {
      std::ostringstream os;
      os << "matrix is not Hermitian: |A - A^dagger|_max = " << asym;
      throw ValidationError(ValidationError::Kind::kNonHermitian, os.str());
    }
    m_ = (a + a.adjoint()) / Real(2);
  }

  /// Nearest Hermitian matrix, without the asymmetry check. For operators
  /// that are Hermitian in exact arithmetic (products like S X S^dagger).
  static HermitianMatrix project(const Matrix& a) {
    detail::require_square_finite(a, "HermitianMatrix");
    return HermitianMatrix((a + a.adjoint()) / Real(2), Unchecked{});
  }

  static HermitianMatrix diagonal(const RealVector<Real>& d) {
    return HermitianMatrix(d.template cast<Scalar>().asDiagonal().toDenseMatrix(), Unchecked{});
  }

  static HermitianMatrix zero(Eigen::Index dim) { return HermitianMatrix(Matrix::Zero(dim, dim), Unchecked{}); }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Real trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ + b.m_, Unchecked{});
  }
  friend HermitianMatrix operator*(Real s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_, Unchecked{}); }

 private:
  struct Unchecked {};
  HermitianMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

/// Skew-Hermitian generator K (K^dagger = -K), stored as (K - K^dagger) / 2.
template <typename Real>
class SkewHermitianMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  explicit SkewHermitianMatrix(const Matrix& k) {
    detail::require_square_finite(k, "SkewHermitianMatrix");
    const Real sym = max_abs((k + k.adjoint()).eval());
    if (sym > Real(tol::kHermitian) * detail::relative_scale<Real>(k)) {
      std::ostringstream os;
      os << "matrix is not skew-Hermitian: |K + K^dagger|_max = " << sym;
      throw ValidationError(ValidationError::Kind::kNonSkewHermitian, os.str());
    }
    m_ = (k - k.adjoint()) / Real(2);
  }

  static SkewHermitianMatrix project(const Matrix& k) {
    detail::require_square_finite(k, "SkewHermitianMatrix");
    return SkewHermitianMatrix((k - k.adjoint()) / Real(2), Unchecked{});
  }

  /// -iH, the generator of t -> exp(-itH).
  static SkewHermitianMatrix from_hamiltonian(const HermitianMatrix<Real>& h) {
    return SkewHermitianMatrix(std::complex<Real>(0, -1) * h.matrix(), Unchecked{});
  }

  static SkewHermitianMatrix zero(Eigen::Index dim) { return SkewHermitianMatrix(Matrix::Zero(dim, dim), Unchecked{}); }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  struct Unchecked {};
  SkewHermitianMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

/// Element of U(d): |U^dagger U - I|_max <= 1e-9.
template <typename Real>
class UnitaryMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  explicit UnitaryMatrix(const Matrix& u) : m_(u) {
    detail::require_square_finite(u, "UnitaryMatrix");
    const Real err = unitarity_error(u);
    if (err > Real(tol::kUnitary)) {
      std::ostringstream os;
      os << "matrix is not unitary: |U^dagger U - I|_max = " << err;
      throw ValidationError(ValidationError::Kind::kNotUnitary, os.str());
    }
  }

  static UnitaryMatrix identity(Eigen::Index dim) { return UnitaryMatrix(Matrix::Identity(dim, dim), Unchecked{}); }

  /// Order-reversal permutation |j> -> |d-1-j>.
  static UnitaryMatrix reversal(Eigen::Index dim) {
    Matrix r = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) r(dim - 1 - j, j) = Real(1);
    return UnitaryMatrix(std::move(r), Unchecked{});
  }

  /// Trusted construction for products of unitaries and eigenvector bases.
  static UnitaryMatrix assume_unitary(Matrix u) { return UnitaryMatrix(std::move(u), Unchecked{}); }

  static Real unitarity_error(const Matrix& u) {
    return max_abs((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).eval());
  }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint(), Unchecked{}); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("unitary product: dimension mismatch");
    return UnitaryMatrix(a.m_ * b.m_, Unchecked{});
  }

 private:
  struct Unchecked {};
  UnitaryMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

using HermitianMatrixd = HermitianMatrix<double>;
using SkewHermitianMatrixd = SkewHermitianMatrix<double>;
using UnitaryMatrixd = UnitaryMatrix<double>;

/// U A U^dagger for Hermitian A.
template <typename Real>
HermitianMatrix<Real> conjugate_by(const UnitaryMatrix<Real>& u, const HermitianMatrix<Real>& a) {
  if (u.dim() != a.dim()) throw DimensionError("conjugate_by: dimension mismatch");
  return HermitianMatrix<Real>::project(u.matrix() * a.matrix() * u.matrix().adjoint());
}

/// A B - B A.
template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

}  // namespace uorbit
