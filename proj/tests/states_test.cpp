#include <gtest/gtest.h>

#include "test_util.hpp"
#include "uorbit/states.hpp"

namespace uorbit {
namespace {

using testing::Mat;
using testing::max_norm;

ValidationError::Kind rejection_kind(const Mat& raw) {
  try {
    density_from_raw(raw);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "matrix was accepted";
  return ValidationError::Kind::kNonFinite;
}

TEST(DensityFromRaw, AcceptsMaximallyMixedQubit) {
  const DensityMatrix rho = density_from_raw<double>(Eigen::Vector2cd(0.5, 0.5).asDiagonal().toDenseMatrix());
  EXPECT_EQ(rho.dim(), 2);
  EXPECT_NEAR(rho.hermitian().trace(), 1.0, 1e-15);
}

TEST(DensityFromRaw, DistinctDiagnostics) {
  EXPECT_EQ(rejection_kind(Eigen::Vector2cd(0.7, 0.4).asDiagonal().toDenseMatrix()), ValidationError::Kind::kBadTrace);

  Mat anti(2, 2);
  anti << 0.5, std::complex<double>(0, 0.1), std::complex<double>(0, 0.1), 0.5;
  EXPECT_EQ(rejection_kind(anti), ValidationError::Kind::kNonHermitian);

  EXPECT_EQ(rejection_kind(Eigen::Vector2cd(1.1, -0.1).asDiagonal().toDenseMatrix()), ValidationError::Kind::kNotPsd);
  EXPECT_THROW(density_from_raw(Mat(2, 3)), DimensionError);
}

TEST(DensityFromRaw, RepairsTraceAndClampsTinyNegatives) {
  const DensityMatrix rho = density_from_raw<double>(Eigen::Vector3cd(0.5 + 5e-9, 0.5, -1e-12).asDiagonal().toDenseMatrix());
  EXPECT_NEAR(rho.hermitian().trace(), 1.0, 1e-15);
  EXPECT_GE(rho.spectrum().eigenvalues.minCoeff(), 0.0);
  EXPECT_THROW(density_from_raw<double>(Eigen::Vector2cd(0.5 + 2e-8, 0.5).asDiagonal().toDenseMatrix()), ValidationError);
}

TEST(DensityFromRaw, Idempotent) {
  for (int seed = 0; seed < 20; ++seed) {
    SeededRng rng(seed);
    const int d = 1 + seed % 6;
    const DensityMatrix rho = random_density(d, 1 + seed % d, rng);
    const DensityMatrix again = density_from_raw(rho.matrix());
    EXPECT_LT(max_norm(again.matrix() - rho.matrix()), 1e-12);
  }
}

TEST(DensityFromRaw, RoundoffEigenvaluesBecomeExactZeros) {
  for (int seed = 0; seed < 20; ++seed) {
    SeededRng rng(500 + seed);
    const int d = 2 + seed % 5;
    const DensityMatrix rho = random_density(d, 1, rng);
    const Eigen::VectorXd p = spectrum_desc(rho).values();
    EXPECT_EQ(p.tail(d - 1), Eigen::VectorXd::Zero(d - 1));
    EXPECT_NEAR(p(0), 1.0, 1e-14);
  }
  // A genuine small eigenvalue above the floor survives.
  const DensityMatrix small = testing::diag_state({1.0 - 1e-12, 1e-12});
  EXPECT_NEAR(spectrum_desc(small)[1], 1e-12, 1e-24);
}

TEST(Spectrum, DescendingAndAscending) {
  const DensityMatrix rho = testing::diag_state({0.25, 0.75});
  EXPECT_EQ(spectrum_desc(rho).values(), Eigen::Vector2d(0.75, 0.25));
  EXPECT_EQ(spectrum_asc(rho).values(), Eigen::Vector2d(0.25, 0.75));

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(spectrum_desc(mixed)[j], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(spectrum_asc(mixed)[j], 1.0 / 3.0, 1e-15);
  }
}

TEST(Spectrum, RandomStateSortOracle) {
  SeededRng rng(11);
  const DensityMatrix rho = random_density(4, 4, rng);
  const Eigen::VectorXd desc = spectrum_desc(rho).values();
  Eigen::VectorXd asc = spectrum_asc(rho).values();
  std::sort(asc.begin(), asc.end(), std::greater<>());
  EXPECT_EQ(desc, asc);
  EXPECT_NEAR(desc.sum(), 1.0, 1e-10);
  for (int j = 0; j + 1 < 4; ++j) EXPECT_GE(desc(j), desc(j + 1));
  EXPECT_LT((desc - testing::reference_eigenvalues_desc(rho.matrix())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProbabilityVector, Validation) {
  EXPECT_NO_THROW(ProbabilityVector(Eigen::Vector2d(1.0, -1e-12)));
  EXPECT_THROW(ProbabilityVector(Eigen::Vector2d(1.1, -0.1)), ValidationError);
  EXPECT_THROW(ProbabilityVector(Eigen::Vector2d(0.5, 0.4)), ValidationError);
}

TEST(Conjugate, IdentityAndSwap) {
  const DensityMatrix rho = testing::diag_state({1.0, 0.0});
  EXPECT_LT(max_norm(conjugate(rho, UnitaryMatrixd::identity(2)).matrix() - rho.matrix()), 1e-15);
  const DensityMatrix swapped = conjugate(rho, UnitaryMatrixd::reversal(2));
  EXPECT_LT(max_norm(swapped.matrix() - testing::diag_state({0.0, 1.0}).matrix()), 1e-15);
  EXPECT_THROW(conjugate(rho, UnitaryMatrixd::identity(3)), DimensionError);
}

TEST(Conjugate, PreservesTraceHermiticityPsdAndSpectrum) {
  for (int seed = 0; seed < 30; ++seed) {
    SeededRng rng(300 + seed);
    const int d = 2 + seed % 5;
    const DensityMatrix rho = random_density(d, 1 + seed % d, rng);
    const DensityMatrix out = conjugate(rho, haar_unitary(d, rng));
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_norm(out.matrix() - out.matrix().adjoint()), 1e-15);
    const Eigen::VectorXd fresh = testing::reference_eigenvalues_desc(out.matrix());
    EXPECT_GE(fresh.minCoeff(), -1e-12);
    EXPECT_LT((fresh - spectrum_desc(rho).values()).cwiseAbs().maxCoeff(), 1e-9);
    // The carried spectrum really diagonalizes the conjugated matrix.
    EXPECT_LT(max_norm(out.spectrum().reconstruct() - out.matrix()), 1e-12);
  }
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  Mat m(2, 2);
  m << 1.0, 0.1, 0.0, 1.0;
  EXPECT_THROW(UnitaryMatrixd{m}, ValidationError);
  EXPECT_NO_THROW(UnitaryMatrixd{testing::pauli_x()});
}

}  // namespace
}  // namespace uorbit
