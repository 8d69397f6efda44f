#include "uorbit/sampling.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <sstream>

namespace uorbit {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

void require_dim(int d, const char* op) {
  if (d < 1) {
    std::ostringstream os;
    os << op << ": dimension must be >= 1, got " << d;
    throw DimensionError(os.str());
  }
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  auto seq = make_seed_seq(seed, stream);
  engine_.seed(seq);
}

double SeededRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t SeededRng::below(std::uint64_t n) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double SeededRng::gaussian() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  double x, y, s;
  do {
    x = 2.0 * uniform() - 1.0;
    y = 2.0 * uniform() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * f;
  return x * f;
}

std::complex<double> SeededRng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrixd ginibre(int rows, int cols, SeededRng& rng) {
  ComplexMatrixd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  }
  return g;
}

UnitaryMatrixd haar_unitary(int d, SeededRng& rng) {
  require_dim(d, "haar_unitary");
  const Eigen::HouseholderQR<ComplexMatrixd> qr(ginibre(d, d, rng));
  ComplexMatrixd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrixd::assume_unitary(std::move(q));
}

DensityMatrix random_density(int d, int rank, SeededRng& rng) {
  require_dim(d, "random_density");
  if (rank < 1 || rank > d) {
    std::ostringstream os;
    os << "random_density: rank must be in [1, " << d << "], got " << rank;
    throw DimensionError(os.str());
  }
  const ComplexMatrixd g = ginibre(d, rank, rng);
  ComplexMatrixd w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix::from_raw(w);
}

SkewHermitianMatrixd random_skew_hermitian(int d, double scale, SeededRng& rng) {
  require_dim(d, "random_skew_hermitian");
  if (!(scale > 0.0)) throw DomainError("random_skew_hermitian: scale must be positive", scale);
  const ComplexMatrixd g = ginibre(d, d, rng);
  return SkewHermitianMatrixd::project(scale * (g - g.adjoint()));
}

HermitianMatrixd random_hermitian(int d, SeededRng& rng) {
  require_dim(d, "random_hermitian");
  return HermitianMatrixd::project(ginibre(d, d, rng));
}

Permutation random_permutation(int d, SeededRng& rng) {
  require_dim(d, "random_permutation");
  std::vector<int> m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)] = i;
  // Fisher-Yates, written out so the sequence does not depend on the
  // standard library's std::shuffle.
  for (int i = d - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(m));
}

BistochasticMatrix random_bistochastic(int d, SeededRng& rng) {
  require_dim(d, "random_bistochastic");
  const int count = std::min(d * d, 2 * d);
  std::vector<double> w(static_cast<std::size_t>(count));
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log1p(-rng.uniform());
    total += x;
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < count; ++k) {
    const Permutation p = random_permutation(d, rng);
    for (int i = 0; i < d; ++i) b(i, p[i]) += w[static_cast<std::size_t>(k)] / total;
  }
  return BistochasticMatrix(std::move(b));
}

}  // namespace uorbit
