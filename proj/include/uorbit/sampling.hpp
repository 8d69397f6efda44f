#pragma once

// Reproducible random generation.
//
// SeededRng is std::mt19937_64 seeded through std::seed_seq with the four
// 32-bit halves of (seed, stream). Both are fully specified by the C++
// standard, so a given (seed, stream) yields the same sequence everywhere.
// Uniform doubles take the top 53 bits of one draw; Gaussians use the
// Marsaglia polar method, rejecting pairs with s >= 1 or s == 0 and
// returning both variates of an accepted pair in order.

#include <cstdint>
#include <optional>
#include <random>

#include "uorbit/majorization.hpp"
#include "uorbit/states.hpp"

namespace uorbit {

class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  double gaussian();
  /// Standard complex Gaussian: (x + iy) / sqrt(2), E|z|^2 = 1.
  std::complex<double> complex_gaussian();

  /// Independent generator for sample `index` of a run seeded with `seed`.
  static SeededRng for_sample(std::uint64_t seed, std::uint64_t index) { return SeededRng(seed, index); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

ComplexMatrixd ginibre(int rows, int cols, SeededRng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with column j of Q
/// multiplied by R_jj / |R_jj|.
UnitaryMatrixd haar_unitary(int d, SeededRng& rng);

/// G G^dagger / Tr(G G^dagger), G a d x rank Ginibre matrix.
DensityMatrix random_density(int d, int rank, SeededRng& rng);

/// scale * (G - G^dagger) / 2.
SkewHermitianMatrixd random_skew_hermitian(int d, double scale, SeededRng& rng);

/// (G + G^dagger) / 2, a GUE-type Hermitian matrix.
HermitianMatrixd random_hermitian(int d, SeededRng& rng);

Permutation random_permutation(int d, SeededRng& rng);

/// Convex combination of min(d^2, 2d) uniform permutations with flat
/// Dirichlet weights.
BistochasticMatrix random_bistochastic(int d, SeededRng& rng);

}  // namespace uorbit
