#pragma once

// Majorization order, bistochastic and unistochastic matrices, and the
// Birkhoff-von Neumann decomposition.

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "uorbit/matrix_types.hpp"

namespace uorbit {

/// Bijection on {0, ..., d-1}. The induced matrix has P(i, pi(i)) = 1, so
/// (P v)_i = v_{pi(i)}.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);

  static Permutation identity(int d);
  static Permutation reversal(int d);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator[](int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& mapping() const noexcept { return map_; }

  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// Non-negative real matrix with unit row and column sums.
class BistochasticMatrix {
 public:
  /// Entries >= -1e-12 (clamped to 0); row/column sums within 1e-10 of 1.
  /// Throws ValidationError listing the violated sums otherwise.
  explicit BistochasticMatrix(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& matrix() const noexcept { return b_; }
  int dim() const noexcept { return static_cast<int>(b_.rows()); }

 private:
  Eigen::MatrixXd b_;
};

struct BirkhoffTerm {
  double weight;
  Permutation permutation;
};

struct BirkhoffDecomposition {
  std::vector<BirkhoffTerm> terms;

  Eigen::MatrixXd reconstruct(int d) const;
  double weight_sum() const;
};

/// True iff u is majorized by v: the partial sums of u-down are dominated by
/// those of v-down and the totals agree (tolerance 1e-10).
bool majorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u);

/// D = U o conj(U), i.e. D_ij = |U_ij|^2.
BistochasticMatrix unistochastic_from_unitary(const UnitaryMatrixd& u);

/// Greedy Birkhoff extraction: find a perfect matching on entries > 1e-9,
/// subtract the smallest matched entry times that permutation, repeat until
/// the residual max entry is <= 1e-8.
BirkhoffDecomposition birkhoff_decomposition(const BistochasticMatrix& b);

/// [<u-down, v-up>, <u-down, v-down>], the range of <u, B v> over bistochastic B.
std::pair<double, double> inner_product_interval(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

Eigen::VectorXd sorted_desc(const Eigen::VectorXd& v);
Eigen::VectorXd sorted_asc(const Eigen::VectorXd& v);

}  // namespace uorbit
