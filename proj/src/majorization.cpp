#include "uorbit/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace uorbit {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (int image : map_) {
    if (image < 0 || image >= size() || seen[static_cast<std::size_t>(image)]) {
      throw ValidationError(ValidationError::Kind::kNotPermutation, "mapping is not a bijection");
    }
    seen[static_cast<std::size_t>(image)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> m(static_cast<std::size_t>(d));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::reversal(int d) {
  std::vector<int> m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)] = d - 1 - i;
  return Permutation(std::move(m));
}

Eigen::MatrixXd Permutation::matrix() const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size(), size());
  for (int i = 0; i < size(); ++i) p(i, (*this)[i]) = 1.0;
  return p;
}

Eigen::VectorXd Permutation::apply(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw DimensionError("Permutation::apply: length mismatch");
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < size(); ++i) out(i) = v((*this)[i]);
  return out;
}

BistochasticMatrix::BistochasticMatrix(Eigen::MatrixXd entries) : b_(std::move(entries)) {
  detail::require_square_finite(b_, "bistochastic matrix");
  std::ostringstream problems;
  problems.precision(17);
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    for (Eigen::Index j = 0; j < b_.cols(); ++j) {
      if (b_(i, j) < -tol::kBistochasticEntry) {
        problems << " entry(" << i << "," << j << ")=" << b_(i, j);
      }
    }
  }
  b_ = b_.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    const double r = b_.row(i).sum();
    if (std::abs(r - 1.0) > tol::kBistochasticSum) problems << " row " << i << " sum=" << r;
  }
  for (Eigen::Index j = 0; j < b_.cols(); ++j) {
    const double c = b_.col(j).sum();
    if (std::abs(c - 1.0) > tol::kBistochasticSum) problems << " column " << j << " sum=" << c;
  }
  if (!problems.str().empty()) {
    throw ValidationError(ValidationError::Kind::kNotBistochastic, "matrix is not bistochastic:" + problems.str());
  }
}

Eigen::MatrixXd BirkhoffDecomposition::reconstruct(int d) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (const auto& t : terms) out += t.weight * t.permutation.matrix();
  return out;
}

double BirkhoffDecomposition::weight_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

Eigen::VectorXd sorted_desc(const Eigen::VectorXd& v) {
  Eigen::VectorXd s = v;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

Eigen::VectorXd sorted_asc(const Eigen::VectorXd& v) {
  Eigen::VectorXd s = v;
  std::sort(s.begin(), s.end());
  return s;
}

bool majorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
  if (u.size() != v.size()) throw DimensionError("majorizes: length mismatch");
  const Eigen::VectorXd ud = sorted_desc(u);
  const Eigen::VectorXd vd = sorted_desc(v);
  double su = 0.0;
  double sv = 0.0;
  for (Eigen::Index k = 0; k < ud.size(); ++k) {
    su += ud(k);
    sv += vd(k);
    if (su > sv + tol::kMajorization) return false;
  }
  return std::abs(su - sv) <= tol::kMajorization;
}

BistochasticMatrix unistochastic_from_unitary(const UnitaryMatrixd& u) {
  return BistochasticMatrix(u.matrix().cwiseAbs2());
}

namespace {

// Kuhn's augmenting-path matching on the bipartite graph rows -> columns
// with an edge wherever the residual exceeds the matching threshold.
class PerfectMatcher {
 public:
  explicit PerfectMatcher(const Eigen::MatrixXd& r)
      : r_(r), n_(static_cast<int>(r.rows())), col_owner_(static_cast<std::size_t>(n_), -1) {}

  bool run(std::vector<int>& row_to_col) {
    for (int row = 0; row < n_; ++row) {
      visited_.assign(static_cast<std::size_t>(n_), false);
      if (!augment(row)) return false;
    }
    row_to_col.assign(static_cast<std::size_t>(n_), -1);
    for (int c = 0; c < n_; ++c) row_to_col[static_cast<std::size_t>(col_owner_[static_cast<std::size_t>(c)])] = c;
    return true;
  }

 private:
  bool augment(int row) {
    for (int c = 0; c < n_; ++c) {
      if (r_(row, c) <= tol::kMatchingEntry || visited_[static_cast<std::size_t>(c)]) continue;
      visited_[static_cast<std::size_t>(c)] = true;
      int& owner = col_owner_[static_cast<std::size_t>(c)];
      if (owner < 0 || augment(owner)) {
        owner = row;
        return true;
      }
    }
    return false;
  }

  const Eigen::MatrixXd& r_;
  int n_;
  std::vector<int> col_owner_;
  std::vector<bool> visited_;
};

}  // namespace

BirkhoffDecomposition birkhoff_decomposition(const BistochasticMatrix& b) {
  const int d = b.dim();
  Eigen::MatrixXd residual = b.matrix();
  BirkhoffDecomposition out;
  std::vector<int> match;
  while (residual.maxCoeff() > tol::kBirkhoffResidual) {
    if (!PerfectMatcher(residual).run(match)) {
      std::ostringstream os;
      os << "no perfect matching with residual mass " << residual.sum() / d << " remaining after "
         << out.terms.size() << " terms";
      throw DecompositionError(os.str());
    }
    int argmin = 0;
    for (int i = 1; i < d; ++i) {
      if (residual(i, match[static_cast<std::size_t>(i)]) <
          residual(argmin, match[static_cast<std::size_t>(argmin)])) {
        argmin = i;
      }
    }
    const double w = residual(argmin, match[static_cast<std::size_t>(argmin)]);
    for (int i = 0; i < d; ++i) {
      double& e = residual(i, match[static_cast<std::size_t>(i)]);
      e -= w;
      // Entries equal to w in exact arithmetic land at round-off level.
      if (e <= 1e-15) e = 0.0;
    }
    residual(argmin, match[static_cast<std::size_t>(argmin)]) = 0.0;
    out.terms.push_back({w, Permutation(match)});
  }
  return out;
}

std::pair<double, double> inner_product_interval(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw DimensionError("inner_product_interval: length mismatch");
  const Eigen::VectorXd ud = sorted_desc(u);
  return {ud.dot(sorted_asc(v)), ud.dot(sorted_desc(v))};
}

}  // namespace uorbit
