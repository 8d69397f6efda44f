// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "uorbit/cli.hpp"
#include "uorbit/dynamics.hpp"
#include "uorbit/majorization.hpp"
#include "uorbit/orbit_extrema.hpp"
#include "uorbit/verify.hpp"

namespace {

using namespace uorbit;
using testing::Mat;

// Pinned tolerances.
constexpr double kEndpointTol = 1e-8;
constexpr double kContainmentSlack = 1e-9;
constexpr double kTargetTol = 1e-8;
constexpr double kOracleAgreement = 1e-9;
constexpr double kEntropySlack = 1e-9;
constexpr double kWorkedInstanceTol = 1e-6;
constexpr double kFdStep = 1e-5;
constexpr double kFdAbs = 1e-6;
constexpr double kFdRel = 1e-4;
constexpr double kStationarityTol = 1e-7;
constexpr double kGoldenThompsonSlack = 1e-9;
constexpr double kPauliTol = 1e-5;
constexpr double kRearrangementSlack = 1e-9;
constexpr double kBirkhoffResidualTol = 1e-8;
constexpr double kScanEqualityTol = 1e-9;
constexpr double kScanQubitTol = 1e-6;

constexpr int kHaarPerPair = 10000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tracker {
 public:
  void check(bool ok, double value, const char* what) {
    if (!ok && failures_++ < 3) first_ << what << "=" << value << "; ";
    worst_ = std::max(worst_, value);
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << ", worst " << worst_;
    if (failures_) os << ", " << failures_ << " failures (" << first_.str() << ")";
    return {failures_ == 0, os.str()};
  }

 private:
  int failures_ = 0;
  double worst_ = 0.0;
  std::ostringstream first_;
};

double closed_form_fidelity(const Eigen::VectorXd& p_desc, const Eigen::VectorXd& q) {
  return (p_desc.cwiseMax(0.0).cwiseProduct(q.cwiseMax(0.0))).cwiseSqrt().sum();
}

double closed_form_relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j) > 1e-15) s += p(j) * (std::log(p(j)) - std::log(q(j)));
  }
  return s;
}

Outcome criterion_1() {
  Tracker t;
  for (int pair = 0; pair < 200; ++pair) {
    SeededRng rng(1001, static_cast<std::uint64_t>(pair));
    const int d = 2 + pair % 5;
    const int rank_rho = 1 + static_cast<int>(rng.below(d));
    const int rank_sigma = 1 + static_cast<int>(rng.below(d));
    const DensityMatrix rho = random_density(d, rank_rho, rng);
    const DensityMatrix sigma = random_density(d, rank_sigma, rng);
    // Eigen's spectra, with the eigenvalues known to vanish set to exact zeros.
    Eigen::VectorXd p = testing::reference_eigenvalues_desc(rho.matrix());
    Eigen::VectorXd q = testing::reference_eigenvalues_desc(sigma.matrix());
    p.tail(d - rank_rho).setZero();
    q.tail(d - rank_sigma).setZero();
    const double hi = closed_form_fidelity(p, q);
    const double lo = closed_form_fidelity(p, q.reverse());

    const OrbitExtremes ex = fidelity_extremes(rho, sigma);
    t.check(std::abs(fidelity(rho, sigma.conjugated(ex.maximizer)) - hi) <= kEndpointTol,
            std::abs(fidelity(rho, sigma.conjugated(ex.maximizer)) - hi), "max");
    t.check(std::abs(fidelity(rho, sigma.conjugated(ex.minimizer)) - lo) <= kEndpointTol,
            std::abs(fidelity(rho, sigma.conjugated(ex.minimizer)) - lo), "min");

    const FidelityEvaluator eval(rho);
    double exit = -INFINITY;
    for (int i = 0; i < kHaarPerPair; ++i) {
      SeededRng sample(2001 + static_cast<std::uint64_t>(pair), static_cast<std::uint64_t>(i));
      const double f = eval(haar_unitary(d, sample), sigma);
      exit = std::max(exit, std::max(lo - f, f - hi));
    }
    t.check(exit <= kContainmentSlack, std::max(0.0, exit), "haar_exit");
  }
  return t.outcome("200 pairs, d 2..6, 1e4 Haar samples each");
}

Outcome criterion_2() {
  Tracker t;
  int full = 0;
  for (int pair = 0; pair < 50; ++pair) {
    SeededRng rng(1002, static_cast<std::uint64_t>(pair));
    const int d = 2 + pair % 5;
    const DensityMatrix rho = random_density(d, 1 + static_cast<int>(rng.below(d)), rng);
    const DensityMatrix sigma = random_density(d, 1 + static_cast<int>(rng.below(d)), rng);
    const OrbitExtremes ex = fidelity_extremes(rho, sigma);
    int hits = 0;
    for (double target : linspace(ex.min_value, ex.max_value, 33)) {
      double err = INFINITY;
      try {
        const UnitaryMatrixd u = unitary_for_target_fidelity(rho, sigma, target, kTargetTol);
        const DensityMatrix moved = sigma.conjugated(u);
        err = std::abs(fidelity(rho, moved) - target);
        const double oracle_gap = std::abs(testing::reference_fidelity(rho.matrix(), moved.matrix()) - fidelity(rho, moved));
        t.check(oracle_gap <= kOracleAgreement, oracle_gap, "oracle");
      } catch (const Error&) {
      }
      hits += err <= kTargetTol;
      t.check(err <= kTargetTol, err, "target");
    }
    full += hits == 33;
  }
  return t.outcome("33/33 coverage on " + std::to_string(full) + "/50 pairs");
}

Outcome criterion_3() {
  Tracker t;
  for (int pair = 0; pair < 200; ++pair) {
    SeededRng rng(1003, static_cast<std::uint64_t>(pair));
    const int d = 2 + pair % 5;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const Eigen::VectorXd p = testing::reference_eigenvalues_desc(rho.matrix());
    const Eigen::VectorXd q = testing::reference_eigenvalues_desc(sigma.matrix());
    const double lower = closed_form_relative_entropy(p, q);
    const double upper = closed_form_relative_entropy(p, q.reverse());
    const double s = relative_entropy(rho, sigma);
    t.check(lower - s <= kEntropySlack, lower - s, "below");
    t.check(s - upper <= kEntropySlack, s - upper, "above");

    const OrbitExtremes ex = relative_entropy_extremes(rho, sigma);
    t.check(std::abs(ex.min_value - lower) <= kEntropySlack, std::abs(ex.min_value - lower), "min");
    t.check(std::abs(ex.max_value - upper) <= kEntropySlack, std::abs(ex.max_value - upper), "max");

    // Commuting pairs built in one basis, sorted-aligned and reverse-aligned.
    const UnitaryMatrixd basis = haar_unitary(d, rng);
    const DensityMatrix r = testing::state_in_basis(p, basis);
    const double aligned = relative_entropy(r, testing::state_in_basis(q, basis));
    const double reversed = relative_entropy(r, testing::state_in_basis(q.reverse(), basis));
    t.check(std::abs(aligned - lower) <= kEntropySlack, std::abs(aligned - lower), "aligned");
    t.check(std::abs(reversed - upper) <= kEntropySlack, std::abs(reversed - upper), "reversed");
  }
  return t.outcome("200 full-rank pairs plus aligned equality cases");
}

Outcome criterion_4() {
  Tracker t;
  SeededRng rng(1004);
  const DensityMatrix rho = testing::state_in_basis(Eigen::Vector2d(0.75, 0.25), haar_unitary(2, rng));
  const DensityMatrix sigma = testing::state_in_basis(Eigen::Vector2d(0.6, 0.4), haar_unitary(2, rng));
  const double f_max = std::sqrt(0.75 * 0.6) + std::sqrt(0.25 * 0.4);
  const double f_min = std::sqrt(0.75 * 0.4) + std::sqrt(0.25 * 0.6);
  const double s_min = 0.75 * std::log(0.75 / 0.6) + 0.25 * std::log(0.25 / 0.4);
  const double s_max = 0.75 * std::log(0.75 / 0.4) + 0.25 * std::log(0.25 / 0.6);
  const OrbitExtremes fe = fidelity_extremes(rho, sigma);
  const OrbitExtremes re = relative_entropy_extremes(rho, sigma);
  t.check(std::abs(fe.min_value - f_min) <= kWorkedInstanceTol, std::abs(fe.min_value - f_min), "f_min");
  t.check(std::abs(fe.max_value - f_max) <= kWorkedInstanceTol, std::abs(fe.max_value - f_max), "f_max");
  t.check(std::abs(re.min_value - s_min) <= kWorkedInstanceTol, std::abs(re.min_value - s_min), "s_min");
  t.check(std::abs(re.max_value - s_max) <= kWorkedInstanceTol, std::abs(re.max_value - s_max), "s_max");
  char buf[160];
  std::snprintf(buf, sizeof buf, "F in [%.6f, %.6f], S in [%.6f, %.6f]", fe.min_value, fe.max_value, re.min_value,
                re.max_value);
  return t.outcome(buf);
}

Outcome criterion_5() {
  Tracker t;
  for (int inst = 0; inst < 100; ++inst) {
    SeededRng rng(1005, static_cast<std::uint64_t>(inst));
    const int d = 2 + inst % 3;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const SkewHermitianMatrixd k = random_skew_hermitian(d, 1.0, rng);
    const double time = 2.0 * rng.uniform() - 1.0;
    const auto g = [&](double s) {
      return testing::reference_fidelity(rho.matrix(), sigma.conjugated(exp_skew(k, s)).matrix());
    };
    const double fd = (g(time + kFdStep) - g(time - kFdStep)) / (2.0 * kFdStep);
    const double analytic = fidelity_orbit_derivative(rho, sigma, k, time);
    const double allowed = std::max(kFdAbs, kFdRel * std::abs(fd));
    t.check(std::abs(analytic - fd) <= allowed, std::abs(analytic - fd), "derivative");
  }
  return t.outcome("100 full-rank instances, d 2..4");
}

Outcome criterion_6() {
  Tracker t;
  for (int pair = 0; pair < 100; ++pair) {
    SeededRng rng(1006, static_cast<std::uint64_t>(pair));
    const int d = 2 + pair % 5;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const OrbitExtremes ex = fidelity_extremes(rho, sigma);
    const double r_max = stationarity_residual(rho, sigma, ex.maximizer);
    const double r_min = stationarity_residual(rho, sigma, ex.minimizer);
    t.check(r_max <= kStationarityTol, r_max, "maximizer");
    t.check(r_min <= kStationarityTol, r_min, "minimizer");
  }
  return t.outcome("100 full-rank pairs, both optimizers");
}

Outcome criterion_7() {
  Tracker t;
  for (int i = 0; i < 500; ++i) {
    SeededRng rng(1007, static_cast<std::uint64_t>(i));
    const GoldenThompson gt = check_golden_thompson(random_hermitian(4, rng), random_hermitian(4, rng));
    t.check(gt.gap >= -kGoldenThompsonSlack, -gt.gap, "random_gap");
  }
  for (int i = 0; i < 100; ++i) {
    SeededRng rng(2007, static_cast<std::uint64_t>(i));
    const UnitaryMatrixd basis = haar_unitary(4, rng);
    Eigen::Vector4d a;
    Eigen::Vector4d b;
    for (int j = 0; j < 4; ++j) {
      a(j) = rng.gaussian();
      b(j) = rng.gaussian();
    }
    const GoldenThompson gt = check_golden_thompson(conjugate_by(basis, HermitianMatrixd::diagonal(a)),
                                                    conjugate_by(basis, HermitianMatrixd::diagonal(b)));
    // Absolute slack on an O(10) trace; relative roundoff is ~1e-15.
    t.check(std::abs(gt.gap) <= kGoldenThompsonSlack * std::max(1.0, gt.rhs), std::abs(gt.gap), "commuting_gap");
  }
  const GoldenThompson pauli =
      check_golden_thompson(HermitianMatrixd(testing::pauli_x()), HermitianMatrixd(testing::pauli_z()));
  // Closed forms 2 cosh(sqrt 2) = 4.356367 and 2 cosh^2(1) = 4.762196.
  const double lhs_closed = 2.0 * std::cosh(std::sqrt(2.0));
  const double rhs_closed = 2.0 * std::cosh(1.0) * std::cosh(1.0);
  t.check(std::abs(pauli.lhs - lhs_closed) <= kPauliTol, std::abs(pauli.lhs - lhs_closed), "pauli_lhs");
  t.check(std::abs(pauli.rhs - rhs_closed) <= kPauliTol, std::abs(pauli.rhs - rhs_closed), "pauli_rhs");
  t.check(std::abs(pauli.rhs - 4.76220) <= kPauliTol, std::abs(pauli.rhs - 4.76220), "pauli_rhs_quoted");
  char buf[128];
  std::snprintf(buf, sizeof buf, "500 random, 100 commuting, Pauli lhs %.6f (closed form %.6f) rhs %.6f", pauli.lhs,
                lhs_closed, pauli.rhs);
  return t.outcome(buf);
}

Outcome criterion_8() {
  Tracker t;
  for (int d = 1; d <= 6; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      SeededRng rng(1008, static_cast<std::uint64_t>(100 * d + rep));
      const Eigen::VectorXd u = Eigen::VectorXd::NullaryExpr(d, [&] { return rng.gaussian(); });
      const Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(d, [&] { return rng.gaussian(); });
      std::vector<int> perm(static_cast<std::size_t>(d));
      std::iota(perm.begin(), perm.end(), 0);
      double lo = INFINITY;
      double hi = -INFINITY;
      do {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += u(i) * v(perm[static_cast<std::size_t>(i)]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      } while (std::next_permutation(perm.begin(), perm.end()));
      const auto [got_lo, got_hi] = inner_product_interval(u, v);
      t.check(std::abs(got_lo - lo) <= kRearrangementSlack, std::abs(got_lo - lo), "exhaustive_lo");
      t.check(std::abs(got_hi - hi) <= kRearrangementSlack, std::abs(got_hi - hi), "exhaustive_hi");
    }
  }
  for (int i = 0; i < 2000; ++i) {
    SeededRng rng(2008, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 7;
    const Eigen::VectorXd u = Eigen::VectorXd::NullaryExpr(d, [&] { return rng.gaussian(); });
    const Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(d, [&] { return rng.gaussian(); });
    const BistochasticMatrix b = i < 1000 ? random_bistochastic(d, rng) : unistochastic_from_unitary(haar_unitary(d, rng));
    const auto [lo, hi] = inner_product_interval(u, v);
    const double x = u.dot(b.matrix() * v);
    t.check(x >= lo - kRearrangementSlack && x <= hi + kRearrangementSlack, std::max(0.0, std::max(lo - x, x - hi)), "sandwich");
  }
  return t.outcome("exhaustive d<=6, 1e3 bistochastic, 1e3 unistochastic");
}

Outcome criterion_9() {
  Tracker t;
  std::size_t most_terms = 0;
  for (int i = 0; i < 200; ++i) {
    SeededRng rng(1009, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 7;
    const BistochasticMatrix b = i % 2 ? random_bistochastic(d, rng) : unistochastic_from_unitary(haar_unitary(d, rng));
    const BirkhoffDecomposition dec = birkhoff_decomposition(b);
    Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(d, d);
    for (const auto& term : dec.terms) {
      for (int r = 0; r < d; ++r) rebuilt(r, term.permutation[r]) += term.weight;
    }
    const double residual = (rebuilt - b.matrix()).cwiseAbs().maxCoeff();
    const std::size_t bound = static_cast<std::size_t>((d - 1) * (d - 1) + 1);
    most_terms = std::max(most_terms, dec.terms.size());
    t.check(residual <= kBirkhoffResidualTol, residual, "residual");
    t.check(dec.terms.size() <= bound, static_cast<double>(dec.terms.size()) - static_cast<double>(bound), "excess_terms");
  }
  return t.outcome("200 matrices, d 2..8, most terms " + std::to_string(most_terms));
}

Outcome criterion_10() {
  Tracker t;
  for (int i = 0; i < 20; ++i) {
    SeededRng rng(1010, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 4;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    // H diagonal in sigma's eigenbasis commutes with sigma.
    Eigen::VectorXd e(d);
    for (int j = 0; j < d; ++j) e(j) = rng.gaussian();
    const HermitianMatrixd h = conjugate_by(sigma.spectrum().eigenvectors, HermitianMatrixd::diagonal(e));
    const ScanResult r = extremize_over_hamiltonian_orbit(rho, sigma, h, {});
    const double f0 = testing::reference_fidelity(rho.matrix(), sigma.matrix());
    t.check(std::abs(r.g_min - f0) <= kScanEqualityTol, std::abs(r.g_min - f0), "commuting_min");
    t.check(std::abs(r.g_max - f0) <= kScanEqualityTol, std::abs(r.g_max - f0), "commuting_max");
  }

  const DensityMatrix rho = testing::diag_state({0.75, 0.25});
  const DensityMatrix sigma = testing::diag_state({0.6, 0.4});
  const ScanResult q = extremize_over_hamiltonian_orbit(rho, sigma, HermitianMatrixd(testing::pauli_x()), {});
  const double f_max = std::sqrt(0.75 * 0.6) + std::sqrt(0.25 * 0.4);
  const double f_min = std::sqrt(0.75 * 0.4) + std::sqrt(0.25 * 0.6);
  t.check(std::abs(q.g_min - f_min) <= kScanQubitTol, std::abs(q.g_min - f_min), "qubit_min");
  t.check(std::abs(q.g_max - f_max) <= kScanQubitTol, std::abs(q.g_max - f_max), "qubit_max");

  for (int i = 0; i < 30; ++i) {
    SeededRng rng(2010, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 5;
    const DensityMatrix a = random_density(d, 1 + static_cast<int>(rng.below(d)), rng);
    const DensityMatrix b = random_density(d, 1 + static_cast<int>(rng.below(d)), rng);
    const OrbitExtremes ex = fidelity_extremes(a, b);
    const ScanResult r = extremize_over_hamiltonian_orbit(a, b, random_hermitian(d, rng), {.t_max = std::nullopt, .grid = 64});
    const double out = std::max({ex.min_value - r.g_min, r.g_max - ex.max_value, r.g_min - r.g_max});
    t.check(out <= kContainmentSlack, std::max(0.0, out), "containment");
  }
  return t.outcome("20 commuting scans, qubit Pauli-x, 30 containment scans");
}

Outcome criterion_11() {
  const std::vector<std::string> args = {"uorbit", "verify", "all", "--seed", "0"};
  std::ostringstream first_out, first_err, second_out, second_err;
  const int c1 = cli::run(args, first_out, first_err);
  const int c2 = cli::run(args, second_out, second_err);
  const bool same = first_out.str() == second_out.str() && !first_out.str().empty();
  std::ostringstream os;
  os << "exit codes " << c1 << "/" << c2 << ", " << first_out.str().size() << " bytes, "
     << (same ? "byte-identical" : "reports differ");
  return {same && c1 == c2, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"fidelity orbit endpoints and Haar containment", criterion_1},
      {"interval filling by targeted bisection", criterion_2},
      {"relative entropy endpoints and sandwich", criterion_3},
      {"qubit worked instance", criterion_4},
      {"orbit derivative vs finite differences", criterion_5},
      {"stationarity at closed-form optimizers", criterion_6},
      {"Golden-Thompson", criterion_7},
      {"rearrangement bounds for bistochastic pairings", criterion_8},
      {"Birkhoff decomposition", criterion_9},
      {"Hamiltonian orbit scan", criterion_10},
      {"determinism of verify all", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2zu  %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
