#pragma once

// Seeded property checks for the orbit inequalities. Each check draws
// sample i from SeededRng(seed, i), so reports do not depend on evaluation
// order.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uorbit/sampling.hpp"

namespace uorbit {

struct CheckReport {
  std::string name;
  int samples = 0;
  int failures = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> extras;

  bool passed() const noexcept { return failures == 0; }
  /// Counts a failure when violation > tolerance and tracks the maximum.
  void record(double violation);

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

struct GoldenThompson {
  double lhs;  // Tr exp(A + B)
  double rhs;  // Tr exp(A) exp(B)
  double gap;  // rhs - lhs
};

GoldenThompson check_golden_thompson(const HermitianMatrixd& a, const HermitianMatrixd& b);

/// How far Tr{A U B U^dagger} falls outside [<l-down(A), l-up(B)>, <l-down(A), l-down(B)>];
/// non-positive when the inequality holds.
double check_trace_inequality(const HermitianMatrixd& a, const HermitianMatrixd& b, const UnitaryMatrixd& u);

/// Haar containment plus constructive coverage of the fidelity interval.
/// extras: "min", "max", "sampled_bin_coverage" and "targeted_bin_coverage"
/// (fractions of 32 equal-width bins), "targeted_hits" (out of 33 targets
/// spaced evenly over [min, max], endpoints included).
CheckReport check_fidelity_interval(const DensityMatrix& rho, const DensityMatrix& sigma, int samples,
                                    std::uint64_t seed, double target_tol = 1e-8);

/// H(l-down(rho) || l-down(sigma)) <= S(rho || sigma) <= H(l-down(rho) || l-up(sigma))
/// over random full-rank pairs of dimension d.
CheckReport check_entropy_sandwich(int samples, int d, std::uint64_t seed);

struct SuiteConfig {
  std::uint64_t seed = 0;
  int samples = 1000;
};

/// Suite names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws ParseError on an
/// unknown name.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace uorbit
