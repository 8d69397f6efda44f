#include "uorbit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uorbit/dynamics.hpp"
#include "uorbit/majorization.hpp"
#include "uorbit/orbit_extrema.hpp"

namespace uorbit {

namespace {

constexpr int kBins = 32;
constexpr int kTargets = kBins + 1;

// Distinct stream families per check so suites never share random draws.
enum StreamSalt : std::uint64_t {
  kSaltGoldenThompson = 1,
  kSaltTraceInequality = 2,
  kSaltFidelityPair = 3,
  kSaltFidelitySamples = 4,
  kSaltEntropy = 5,
  kSaltBirkhoff = 6,
};

SeededRng stream(std::uint64_t seed, StreamSalt salt, std::uint64_t index) {
  return SeededRng(seed, (static_cast<std::uint64_t>(salt) << 40) | index);
}

CheckReport make_report(std::string name, int samples, double tolerance, std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.samples = samples;
  r.tolerance = tolerance;
  r.seed = seed;
  r.worst_violation = -std::numeric_limits<double>::infinity();
  return r;
}

double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(b); }

}  // namespace

void CheckReport::record(double violation) {
  worst_violation = std::max(worst_violation, violation);
  if (!(violation <= tolerance)) ++failures;
}

GoldenThompson check_golden_thompson(const HermitianMatrixd& a, const HermitianMatrixd& b) {
  if (a.dim() != b.dim()) throw DimensionError("check_golden_thompson: dimension mismatch");
  const double lhs = expm(a + b).trace();
  const double rhs = (expm(a).matrix() * expm(b).matrix()).trace().real();
  return {lhs, rhs, rhs - lhs};
}

double check_trace_inequality(const HermitianMatrixd& a, const HermitianMatrixd& b, const UnitaryMatrixd& u) {
  if (a.dim() != b.dim() || a.dim() != u.dim()) throw DimensionError("check_trace_inequality: dimension mismatch");
  const Eigen::VectorXd la = hermitian_eig(a).eigenvalues;
  const Eigen::VectorXd lb = hermitian_eig(b).eigenvalues;
  const double lo = inner(la, lb.reverse());
  const double hi = inner(la, lb);
  const double tr = (a.matrix() * conjugate_by(u, b).matrix()).trace().real();
  return std::max(lo - tr, tr - hi);
}

CheckReport check_fidelity_interval(const DensityMatrix& rho, const DensityMatrix& sigma, int samples,
                                    std::uint64_t seed, double target_tol) {
  if (samples < 1) throw DomainError("check_fidelity_interval: samples must be >= 1", samples);
  CheckReport report = make_report("fidelity-interval", samples, tol::kExactInequality, seed);

  const OrbitExtremes ex = fidelity_extremes(rho, sigma);
  const double lo = ex.min_value;
  const double hi = ex.max_value;
  const double width = (hi - lo) / kBins;
  std::vector<bool> sampled(kBins, false);
  std::vector<bool> targeted(kBins, false);

  // Closed bins [lo + k w, lo + (k + 1) w]; a degenerate interval is one
  // point that every bin contains.
  const auto mark = [&](std::vector<bool>& bins, double x, double slack) {
    for (int k = 0; k < kBins; ++k) {
      if (x >= lo + k * width - slack && x <= lo + (k + 1) * width + slack) bins[static_cast<std::size_t>(k)] = true;
    }
  };

  const FidelityEvaluator eval(rho);
  for (int i = 0; i < samples; ++i) {
    SeededRng rng = stream(seed, kSaltFidelitySamples, static_cast<std::uint64_t>(i));
    const double f = eval(haar_unitary(static_cast<int>(rho.dim()), rng), sigma);
    report.record(std::max(lo - f, f - hi));
    mark(sampled, f, 0.0);
  }

  int hits = 0;
  for (double target : linspace(lo, hi, kTargets)) {
    try {
      const UnitaryMatrixd u = unitary_for_target_fidelity(rho, sigma, target, target_tol);
      if (std::abs(eval(u, sigma) - target) <= target_tol) {
        ++hits;
        mark(targeted, target, 0.0);
        continue;
      }
    } catch (const ConvergenceError&) {
    }
    ++report.failures;
  }

  const auto fraction = [](const std::vector<bool>& bins) {
    return static_cast<double>(std::count(bins.begin(), bins.end(), true)) / kBins;
  };
  report.extras["min"] = lo;
  report.extras["max"] = hi;
  report.extras["sampled_bin_coverage"] = fraction(sampled);
  report.extras["targeted_bin_coverage"] = fraction(targeted);
  report.extras["targeted_hits"] = hits;
  report.extras["targets"] = kTargets;
  return report;
}

CheckReport check_entropy_sandwich(int samples, int d, std::uint64_t seed) {
  if (samples < 1) throw DomainError("check_entropy_sandwich: samples must be >= 1", samples);
  if (d < 2) throw DomainError("check_entropy_sandwich: d must be >= 2", d);
  CheckReport report = make_report("entropy-sandwich", samples, tol::kExactInequality, seed);
  for (int i = 0; i < samples; ++i) {
    SeededRng rng = stream(seed, kSaltEntropy, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const ProbabilityVector p = spectrum_desc(rho);
    const ProbabilityVector q = spectrum_desc(sigma);
    const double lower = classical_relative_entropy(p, q);
    const double upper = classical_relative_entropy(p, q.reversed());
    const double s = relative_entropy(rho, sigma);
    report.record(std::max(lower - s, s - upper));
  }
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"golden-thompson", "trace-inequality", "fidelity-interval",
                                                 "entropy-sandwich", "birkhoff"};
  return names;
}

namespace {

CheckReport golden_thompson_suite(const SuiteConfig& cfg) {
  CheckReport report = make_report("golden-thompson", cfg.samples, tol::kExactInequality, cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    SeededRng rng = stream(cfg.seed, kSaltGoldenThompson, static_cast<std::uint64_t>(i));
    const HermitianMatrixd a = random_hermitian(4, rng);
    const HermitianMatrixd b = random_hermitian(4, rng);
    report.record(-check_golden_thompson(a, b).gap);
  }
  return report;
}

CheckReport trace_inequality_suite(const SuiteConfig& cfg) {
  CheckReport report = make_report("trace-inequality", cfg.samples, tol::kExactInequality, cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    SeededRng rng = stream(cfg.seed, kSaltTraceInequality, static_cast<std::uint64_t>(i));
    const HermitianMatrixd a = random_hermitian(5, rng);
    const HermitianMatrixd b = random_hermitian(5, rng);
    report.record(check_trace_inequality(a, b, haar_unitary(5, rng)));
  }
  return report;
}

CheckReport fidelity_interval_suite(const SuiteConfig& cfg) {
  SeededRng rng = stream(cfg.seed, kSaltFidelityPair, 0);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix sigma = random_density(3, 3, rng);
  return check_fidelity_interval(rho, sigma, cfg.samples, cfg.seed);
}

CheckReport birkhoff_suite(const SuiteConfig& cfg) {
  CheckReport report = make_report("birkhoff", cfg.samples, tol::kBirkhoffResidual, cfg.seed);
  int max_terms = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    SeededRng rng = stream(cfg.seed, kSaltBirkhoff, static_cast<std::uint64_t>(i));
    const int d = 2 + i % 7;
    const BistochasticMatrix b = random_bistochastic(d, rng);
    const BirkhoffDecomposition dec = birkhoff_decomposition(b);
    const double residual = max_abs((dec.reconstruct(d) - b.matrix()).eval());
    const int bound = (d - 1) * (d - 1) + 1;
    max_terms = std::max(max_terms, static_cast<int>(dec.terms.size()));
    report.record(static_cast<int>(dec.terms.size()) > bound ? std::numeric_limits<double>::infinity() : residual);
  }
  report.extras["max_terms"] = max_terms;
  return report;
}

}  // namespace

std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& config) {
  if (config.samples < 1) throw DomainError("samples must be >= 1", config.samples);
  if (name == "all") {
    std::vector<CheckReport> all;
    for (const auto& n : suite_names()) all.push_back(run_suite(n, config).front());
    return all;
  }
  if (name == "golden-thompson") return {golden_thompson_suite(config)};
  if (name == "trace-inequality") return {trace_inequality_suite(config)};
  if (name == "fidelity-interval") return {fidelity_interval_suite(config)};
  if (name == "entropy-sandwich") return {check_entropy_sandwich(config.samples, 4, config.seed)};
  if (name == "birkhoff") return {birkhoff_suite(config)};
  throw ParseError("unknown verify suite '" + name + "'");
}

}  // namespace uorbit
