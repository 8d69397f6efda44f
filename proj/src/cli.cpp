#include "uorbit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "uorbit/json_io.hpp"

namespace uorbit::cli {

namespace {

using io::Json;

struct RunConfig {
  std::uint64_t seed = 0;
  int samples = 1000;
  double tol = 1e-8;
  std::string out;
  std::string t_max = "auto";
  int grid = 256;
  std::string curve;
};

void emit(const RunConfig& cfg, const Json& j, std::ostream& out) {
  const std::string text = io::dump(j);
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + cfg.out + "'");
  f << text;
}

Json spectrum_json(const DensityMatrix& rho) {
  const ProbabilityVector p = spectrum_desc(rho);
  return Json(std::vector<double>(p.values().begin(), p.values().end()));
}

int cmd_extremes(const RunConfig& cfg, const std::string& rho_path, const std::string& sigma_path,
                 const std::string& quantity, std::ostream& out) {
  const DensityMatrix rho = io::parse_state(io::read_json_file(rho_path));
  const DensityMatrix sigma = io::parse_state(io::read_json_file(sigma_path));
  const OrbitExtremes ex =
      quantity == "fidelity" ? fidelity_extremes(rho, sigma) : relative_entropy_extremes(rho, sigma);
  emit(cfg,
       Json{{"quantity", std::string(to_string(ex.quantity))},
            {"min", ex.min_value},
            {"max", ex.max_value},
            {"minimizer", io::unitary_to_json(ex.minimizer)},
            {"maximizer", io::unitary_to_json(ex.maximizer)},
            {"rho_spectrum", spectrum_json(rho)},
            {"sigma_spectrum", spectrum_json(sigma)}},
       out);
  return kOk;
}

int cmd_target(const RunConfig& cfg, const std::string& rho_path, const std::string& sigma_path, double target,
               std::ostream& out) {
  const DensityMatrix rho = io::parse_state(io::read_json_file(rho_path));
  const DensityMatrix sigma = io::parse_state(io::read_json_file(sigma_path));
  const UnitaryMatrixd u = unitary_for_target_fidelity(rho, sigma, target, cfg.tol);
  const OrbitExtremes ex = fidelity_extremes(rho, sigma);
  emit(cfg,
       Json{{"target", target},
            {"tol", cfg.tol},
            {"achieved", fidelity(rho, sigma.conjugated(u))},
            {"interval", Json::array({ex.min_value, ex.max_value})},
            {"unitary", io::unitary_to_json(u)}},
       out);
  return kOk;
}

int cmd_scan(const RunConfig& cfg, const std::string& rho_path, const std::string& sigma_path,
             const std::string& h_path, int refine_iters, std::ostream& out) {
  const DensityMatrix rho = io::parse_state(io::read_json_file(rho_path));
  const DensityMatrix sigma = io::parse_state(io::read_json_file(sigma_path));
  const HermitianMatrixd h = io::parse_hermitian(io::read_json_file(h_path));
  if (h.dim() != rho.dim() || sigma.dim() != rho.dim()) throw ParseError("scan: state and Hamiltonian dimensions differ");

  ScanOptions opts;
  opts.grid = cfg.grid;
  opts.refine_iters = refine_iters;
  if (cfg.t_max != "auto") {
    try {
      std::size_t used = 0;
      opts.t_max = std::stod(cfg.t_max, &used);
      if (used != cfg.t_max.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("--t-max must be a real number or 'auto', got '" + cfg.t_max + "'");
    }
  }
  OrbitCurve curve;
  const ScanResult r = extremize_over_hamiltonian_orbit(rho, sigma, h, opts, &curve);
  const OrbitExtremes ex = fidelity_extremes(rho, sigma);
  Json j = io::to_json(r);
  j["interval"] = Json::array({ex.min_value, ex.max_value});
  emit(cfg, j, out);

  if (!cfg.curve.empty()) {
    std::ofstream f(cfg.curve, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + cfg.curve + "'");
    f << io::curve_to_csv(curve);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  const std::vector<CheckReport> reports = run_suite(suite, SuiteConfig{.seed = cfg.seed, .samples = cfg.samples});
  Json list = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    list.push_back(io::to_json(r));
    passed = passed && r.passed();
  }
  emit(cfg, Json{{"suite", suite}, {"reports", std::move(list)}, {"passed", passed}}, out);
  return passed ? kOk : kCheckFailed;
}

int cmd_birkhoff(const RunConfig& cfg, const std::string& path, std::ostream& out) {
  const Eigen::MatrixXd raw = io::parse_real_matrix(io::read_json_file(path));
  const BistochasticMatrix b(raw);
  const BirkhoffDecomposition dec = birkhoff_decomposition(b);
  const double residual = max_abs((dec.reconstruct(b.dim()) - b.matrix()).eval());
  emit(cfg, io::to_json(dec, residual), out);
  return kOk;
}

int cmd_sample(const RunConfig& cfg, const std::string& kind, int dim, std::optional<int> rank, std::ostream& out) {
  SeededRng rng(cfg.seed);
  if (kind == "unitary") {
    const UnitaryMatrixd u = haar_unitary(dim, rng);
    emit(cfg, Json{{"dim", dim}, {"matrix", io::unitary_to_json(u)}}, out);
  } else {
    emit(cfg, io::state_to_json(random_density(dim, rank.value_or(dim), rng)), out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fidelity and relative entropy between unitary orbits of density matrices", "uorbit"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Samples per check")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol", cfg.tol, "Target tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", cfg.out, "Write JSON here instead of stdout");
  app.add_option("--t-max", cfg.t_max, "Scan window length, or 'auto'")->capture_default_str();
  app.add_option("--grid", cfg.grid, "Coarse scan grid size")->check(CLI::Range(16, 1 << 24))->capture_default_str();
  app.add_option("--curve", cfg.curve, "Write the scanned curve as CSV");

  std::string rho_path, sigma_path, h_path, matrix_path, quantity = "fidelity", suite, kind;
  double target = 0.0;
  int dim = 2;
  int refine_iters = 60;
  std::optional<int> rank;

  auto* extremes = app.add_subcommand("extremes", "Closed-form orbit extremes and optimizing unitaries");
  extremes->add_option("rho", rho_path, "State file for rho")->required();
  extremes->add_option("sigma", sigma_path, "State file for sigma")->required();
  extremes->add_option("--quantity", quantity)->check(CLI::IsMember({"fidelity", "relative-entropy"}))->capture_default_str();

  auto* target_cmd = app.add_subcommand("target", "Unitary reaching a target fidelity");
  target_cmd->add_option("rho", rho_path)->required();
  target_cmd->add_option("sigma", sigma_path)->required();
  target_cmd->add_option("target", target)->required();

  auto* scan = app.add_subcommand("scan", "Heuristic extremes along a Hamiltonian orbit");
  scan->add_option("rho", rho_path)->required();
  scan->add_option("sigma", sigma_path)->required();
  scan->add_option("hamiltonian", h_path)->required();
  scan->add_option("--refine-iters", refine_iters)->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run seeded property checks");
  verify->add_option("suite", suite, "golden-thompson | trace-inequality | fidelity-interval | entropy-sandwich | birkhoff | all")
      ->required();

  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff-von Neumann decomposition of a bistochastic matrix");
  birkhoff->add_option("matrix", matrix_path)->required();

  auto* sample = app.add_subcommand("sample", "Emit a Haar unitary or random density matrix");
  sample->add_option("kind", kind)->required()->check(CLI::IsMember({"unitary", "density"}));
  sample->add_option("--dim", dim)->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--rank", rank);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (extremes->parsed()) return cmd_extremes(cfg, rho_path, sigma_path, quantity, out);
    if (target_cmd->parsed()) return cmd_target(cfg, rho_path, sigma_path, target, out);
    if (scan->parsed()) return cmd_scan(cfg, rho_path, sigma_path, h_path, refine_iters, out);
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
    if (birkhoff->parsed()) return cmd_birkhoff(cfg, matrix_path, out);
    if (sample->parsed()) return cmd_sample(cfg, kind, dim, rank, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n"
        << "valid interval: [" << io::format_real(e.lo()) << ", " << io::format_real(e.hi()) << "]\n";
    return kRange;
  } catch (const Error& e) {
    // Rank deficiency, non-bistochastic input, singular operators.
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace uorbit::cli
