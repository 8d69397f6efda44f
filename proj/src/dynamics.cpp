#include "uorbit/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uorbit {

namespace {

void require_grid(const std::vector<double>& t) {
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (!(t[j] > t[j - 1])) {
      std::ostringstream os;
      os << "time grid must be strictly increasing (t[" << j - 1 << "] = " << t[j - 1] << ", t[" << j
         << "] = " << t[j] << ")";
      throw DomainError(os.str(), t[j]);
    }
  }
}

void require_dims(const DensityMatrix& rho, const DensityMatrix& sigma, Eigen::Index h_dim) {
  if (rho.dim() != sigma.dim() || rho.dim() != h_dim) throw DimensionError("orbit curve: dimension mismatch");
}

Eigen::Index support_dim(const Spectrumd& s) { return (s.eigenvalues.array() > tol::kSupport).count(); }

// sqrt(rho) A^{-1/2} sqrt(rho), A = sqrt(rho) sigma' sqrt(rho), inverse on supp(A).
ComplexMatrixd sandwiched_inverse_sqrt(const HermitianMatrixd& sqrt_rho, const HermitianMatrixd& sigma_prime,
                                       Eigen::Index* support = nullptr) {
  const auto& s = sqrt_rho.matrix();
  const Spectrumd a = hermitian_eig(HermitianMatrixd::project(s * sigma_prime.matrix() * s));
  if (support != nullptr) *support = support_dim(a);
  const auto inv_sqrt = spectral_function(a, [](double x) { return 1.0 / std::sqrt(x); },
                                          {.support_only = true, .psd = true});
  return s * inv_sqrt.matrix() * s;
}

template <typename F>
double golden_section_min(F&& f, double a, double b, int iters, double& best_t) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc < fd) {
    best_t = c;
    return fc;
  }
  best_t = d;
  return fd;
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = n == 1 ? a : a + (b - a) * j / (n - 1);
  if (n > 1) t.back() = b;
  return t;
}

OrbitCurve orbit_fidelity_curve(const DensityMatrix& rho, const DensityMatrix& sigma, const HermitianMatrixd& h,
                                const std::vector<double>& t_grid) {
  require_dims(rho, sigma, h.dim());
  require_grid(t_grid);
  const FidelityEvaluator eval(rho);
  const auto k = SkewHermitianMatrixd::from_hamiltonian(h);
  OrbitCurve curve{.times = t_grid, .values = {}, .generator = OrbitCurve::Generator::kHamiltonian,
                   .quantity = Quantity::kFidelity};
  curve.values.reserve(t_grid.size());
  for (double t : t_grid) curve.values.push_back(eval(exp_skew(k, t), sigma));
  return curve;
}

OrbitCurve relative_entropy_orbit_curve(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const HermitianMatrixd& h, const std::vector<double>& t_grid) {
  require_dims(rho, sigma, h.dim());
  require_grid(t_grid);
  if (sigma.rank() < sigma.dim()) {
    std::ostringstream os;
    os << "relative entropy orbit curve needs a full-rank sigma; rank is " << sigma.rank() << " of " << sigma.dim();
    throw RankError(os.str());
  }
  const auto k = SkewHermitianMatrixd::from_hamiltonian(h);
  OrbitCurve curve{.times = t_grid, .values = {}, .generator = OrbitCurve::Generator::kHamiltonian,
                   .quantity = Quantity::kRelativeEntropy};
  curve.values.reserve(t_grid.size());
  for (double t : t_grid) curve.values.push_back(relative_entropy(rho.conjugated(exp_skew(k, t)), sigma));
  return curve;
}

double fidelity_orbit_derivative(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const SkewHermitianMatrixd& k, double t) {
  if (rho.dim() != sigma.dim() || rho.dim() != k.dim()) throw DimensionError("fidelity_orbit_derivative: dimension mismatch");
  const HermitianMatrixd sqrt_rho = psd_sqrt(rho.spectrum());

  constexpr double kStencil = 1e-5;
  Eigen::Index support = 0;
  Eigen::Index support_lo = 0;
  Eigen::Index support_hi = 0;
  const UnitaryMatrixd u = exp_skew(k, t);
  const ComplexMatrixd m = sandwiched_inverse_sqrt(sqrt_rho, conjugate_by(u, sigma.hermitian()), &support);
  sandwiched_inverse_sqrt(sqrt_rho, conjugate_by(exp_skew(k, t - kStencil), sigma.hermitian()), &support_lo);
  sandwiched_inverse_sqrt(sqrt_rho, conjugate_by(exp_skew(k, t + kStencil), sigma.hermitian()), &support_hi);
  if (support_lo != support || support_hi != support) {
    const auto& s = sqrt_rho.matrix();
    const Spectrumd a = hermitian_eig(HermitianMatrixd::project(s * conjugate_by(u, sigma.hermitian()).matrix() * s));
    double smallest = a.eigenvalues(0);
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      if (a.eigenvalues(j) > tol::kSupport) smallest = a.eigenvalues(j);
    }
    std::ostringstream os;
    os << "support of A_t changes near t = " << t << " (dimension " << support_lo << " -> " << support << " -> "
       << support_hi << "); smallest in-support eigenvalue " << smallest;
    throw SingularityError(os.str(), smallest);
  }

  const ComplexMatrixd comm = commutator(k.matrix(), sigma.matrix());
  const auto& um = u.matrix();
  return 0.5 * (um.adjoint() * m * um * comm).trace().real();
}

double stationarity_residual(const DensityMatrix& rho, const DensityMatrix& sigma, const UnitaryMatrixd& u) {
  if (rho.dim() != sigma.dim() || rho.dim() != u.dim()) throw DimensionError("stationarity_residual: dimension mismatch");
  const HermitianMatrixd sigma_prime = conjugate_by(u, sigma.hermitian());
  const ComplexMatrixd m = sandwiched_inverse_sqrt(psd_sqrt(rho.spectrum()), sigma_prime);
  return commutator(sigma_prime.matrix(), m).norm();
}

double default_scan_window(const HermitianMatrixd& h) {
  const Spectrumd s = hermitian_eig(h);
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  double gap = 0.0;
  for (Eigen::Index j = 0; j + 1 < s.dim(); ++j) {
    const double g = s.eigenvalues(j) - s.eigenvalues(j + 1);
    if (g > 1e-9 * scale && (gap == 0.0 || g < gap)) gap = g;
  }
  return gap == 0.0 ? 2.0 * std::numbers::pi : 2.0 * std::numbers::pi / gap;
}

ScanResult extremize_over_hamiltonian_orbit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                            const HermitianMatrixd& h, const ScanOptions& opts,
                                            OrbitCurve* coarse_curve) {
  if (opts.grid < 16) throw DomainError("scan: grid must be >= 16", opts.grid);
  if (opts.refine_iters < 0) throw DomainError("scan: refine_iters must be >= 0", opts.refine_iters);
  if (opts.t_max && !(*opts.t_max > 0.0 && std::isfinite(*opts.t_max))) {
    throw DomainError("scan: t_max must be positive and finite", *opts.t_max);
  }
  require_dims(rho, sigma, h.dim());

  const double t_end = opts.t_max.value_or(default_scan_window(h));
  OrbitCurve curve = orbit_fidelity_curve(rho, sigma, h, linspace(0.0, t_end, opts.grid));

  std::size_t i_min = 0;
  std::size_t i_max = 0;
  for (std::size_t j = 1; j < curve.values.size(); ++j) {
    if (curve.values[j] < curve.values[i_min]) i_min = j;
    if (curve.values[j] > curve.values[i_max]) i_max = j;
  }
  ScanResult r{.t_min = curve.times[i_min], .g_min = curve.values[i_min], .t_max = curve.times[i_max],
               .g_max = curve.values[i_max], .refined = opts.refine_iters > 0, .grid = opts.grid, .t_end = t_end};

  if (opts.refine_iters > 0) {
    const FidelityEvaluator eval(rho);
    const auto k = SkewHermitianMatrixd::from_hamiltonian(h);
    const auto g = [&](double t) { return eval(exp_skew(k, t), sigma); };
    const auto bracket = [&](std::size_t i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = std::min(i + 1, curve.times.size() - 1);
      return std::pair{curve.times[lo], curve.times[hi]};
    };

    double t_best = 0.0;
    auto [a, b] = bracket(i_min);
    const double g_min = golden_section_min(g, a, b, opts.refine_iters, t_best);
    if (g_min < r.g_min) {
      r.g_min = g_min;
      r.t_min = t_best;
    }
    std::tie(a, b) = bracket(i_max);
    const double g_max = -golden_section_min([&](double t) { return -g(t); }, a, b, opts.refine_iters, t_best);
    if (g_max > r.g_max) {
      r.g_max = g_max;
      r.t_max = t_best;
    }
  }
  if (coarse_curve != nullptr) *coarse_curve = std::move(curve);
  return r;
}

}  // namespace uorbit
