#include "heunqes/wavefunction.hpp"

#include <cmath>

#include "heunqes/error.hpp"
#include "heunqes/kernels.hpp"
#include "heunqes/series.hpp"

namespace heunqes {

std::pair<double, double> ground_state_polynomial(const SpectralSolution& solution) {
  if (solution.n != 1 || solution.coefficients.size() != 2)
    throw Error(Errc::WrongDegree, "ground-state polynomial requires n = 1");
  const auto& ph = solution.physical;
  const double x = ph.mass * solution.omega;
  const double sx = std::sqrt(x);
  const double theta = 2 * std::abs(ph.l) + 1;
  // Same operation order as first_coefficient(heun_params_at(...)).
  const double alpha = 2.0 * ph.mass * ph.eta / (x * sx);
  const double delta = ph.coupling() * ph.l / sx;
  return {1.0, alpha / 2.0 + delta / theta};
}

double evaluate_R(const SpectralSolution& solution, double rho, double norm) {
  const double xi = std::sqrt(solution.physical.mass * solution.omega) * rho;
  const double envelope = std::exp(-0.5 * xi * xi - 0.5 * solution.heun.alpha * xi);
  return norm * envelope * std::pow(xi, std::abs(solution.l)) *
         evaluate_polynomial(solution.coefficients, xi);
}

double RadialWavefunction::operator()(double rho) const {
  return evaluate_R(solution, rho, norm_constant);
}

double quadrature_cutoff(const SpectralSolution& solution) {
  // Integrand ~ xi^{2|l| + 2n + 1} exp(-xi^2 - alpha xi).
  const double alpha = solution.heun.alpha;
  const double power = 2.0 * std::abs(solution.l) + 2.0 * solution.n + 1.0;
  const double peak = (-alpha + std::sqrt(alpha * alpha + 8.0 * power)) / 4.0;
  const double exponent_at_peak = peak * peak + alpha * peak;
  const double drop = std::log(1e16);
  // xi^2 + alpha xi = exponent_at_peak + drop
  const double target = exponent_at_peak + drop;
  const double xi_cut = (-alpha + std::sqrt(alpha * alpha + 4.0 * target)) / 2.0;
  return 1.5 * xi_cut / std::sqrt(solution.physical.mass * solution.omega);
}

namespace {

double norm_integral(const SpectralSolution& solution, double rho_max, int intervals) {
  std::vector<double> rho(intervals + 1);
  const double h = rho_max / intervals;
  for (int i = 0; i <= intervals; ++i) rho[i] = h * i;
  std::vector<double> f(rho.size());
  kernels::omp::evaluate_grid(
      [&](double r) {
        const double v = evaluate_R(solution, r);
        return v * v * r;
      },
      rho, f);
  return kernels::omp::simpson(f, h);
}

}  // namespace

RadialWavefunction normalize(const SpectralSolution& solution,
                             const QuadratureOptions& options) {
  RadialWavefunction wf;
  wf.solution = solution;
  wf.rho_max = quadrature_cutoff(solution);

  int intervals = options.initial_intervals;
  double previous = norm_integral(solution, wf.rho_max, intervals);
  for (int level = 0; level < options.max_levels; ++level) {
    intervals *= 2;
    const double current = norm_integral(solution, wf.rho_max, intervals);
    if (!std::isfinite(current) || current <= 0.0) break;
    if (std::abs(current - previous) <= options.relative_tolerance * current) {
      wf.norm_constant = 1.0 / std::sqrt(current);
      return wf;
    }
    previous = current;
  }
  throw Error(Errc::QuadratureFailure, "normalization integral did not converge");
}

int count_nodes(const SpectralSolution& solution) {
  return static_cast<int>(positive_real_roots(solution.coefficients).size());
}

std::vector<std::pair<double, double>> sample(const RadialWavefunction& wf, int count,
                                              double rho_max) {
  std::vector<std::pair<double, double>> out;
  if (count <= 0) return out;
  std::vector<double> rho(count);
  for (int i = 0; i < count; ++i)
    rho[i] = count == 1 ? 0.0 : rho_max * static_cast<double>(i) / (count - 1);
  std::vector<double> values(count);
  kernels::omp::evaluate_grid([&](double r) { return wf(r); }, rho, values);
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.emplace_back(rho[i], values[i]);
  return out;
}

}  // namespace heunqes
