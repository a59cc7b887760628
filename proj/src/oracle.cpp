#include "heunqes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heunqes/error.hpp"
#include "heunqes/kernels.hpp"

namespace heunqes {

TridiagonalOperator build_operator(const RadialOperatorSpec& spec) {
  if (spec.points < 100)
    throw Error(Errc::InvalidGrid,
                "oracle grid needs at least 100 points, got " + std::to_string(spec.points));
  if (!(spec.rho_max > 0.0) || !std::isfinite(spec.rho_max))
    throw Error(Errc::InvalidGrid, "rho_max must be positive");
  if (!(spec.mass > 0.0) || !(spec.omega > 0.0))
    throw Error(Errc::InvalidGrid, "mass and omega must be positive");

  const int n = spec.points;
  TridiagonalOperator op;
  op.step = spec.rho_max / (n + 1);
  const double h = op.step;
  const double inv_h2 = 1.0 / (h * h);
  const double l2 = static_cast<double>(spec.abs_l) * spec.abs_l - 0.25;
  const double mw = spec.mass * spec.omega;

  op.rho.resize(n);
  op.diagonal.resize(n);
  op.off_diagonal.assign(n - 1, -inv_h2);
  for (int i = 0; i < n; ++i) {
    const double r = h * (i + 1);
    op.rho[i] = r;
    const double potential = l2 / (r * r) + spec.coulomb_strength / r + mw * mw * r * r +
                             2.0 * spec.mass * spec.eta * r;
    op.diagonal[i] = 2.0 * inv_h2 + potential;
  }
  return op;
}

double default_rho_max(double mass, double omega, double eta, double zeta_sq_target) {
  // positive root of m^2 omega^2 rho^2 + 2 m eta rho = target
  const auto radius = [&](double target) {
    const double a = mass * mass * omega * omega;
    const double b = 2.0 * mass * eta;
    const double disc = b * b + 4.0 * a * target;
    if (disc <= 0.0) return 0.0;
    return std::max(0.0, (-b + std::sqrt(disc)) / (2.0 * a));
  };
  const double turning = radius(zeta_sq_target);
  const double tail = radius(std::max(zeta_sq_target, 0.0) + 46.0 * mass * omega);
  return std::max(1.5 * turning, tail);
}

OracleSpectrum eigenvalues(const RadialOperatorSpec& spec, int count) {
  if (count < 1) throw Error(Errc::InvalidGrid, "eigenvalue count must be >= 1");
  const TridiagonalOperator op = build_operator(spec);
  OracleSpectrum out;
  out.eigenvalues = kernels::omp::lowest_eigenvalues(
      {op.diagonal, op.off_diagonal}, static_cast<std::size_t>(count));
  out.rho_max = spec.rho_max;
  out.points = spec.points;
  out.step = op.step;
  return out;
}

OracleSpectrum eigenvalues_with_convergence(const RadialOperatorSpec& spec, int count) {
  OracleSpectrum coarse = eigenvalues(spec, count);
  RadialOperatorSpec fine_spec = spec;
  fine_spec.points = 2 * spec.points;
  const OracleSpectrum fine = eigenvalues(fine_spec, count);
  double drift = 0.0;
  for (int k = 0; k < count; ++k)
    drift = std::max(drift, std::abs(coarse.eigenvalues[k] - fine.eigenvalues[k]) /
                                std::abs(fine.eigenvalues[k]));
  coarse.convergence = drift;
  return coarse;
}

VerificationReport verify_solution(const SpectralSolution& solution,
                                   const VerifyOptions& options) {
  const auto& ph = solution.physical;
  VerificationReport report;
  report.n = solution.n;
  report.l = solution.l;
  report.node_count = solution.node_count;
  report.omega = solution.omega * options.perturb_omega;
  if (!(report.omega > 0.0))
    throw Error(Errc::NonPositiveFrequency, "perturbed frequency must stay positive");

  // Closed-form zeta^2 at the tested frequency: m omega (2n + 2 + 2|l|) - eta^2/omega^2.
  const int abs_l = std::abs(ph.l);
  report.zeta_sq_analytic = options.perturb_omega == 1.0
                                ? solution.zeta_sq
                                : ph.mass * report.omega * (2.0 * solution.n + 2.0 + 2.0 * abs_l) -
                                      ph.eta * ph.eta / (report.omega * report.omega);

  RadialOperatorSpec spec;
  spec.mass = ph.mass;
  spec.omega = report.omega;
  spec.eta = ph.eta;
  spec.coulomb_strength = ph.coupling() * ph.l;
  spec.abs_l = abs_l;
  spec.rho_max = options.rho_max.value_or(
      default_rho_max(ph.mass, report.omega, ph.eta, report.zeta_sq_analytic));
  spec.points = options.points;
  report.rho_max = spec.rho_max;
  report.points = spec.points;

  const int count = solution.node_count + 1;
  const double target = report.zeta_sq_analytic;
  const auto relative = [&](double value) {
    return std::abs(value - target) / std::max(std::abs(target), 1e-300);
  };

  report.zeta_sq_oracle = eigenvalues(spec, count).eigenvalues.back();
  report.deviation = relative(report.zeta_sq_oracle);

  spec.points = options.fine_points.value_or(2 * options.points);
  report.fine_points = spec.points;
  report.zeta_sq_oracle_fine = eigenvalues(spec, count).eigenvalues.back();
  report.deviation_fine = relative(report.zeta_sq_oracle_fine);

  report.pass = report.deviation < options.tolerance &&
                report.deviation_fine < report.deviation;
  return report;
}

}  // namespace heunqes
