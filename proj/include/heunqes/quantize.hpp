#pragma once

// Frequency quantization: at fixed polynomial degree n the truncation
// conditions g = 2n and c_{n+1}(omega) = 0 select the allowed oscillator
// frequencies omega_{n,l}.

#include <array>
#include <optional>
#include <vector>

#include "heunqes/model.hpp"
#include "heunqes/series.hpp"

namespace heunqes {

struct ReducedProblem {
  PhysicalParams physical;
  int n = 1;
  int abs_l = 1;
  int theta = 3;
  double coupling = 0.0;  // M * lambda * l
};

// Validates (l != 0, M lambda != 0, m > 0, 1 <= n <= kMaxDegree).
ReducedProblem make_problem(const PhysicalParams& params, int n);

struct Residuals {
  double truncation = 0.0;       // |c_{n+1}| / max_{j<=n} |c_j|
  double truncation_next = 0.0;  // |c_{n+2}| / max_{j<=n} |c_j|
  std::optional<double> cubic;   // |p(omega)| for n = 1
};

struct SpectralSolution {
  int n = 0;
  int l = 0;
  double omega = 0.0;
  double energy = 0.0;
  double zeta_sq = 0.0;
  std::vector<double> coefficients;  // c_0 .. c_n
  int node_count = 0;
  Residuals residuals;
  PhysicalParams physical;
  HeunParams heun;
};

HeunParams heun_params_at(const ReducedProblem& problem, double omega);

// (a2, a1, a0) of omega^3 + a2 omega^2 + a1 omega + a0 for n = 1.
std::array<double, 3> cubic_coefficients(const ReducedProblem& problem);

// Real roots of x^3 + a2 x^2 + a1 x + a0, ascending, distinct, each polished
// by Newton steps.
std::vector<double> real_cubic_roots(double a2, double a1, double a0);

std::vector<SpectralSolution> solve_cubic(const ReducedProblem& problem);

struct ScanOptions {
  double decades_below = 6.0;
  double decades_above = 6.0;
  int points = 400;
};

// Characteristic frequency scale max((M lambda l)^2/(2 m theta), (eta^2/m)^(1/3)).
double characteristic_frequency(const ReducedProblem& problem);

// sign(c_{n+1}) |c_{n+1}| / max_{j<=n} |c_j| at the given frequency.  The
// recurrence is run with running rescaling, so the value stays finite over
// the whole scan bracket even where the raw c_j would overflow.
double relative_truncation_residual(const ReducedProblem& problem, double omega);

std::vector<SpectralSolution> solve_frequency(const ReducedProblem& problem,
                                              const ScanOptions& options = {});

double energy(const ReducedProblem& problem, double omega);
double zeta_squared(const ReducedProblem& problem, double omega);

// Builds the full solution record at a given frequency.  The frequency need
// not be a root; the residual fields then report how far off it is.
SpectralSolution assemble_solution(const ReducedProblem& problem, double omega);

}  // namespace heunqes
