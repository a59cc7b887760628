#pragma once

#include <utility>
#include <vector>

#include "heunqes/quantize.hpp"

namespace heunqes {

struct RadialWavefunction {
  SpectralSolution solution;
  double norm_constant = 1.0;
  double rho_max = 0.0;  // quadrature cutoff
  std::vector<std::pair<double, double>> samples;

  double operator()(double rho) const;
};

// (1, c_1) with c_1 = m eta/(m omega)^{3/2} + M lambda l/(theta (m omega)^{1/2}).
std::pair<double, double> ground_state_polynomial(const SpectralSolution& solution);

// R at rho, with xi = sqrt(m omega) rho, multiplied by `norm`.
double evaluate_R(const SpectralSolution& solution, double rho, double norm = 1.0);

// Cutoff where the integrand |R|^2 rho has dropped 1e-16 below its peak, times 1.5.
double quadrature_cutoff(const SpectralSolution& solution);

struct QuadratureOptions {
  double relative_tolerance = 1e-12;
  int initial_intervals = 64;
  int max_levels = 16;
};

// Norm constant from integral_0^rho_max |N R|^2 rho d rho = 1, refined by
// interval doubling until the integral settles.
RadialWavefunction normalize(const SpectralSolution& solution,
                             const QuadratureOptions& options = {});

int count_nodes(const SpectralSolution& solution);

// `count` equally spaced (rho, N R(rho)) pairs on [0, rho_max].
std::vector<std::pair<double, double>> sample(const RadialWavefunction& wf, int count,
                                              double rho_max);

}  // namespace heunqes
