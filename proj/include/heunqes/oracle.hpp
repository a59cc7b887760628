#pragma once

// Independent finite-difference check of the radial equation.  With
// u = sqrt(rho) R the radial problem becomes
//
//   -u'' + [(l^2 - 1/4)/rho^2 + M lambda l/rho + m^2 omega^2 rho^2 + 2 m eta rho] u
//       = zeta^2 u
//
// which is discretized by central differences on rho_i = i h, i = 1..N, with
// u = 0 at rho = 0 and at rho = (N + 1) h = rho_max.
//
// Nothing in this module calls into series or quantize; solutions from
// quantize are only used to pick comparison targets.

#include <optional>
#include <vector>

#include "heunqes/quantize.hpp"

namespace heunqes {

inline constexpr int kDefaultOraclePoints = 4000;
inline constexpr double kOracleTolerance = 1e-3;

struct RadialOperatorSpec {
  double mass = 1.0;
  double omega = 1.0;
  double eta = 0.0;
  double coulomb_strength = 0.0;  // M lambda l
  int abs_l = 1;
  double rho_max = 0.0;
  int points = kDefaultOraclePoints;
};

struct TridiagonalOperator {
  std::vector<double> rho;
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  double step = 0.0;
};

TridiagonalOperator build_operator(const RadialOperatorSpec& spec);

// Box size for a channel whose highest wanted eigenvalue is near
// zeta_sq_target: the larger of 1.5x the outer classical turning point and
// the radius where the Gaussian tail has decayed by exp(-46) in |u|^2.
double default_rho_max(double mass, double omega, double eta, double zeta_sq_target);

struct OracleSpectrum {
  std::vector<double> eigenvalues;  // ascending zeta^2_k
  double rho_max = 0.0;
  int points = 0;
  double step = 0.0;
  // max relative change of the eigenvalues when the grid is doubled
  std::optional<double> convergence;
};

OracleSpectrum eigenvalues(const RadialOperatorSpec& spec, int count);

// Same as eigenvalues() but also solves on 2N points and fills `convergence`.
OracleSpectrum eigenvalues_with_convergence(const RadialOperatorSpec& spec, int count);

struct VerifyOptions {
  int points = kDefaultOraclePoints;
  std::optional<int> fine_points;  // defaults to 2 * points
  std::optional<double> rho_max;
  double perturb_omega = 1.0;
  double tolerance = kOracleTolerance;
};

struct VerificationReport {
  int n = 0;
  int l = 0;
  double omega = 0.0;  // frequency actually tested (after any perturbation)
  int node_count = 0;
  double zeta_sq_analytic = 0.0;
  double zeta_sq_oracle = 0.0;       // coarse grid
  double zeta_sq_oracle_fine = 0.0;  // fine grid
  double deviation = 0.0;            // relative, coarse grid
  double deviation_fine = 0.0;
  double rho_max = 0.0;
  int points = 0;
  int fine_points = 0;
  bool pass = false;

  // deviation / deviation_fine
  double convergence_ratio() const { return deviation / deviation_fine; }
};

// PASS iff the eigenvalue at index node_count matches the analytic zeta^2
// within the tolerance and the mismatch shrinks under grid refinement.  With
// perturb_omega != 1 the analytic zeta^2 is re-evaluated at the perturbed
// frequency from the same closed-form expression.
VerificationReport verify_solution(const SpectralSolution& solution,
                                   const VerifyOptions& options = {});

}  // namespace heunqes
