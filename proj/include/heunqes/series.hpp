#pragma once

// Frobenius series for the biconfluent Heun equation
//
//   H'' + (theta/xi - alpha - 2 xi) H' + (g - (theta alpha + 2 delta)/(2 xi)) H = 0
//
// with H(xi) = sum_j c_j xi^j and c_0 = 1.

#include <span>
#include <vector>

namespace heunqes {

inline constexpr double kOverflowThreshold = 1e250;
inline constexpr int kMaxDegree = 50;

struct HeunParams {
  double alpha = 0.0;
  double delta = 0.0;
  int theta = 1;  // 2|l| + 1
  double g = 0.0;
};

// Throws InvalidHeunParams for an even/non-positive theta or non-finite fields.
void check(const HeunParams& p);

struct CoefficientSequence {
  std::vector<double> coeffs;  // c_0 .. c_J
  HeunParams params;
};

// c_1 = alpha/2 + delta/theta
double first_coefficient(const HeunParams& p);

// c_0 .. c_{max_index}.  Throws OverflowGuard when |c_j| > kOverflowThreshold.
CoefficientSequence generate_coefficients(const HeunParams& p, int max_index);

// c_{n+1} with p.g already set to 2n.
double truncation_residual(const HeunParams& p, int degree);

double evaluate_H(const CoefficientSequence& seq, double xi);

struct SeriesValue {
  double value = 0.0;
  double first = 0.0;   // dH/dxi
  double second = 0.0;  // d2H/dxi2
};

// H and its first two derivatives by term-wise differentiation.
SeriesValue evaluate_H_derivatives(const CoefficientSequence& seq, double xi);

// R(xi) = exp(-xi^2/2) exp(-alpha xi/2) xi^|l| H(xi)
double radial_ansatz(const CoefficientSequence& seq, const HeunParams& p,
                     int abs_l, double xi);

// Polynomial helpers on ascending coefficient lists.
double evaluate_polynomial(std::span<const double> coeffs, double x);

// Upper bound on the modulus of every root, 1 + max_j |c_j / c_lead|.
double cauchy_root_bound(std::span<const double> coeffs);

// Strictly positive real roots where the polynomial changes sign, ascending.
// Roots are isolated between consecutive critical points, which are found by
// recursing on the derivative, then refined by bisection.
std::vector<double> positive_real_roots(std::span<const double> coeffs);

}  // namespace heunqes
