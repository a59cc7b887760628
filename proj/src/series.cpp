#include "heunqes/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heunqes/error.hpp"

namespace heunqes {

void check(const HeunParams& p) {
  if (p.theta < 1 || p.theta % 2 == 0)
    throw Error(Errc::InvalidHeunParams,
                "theta must be an odd positive integer, got " + std::to_string(p.theta));
  if (!std::isfinite(p.alpha) || !std::isfinite(p.delta) || !std::isfinite(p.g))
    throw Error(Errc::InvalidHeunParams, "Heun parameters must be finite");
}

double first_coefficient(const HeunParams& p) {
  return p.alpha / 2.0 + p.delta / p.theta;
}

CoefficientSequence generate_coefficients(const HeunParams& p, int max_index) {
  check(p);
  if (max_index < 1)
    throw Error(Errc::InvalidHeunParams, "need at least c_0 and c_1");

  CoefficientSequence seq{std::vector<double>(max_index + 1), p};
  auto& c = seq.coeffs;
  c[0] = 1.0;
  c[1] = first_coefficient(p);

  const double theta = p.theta;
  for (int j = 0; j + 2 <= max_index; ++j) {
    const double jj = j;
    const double denom = (jj + 2.0) * (jj + 1.0 + theta);
    const double lead = 2.0 * p.alpha * (jj + 1.0) + theta * p.alpha + 2.0 * p.delta;
    c[j + 2] = lead * c[j + 1] / (2.0 * denom) - (p.g - 2.0 * jj) * c[j] / denom;
    if (!(std::abs(c[j + 2]) <= kOverflowThreshold))
      throw Error(Errc::OverflowGuard,
                  "series coefficient c_" + std::to_string(j + 2) + " exceeds 1e250");
  }
  if (!(std::abs(c[1]) <= kOverflowThreshold))
    throw Error(Errc::OverflowGuard, "series coefficient c_1 exceeds 1e250");
  return seq;
}

double truncation_residual(const HeunParams& p, int degree) {
  if (degree < 1)
    throw Error(Errc::DegreeOutOfRange, "polynomial degree must be >= 1");
  return generate_coefficients(p, degree + 1).coeffs[degree + 1];
}

double evaluate_polynomial(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double evaluate_H(const CoefficientSequence& seq, double xi) {
  return evaluate_polynomial(seq.coeffs, xi);
}

SeriesValue evaluate_H_derivatives(const CoefficientSequence& seq, double xi) {
  SeriesValue out;
  const auto& c = seq.coeffs;
  for (std::size_t j = c.size(); j-- > 0;) {
    out.second = out.second * xi + 2.0 * out.first;
    out.first = out.first * xi + out.value;
    out.value = out.value * xi + c[j];
  }
  return out;
}

double radial_ansatz(const CoefficientSequence& seq, const HeunParams& p,
                     int abs_l, double xi) {
  const double envelope = std::exp(-0.5 * xi * xi - 0.5 * p.alpha * xi);
  return envelope * std::pow(xi, abs_l) * evaluate_H(seq, xi);
}

double cauchy_root_bound(std::span<const double> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1) return 0.0;
  const double lead = coeffs[deg - 1];
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < deg; ++j)
    worst = std::max(worst, std::abs(coeffs[j] / lead));
  return 1.0 + worst;
}

namespace {

std::vector<double> trimmed(std::span<const double> coeffs) {
  std::vector<double> out(coeffs.begin(), coeffs.end());
  while (out.size() > 1 && out.back() == 0.0) out.pop_back();
  return out;
}

double bisect_root(std::span<const double> p, double lo, double hi) {
  double flo = evaluate_polynomial(p, lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = evaluate_polynomial(p, mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Real sign-changing roots of p inside (lo, hi].
std::vector<double> roots_in(const std::vector<double>& p, double lo, double hi) {
  if (p.size() <= 1) return {};
  std::vector<double> deriv(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) deriv[j - 1] = static_cast<double>(j) * p[j];
  std::vector<double> nodes{lo};
  for (double x : roots_in(trimmed(deriv), lo, hi))
    if (x > nodes.back() && x < hi) nodes.push_back(x);
  nodes.push_back(hi);

  // p is monotone between consecutive critical points.
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double a = nodes[k];
    const double b = nodes[k + 1];
    const double fa = evaluate_polynomial(p, a);
    const double fb = evaluate_polynomial(p, b);
    if (fb == 0.0 && b < hi) {
      // root exactly on a critical point; a node only if the sign flips
      const double fc = evaluate_polynomial(p, nodes[k + 2]);
      if (fa != 0.0 && fc != 0.0 && (fa < 0.0) != (fc < 0.0)) roots.push_back(b);
    } else if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      roots.push_back(bisect_root(p, a, b));
    }
  }
  return roots;
}

}  // namespace

std::vector<double> positive_real_roots(std::span<const double> coeffs) {
  const std::vector<double> p = trimmed(coeffs);
  if (p.size() <= 1) return {};
  const double bound = cauchy_root_bound(p);
  return roots_in(p, 0.0, bound);
}

}  // namespace heunqes
