#include "heunqes/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "heunqes/error.hpp"
#include "heunqes/kernels.hpp"

namespace heunqes {

ReducedProblem make_problem(const PhysicalParams& params, int n) {
  const PhysicalParams checked = validate(params, /*require_coulomb=*/true);
  if (n < 1 || n > kMaxDegree)
    throw Error(Errc::DegreeOutOfRange,
                "polynomial degree n must lie in [1, 50], got " + std::to_string(n));
  ReducedProblem problem;
  problem.physical = checked;
  problem.n = n;
  problem.abs_l = std::abs(checked.l);
  problem.theta = 2 * problem.abs_l + 1;
  problem.coupling = checked.coupling() * checked.l;
  return problem;
}

namespace {

void require_positive(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw Error(Errc::NonPositiveFrequency,
                "frequency must be positive and finite, got " + std::to_string(omega));
}

}  // namespace

HeunParams heun_params_at(const ReducedProblem& problem, double omega) {
  require_positive(omega);
  const double m = problem.physical.mass;
  const double x = m * omega;
  const double sx = std::sqrt(x);
  HeunParams p;
  p.alpha = 2.0 * m * problem.physical.eta / (x * sx);
  p.delta = problem.coupling / sx;
  p.theta = problem.theta;
  p.g = 2.0 * problem.n;
  return p;
}

std::array<double, 3> cubic_coefficients(const ReducedProblem& problem) {
  const double m = problem.physical.mass;
  const double eta = problem.physical.eta;
  const double q = problem.coupling;
  const double theta = problem.theta;
  return {-(q * q) / (2.0 * m * theta),
          -eta * q * (1.0 + theta) / (m * theta),
          -(2.0 + theta) * eta * eta / (2.0 * m)};
}

std::vector<double> real_cubic_roots(double a2, double a1, double a0) {
  const double q = (a2 * a2 - 3.0 * a1) / 9.0;
  const double r = (a2 * (2.0 * a2 * a2 - 9.0 * a1) + 27.0 * a0) / 54.0;
  const double shift = a2 / 3.0;
  std::vector<double> roots;
  if (r * r < q * q * q) {
    const double t = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
    const double s = -2.0 * std::sqrt(q);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    roots = {s * std::cos(t / 3.0) - shift, s * std::cos((t + two_pi) / 3.0) - shift,
             s * std::cos((t - two_pi) / 3.0) - shift};
  } else {
    const double a = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
    const double b = (a == 0.0) ? 0.0 : q / a;
    roots = {a + b - shift};
    if (a == b) roots.push_back(-a - shift);  // double root
  }

  const auto poly = [&](double x) { return ((x + a2) * x + a1) * x + a0; };
  const auto slope = [&](double x) { return (3.0 * x + 2.0 * a2) * x + a1; };
  for (double& x : roots) {
    for (int step = 0; step < 3; ++step) {
      const double d = slope(x);
      if (d == 0.0) break;
      const double next = x - poly(x) / d;
      if (!(std::abs(poly(next)) < std::abs(poly(x)))) break;
      x = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double u, double v) {
                            return std::abs(u - v) <=
                                   1e-14 * std::max({1.0, std::abs(u), std::abs(v)});
                          }),
              roots.end());
  return roots;
}

double characteristic_frequency(const ReducedProblem& problem) {
  const double m = problem.physical.mass;
  const double eta = problem.physical.eta;
  const double q = problem.coupling;
  return std::max({q * q / (2.0 * m * problem.theta), std::cbrt(eta * eta / m), 1e-30});
}

std::vector<SpectralSolution> solve_cubic(const ReducedProblem& problem) {
  if (problem.n != 1)
    throw Error(Errc::WrongDegree, "the closed-form cubic applies to n = 1 only");
  const auto [a2, a1, a0] = cubic_coefficients(problem);
  // Exact zero roots (eta = 0) come out as rounding noise around 0.
  const double floor = 1e-9 * characteristic_frequency(problem);
  std::vector<SpectralSolution> out;
  for (double omega : real_cubic_roots(a2, a1, a0))
    if (omega > floor) out.push_back(assemble_solution(problem, omega));
  if (out.empty())
    throw Error(Errc::NoPositiveRoot, "the frequency cubic has no positive root");
  return out;
}

double relative_truncation_residual(const ReducedProblem& problem, double omega) {
  const HeunParams p = heun_params_at(problem, omega);
  const double theta = p.theta;
  const int top = problem.n + 1;

  // c_j = (prev, cur) * exp(log_scale); rescale whenever magnitudes drift.
  double prev = 1.0;
  double cur = first_coefficient(p);
  double log_scale = 0.0;
  double log_max = 0.0;  // log max_{j<=n} |c_j|, c_0 = 1
  const auto track = [&](double c) {
    if (c != 0.0) log_max = std::max(log_max, std::log(std::abs(c)) + log_scale);
  };
  if (top > 1) track(cur);
  for (int j = 0; j + 2 <= top; ++j) {
    const double jj = j;
    const double denom = (jj + 2.0) * (jj + 1.0 + theta);
    const double lead = 2.0 * p.alpha * (jj + 1.0) + theta * p.alpha + 2.0 * p.delta;
    const double next = lead * cur / (2.0 * denom) - (p.g - 2.0 * jj) * prev / denom;
    prev = cur;
    cur = next;
    if (j + 2 < top) track(cur);
    const double mag = std::max(std::abs(prev), std::abs(cur));
    if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
      const double lg = std::log(mag);
      prev /= mag;
      cur /= mag;
      log_scale += lg;
    }
  }
  if (cur == 0.0) return 0.0;
  const double log_ratio = std::log(std::abs(cur)) + log_scale - log_max;
  return std::copysign(std::exp(std::min(log_ratio, 700.0)), cur);
}

namespace {

double bisect(const ReducedProblem& problem, double lo, double hi, double flo) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 4.0 * 2.2e-16 * hi) break;
    const double fmid = relative_truncation_residual(problem, mid);
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

// Golden-section minimum of sign * f over [lo, hi] in log(omega).
std::pair<double, double> dip(const ReducedProblem& problem, double lo, double hi,
                              double sign) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo);
  double b = std::log(hi);
  const auto f = [&](double t) {
    return sign * relative_truncation_residual(problem, std::exp(t));
  };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 80; ++iter) {
    if (fc < 0.0 || fd < 0.0) break;
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
  return fc < fd ? std::pair{std::exp(c), sign * fc} : std::pair{std::exp(d), sign * fd};
}

}  // namespace

std::vector<SpectralSolution> solve_frequency(const ReducedProblem& problem,
                                              const ScanOptions& options) {
  const double scale = characteristic_frequency(problem);
  const int count = std::max(options.points, 3);
  const double lo_exp = -options.decades_below;
  const double hi_exp = options.decades_above;

  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = scale * std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (count - 1));
  std::vector<double> values(count);
  kernels::omp::evaluate_grid(
      [&](double omega) { return relative_truncation_residual(problem, omega); }, grid,
      values);

  std::vector<double> roots;
  for (int i = 0; i < count; ++i) {
    if (values[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (i + 1 < count && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0))
      roots.push_back(bisect(problem, grid[i], grid[i + 1], values[i]));

    // Two roots between neighbouring samples leave no sign change; look for
    // a local dip of |f| and check whether it crosses zero.
    if (i > 0 && i + 1 < count && values[i - 1] != 0.0 && values[i + 1] != 0.0 &&
        (values[i - 1] < 0.0) == (values[i] < 0.0) &&
        (values[i + 1] < 0.0) == (values[i] < 0.0) &&
        std::abs(values[i]) < std::abs(values[i - 1]) &&
        std::abs(values[i]) <= std::abs(values[i + 1])) {
      const double sign = values[i] < 0.0 ? -1.0 : 1.0;
      const auto [omega_min, f_min] = dip(problem, grid[i - 1], grid[i + 1], sign);
      if (f_min == 0.0) {
        roots.push_back(omega_min);
      } else if ((f_min < 0.0) != (values[i] < 0.0)) {
        roots.push_back(bisect(problem, grid[i - 1], omega_min, values[i - 1]));
        roots.push_back(bisect(problem, omega_min, grid[i + 1], f_min));
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double u, double v) { return std::abs(u - v) <= 1e-12 * v; }),
              roots.end());
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no frequency root for n = " << problem.n << ", l = " << problem.physical.l
        << " in omega range [" << grid.front() << ", " << grid.back() << "]";
    throw Error(Errc::NoRootInRange, msg.str());
  }

  std::vector<SpectralSolution> out;
  out.reserve(roots.size());
  for (double omega : roots) out.push_back(assemble_solution(problem, omega));
  return out;
}

double energy(const ReducedProblem& problem, double omega) {
  require_positive(omega);
  const auto& ph = problem.physical;
  const double ml = ph.coupling();
  return omega * (problem.n + problem.abs_l + 1) -
         ph.eta * ph.eta / (2.0 * ph.mass * omega * omega) + ml * ml / (8.0 * ph.mass) +
         ph.kz * ph.kz / (2.0 * ph.mass);
}

double zeta_squared(const ReducedProblem& problem, double omega) {
  require_positive(omega);
  const auto& ph = problem.physical;
  return ph.mass * omega * (2.0 * problem.n + 2.0 + 2.0 * problem.abs_l) -
         ph.eta * ph.eta / (omega * omega);
}

SpectralSolution assemble_solution(const ReducedProblem& problem, double omega) {
  SpectralSolution s;
  s.n = problem.n;
  s.l = problem.physical.l;
  s.omega = omega;
  s.physical = problem.physical;
  s.heun = heun_params_at(problem, omega);
  s.energy = energy(problem, omega);
  s.zeta_sq = zeta_squared(problem, omega);

  const auto seq = generate_coefficients(s.heun, problem.n + 2);
  s.coefficients.assign(seq.coeffs.begin(), seq.coeffs.begin() + problem.n + 1);
  double biggest = 0.0;
  for (double c : s.coefficients) biggest = std::max(biggest, std::abs(c));
  s.residuals.truncation = std::abs(seq.coeffs[problem.n + 1]) / biggest;
  s.residuals.truncation_next = std::abs(seq.coeffs[problem.n + 2]) / biggest;
  if (problem.n == 1) {
    const auto [a2, a1, a0] = cubic_coefficients(problem);
    s.residuals.cubic = std::abs(((omega + a2) * omega + a1) * omega + a0);
  }
  s.node_count = static_cast<int>(positive_real_roots(s.coefficients).size());
  return s;
}

}  // namespace heunqes
