#include <doctest.h>

#include <cmath>
#include <random>

#include "heunqes/error.hpp"
#include "heunqes/quantize.hpp"
#include "reference_values.hpp"

using namespace heunqes;

namespace {

PhysicalParams unit_params(int l = 1) { return {1.0, 1.0, 1.0, 1.0, 0.0, l}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("make_problem rejects l = 0, vanishing coupling and bad degree") {
  auto p = unit_params();
  p.l = 0;
  CHECK_THROWS_AS(make_problem(p, 1), Error);
  p = unit_params();
  p.quad = 0.0;
  CHECK_THROWS_AS(make_problem(p, 1), Error);
  CHECK_THROWS_AS(make_problem(unit_params(), 0), Error);
  CHECK_THROWS_AS(make_problem(unit_params(), kMaxDegree + 1), Error);
  const auto problem = make_problem(unit_params(-2), 3);
  CHECK(problem.abs_l == 2);
  CHECK(problem.theta == 5);
  CHECK(problem.coupling == -2.0);
}

TEST_CASE("heun parameters at a frequency") {
  auto p = unit_params();
  const auto problem = make_problem(p, 1);
  CHECK(heun_params_at(problem, 1.0).alpha == 2.0);
  CHECK(heun_params_at(problem, 4.0).delta == 0.5);
  CHECK(heun_params_at(problem, 4.0).g == 2.0);
  CHECK(heun_params_at(problem, 4.0).theta == 3);
  p.eta = 0.0;
  CHECK(heun_params_at(make_problem(p, 2), 3.7).alpha == 0.0);
  CHECK_THROWS_AS(heun_params_at(problem, 0.0), Error);
  CHECK_THROWS_AS(heun_params_at(problem, -1.0), Error);
}

TEST_CASE("cubic coefficients") {
  const auto [a2, a1, a0] = cubic_coefficients(make_problem(unit_params(), 1));
  CHECK(a2 == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  CHECK(a1 == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
  CHECK(a0 == doctest::Approx(-2.5).epsilon(1e-15));

  auto p = unit_params();
  p.eta = 0.0;
  p.quad = std::sqrt(6.0);
  const auto c = cubic_coefficients(make_problem(p, 1));
  CHECK(c[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 0.0);
}

TEST_CASE("real cubic roots against known factorizations") {
  // (x-1)(x-2)(x-3)
  auto r = real_cubic_roots(-6.0, 11.0, -6.0);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-14));
  // (x-2)(x^2+1)
  r = real_cubic_roots(-2.0, 1.0, -2.0);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-14));
  // x^2 (x - 1)
  r = real_cubic_roots(-1.0, 0.0, 0.0);
  REQUIRE(r.back() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(r.front()) < 1e-12);
}

TEST_CASE("reference ground state from the closed-form cubic") {
  const auto sols = solve_cubic(make_problem(unit_params(), 1));
  REQUIRE(sols.size() == 1);
  const auto& s = sols[0];
  CHECK(rel(s.omega, reference::kOmega11) < 1e-14);
  CHECK(*s.residuals.cubic < 1e-12);
  CHECK(rel(s.energy, reference::kEnergy11) < 1e-13);
  CHECK(rel(s.zeta_sq, reference::kZetaSq11) < 1e-13);
  CHECK(rel(s.heun.alpha, reference::kAlpha11) < 1e-13);
  CHECK(rel(s.heun.delta, reference::kDelta11) < 1e-13);
  CHECK(rel(s.coefficients[1], reference::kC1_11) < 1e-13);
  CHECK(s.node_count == 0);
  CHECK(s.residuals.truncation < 1e-10);

  // four-digit figures quoted alongside the model
  CHECK(rel(s.omega, 1.7479) < 1e-4);
  CHECK(rel(s.energy, 5.2051) < 1e-4);
  CHECK(rel(s.zeta_sq, 10.1601) < 1e-4);
  CHECK(rel(s.coefficients[1], 0.6849) < 1e-4);
}

TEST_CASE("pure Coulomb-oscillator cubic: omega^2 (omega - 1) keeps only omega = 1") {
  auto p = unit_params();
  p.eta = 0.0;
  p.quad = std::sqrt(6.0);
  const auto problem = make_problem(p, 1);
  const auto cubic = solve_cubic(problem);
  REQUIRE(cubic.size() == 1);
  CHECK(cubic[0].omega == doctest::Approx(1.0).epsilon(1e-12));
  const auto scanned = solve_frequency(problem);
  REQUIRE(scanned.size() == 1);
  CHECK(rel(scanned[0].omega, 1.0) < 1e-10);
}

TEST_CASE("vanishing Coulomb limit: omega^3 = (2 + theta) eta^2 / (2m)") {
  auto p = unit_params();
  p.quad = 1e-9;
  const auto sols = solve_cubic(make_problem(p, 1));
  REQUIRE(sols.size() == 1);
  CHECK(rel(sols[0].omega, reference::kOmegaNoCoulomb) < 1e-8);
}

TEST_CASE("general root-finder reproduces the frozen roots for n = 1..3") {
  for (const auto& ref : reference::kRoots) {
    CAPTURE(ref.l);
    CAPTURE(ref.n);
    const auto sols = solve_frequency(make_problem(unit_params(ref.l), ref.n));
    REQUIRE(static_cast<int>(sols.size()) == ref.count);
    for (int k = 0; k < ref.count; ++k) {
      CHECK(rel(sols[k].omega, ref.roots[k]) < 1e-12);
      CHECK(sols[k].residuals.truncation < 1e-10);
      CHECK(sols[k].residuals.truncation_next < 1e-10);
    }
  }
}

TEST_CASE("three positive roots with a repulsive Coulomb-type term") {
  PhysicalParams p{1.0, 1.0, 10.0, 1.0, 0.0, -1};  // M lambda l = -10
  const auto problem = make_problem(p, 1);
  const auto cubic = solve_cubic(problem);
  const auto scanned = solve_frequency(problem);
  const double expected[] = {0.292737809713050435, 0.539329415625242306, 15.8345994413283739};
  REQUIRE(cubic.size() == 3);
  REQUIRE(scanned.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(rel(cubic[k].omega, expected[k]) < 1e-12);
    CHECK(rel(scanned[k].omega, expected[k]) < 1e-12);
  }
}

TEST_CASE("root pair closer than the scan spacing is still resolved") {
  PhysicalParams p{1.0, 1.0, 10.0, 6.0805, 0.0, -1};
  const auto problem = make_problem(p, 1);
  const double expected[] = {1.63671602247900728, 7.47917316075481160, 7.55077748343284778};
  const auto cubic = solve_cubic(problem);
  const auto scanned = solve_frequency(problem);
  REQUIRE(cubic.size() == 3);
  REQUIRE(scanned.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(rel(cubic[k].omega, expected[k]) < 1e-10);
    CHECK(rel(scanned[k].omega, expected[k]) < 1e-10);
  }
}

TEST_CASE("energy and zeta squared") {
  auto p = unit_params();
  p.eta = 0.0;
  p.quad = 1e-300;  // formula-level check: the coupling terms drop out
  auto problem = make_problem(p, 1);
  CHECK(energy(problem, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(zeta_squared(problem, 1.0) == doctest::Approx(6.0).epsilon(1e-15));

  problem = make_problem(unit_params(), 1);
  CHECK(energy(problem, 1.7479) == doctest::Approx(3 * 1.7479 - 1 / (2 * 1.7479 * 1.7479) + 0.125));
  CHECK(rel(energy(problem, 1.7479), 5.2051) < 1e-4);
  CHECK(rel(zeta_squared(problem, 1.7479), 10.1601) < 1e-4);
  auto with_k = unit_params();
  with_k.kz = 2.0;
  CHECK(energy(make_problem(with_k, 1), 1.7479) ==
        doctest::Approx(energy(problem, 1.7479) + 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(energy(problem, 0.0), Error);
  CHECK_THROWS_AS(zeta_squared(problem, -2.0), Error);
}

TEST_CASE("zeta^2 = 2mE - k^2 - M^2 lambda^2 / 4 for random inputs") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  std::uniform_real_distribution<double> any(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    PhysicalParams p{pos(rng), pos(rng), any(rng), any(rng), any(rng), 1 + i % 3};
    const auto problem = make_problem(p, 1 + i % 4);
    const double omega = pos(rng);
    const double e = energy(problem, omega);
    const double z = zeta_squared(problem, omega);
    const double ml = p.quad * p.lambda;
    const double scale = std::max({std::abs(z), 2 * p.mass * std::abs(e), p.kz * p.kz});
    CHECK(std::abs(2 * p.mass * e - p.kz * p.kz - ml * ml / 4 - z) / scale < 1e-13);
  }
}

TEST_CASE("at least one positive root at n = 1 whenever eta != 0") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 100; ++i) {
    PhysicalParams p{std::exp(logu(rng)), 1.0, std::exp(logu(rng)) * (coin(rng) ? 1 : -1),
                     std::exp(logu(rng)) * (coin(rng) ? 1 : -1), 0.0, (coin(rng) ? 1 : -1) * (1 + i % 3)};
    const auto problem = make_problem(p, 1);
    CHECK_FALSE(solve_cubic(problem).empty());
    CHECK_FALSE(solve_frequency(problem).empty());
  }
}

TEST_CASE("solutions depend on (M, lambda) only through the product") {
  auto a = unit_params();
  a.quad = 2.0;
  a.lambda = 3.0;
  auto b = a;
  b.quad = 3.0;
  b.lambda = 2.0;
  for (int n = 1; n <= 3; ++n) {
    const auto sa = solve_frequency(make_problem(a, n));
    const auto sb = solve_frequency(make_problem(b, n));
    REQUIRE(sa.size() == sb.size());
    for (std::size_t k = 0; k < sa.size(); ++k) {
      CHECK(sa[k].omega == sb[k].omega);
      CHECK(sa[k].energy == sb[k].energy);
    }
  }
}

TEST_CASE("(l, lambda) -> (-l, -lambda) leaves the spectrum unchanged") {
  auto a = unit_params(2);
  auto b = a;
  b.l = -2;
  b.lambda = -1.0;
  for (int n = 1; n <= 3; ++n) {
    const auto pa = make_problem(a, n);
    const auto pb = make_problem(b, n);
    CHECK(pa.theta == pb.theta);
    CHECK(heun_params_at(pa, 1.3).delta == heun_params_at(pb, 1.3).delta);
    const auto sa = solve_frequency(pa);
    const auto sb = solve_frequency(pb);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t k = 0; k < sa.size(); ++k) {
      CHECK(sa[k].omega == sb[k].omega);
      CHECK(sa[k].energy == sb[k].energy);
    }
  }
}

TEST_CASE("relative residual changes sign across every reported root") {
  const auto problem = make_problem(unit_params(1), 3);
  for (const auto& s : solve_frequency(problem)) {
    const double below = relative_truncation_residual(problem, s.omega * (1 - 1e-6));
    const double above = relative_truncation_residual(problem, s.omega * (1 + 1e-6));
    CHECK((below < 0.0) != (above < 0.0));
  }
}

TEST_CASE("relative residual stays finite at the edges of the scan at high degree") {
  const auto problem = make_problem(unit_params(1), kMaxDegree);
  const double scale = characteristic_frequency(problem);
  CHECK(std::isfinite(relative_truncation_residual(problem, 1e-6 * scale)));
  CHECK(std::isfinite(relative_truncation_residual(problem, 1e6 * scale)));
}

TEST_CASE("solve_cubic only applies to n = 1") {
  CHECK_THROWS_AS(solve_cubic(make_problem(unit_params(), 2)), Error);
}
