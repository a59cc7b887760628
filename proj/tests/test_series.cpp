#include <doctest.h>

#include <cmath>
#include <random>

#include "heunqes/error.hpp"
#include "heunqes/series.hpp"

using namespace heunqes;

TEST_CASE("first coefficient") {
  CHECK(first_coefficient({2.0, 3.0, 3, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(first_coefficient({0.0, 0.0, 3, 0.0}) == 0.0);
  CHECK(first_coefficient({1.0, -1.0, 1, 0.0}) == -0.5);
}

TEST_CASE("recurrence truncates the even oscillator case at g = 4") {
  const auto seq = generate_coefficients({0.0, 0.0, 3, 4.0}, 4);
  REQUIRE(seq.coeffs.size() == 5);
  CHECK(seq.coeffs[0] == 1.0);
  CHECK(seq.coeffs[1] == 0.0);
  CHECK(seq.coeffs[2] == -0.5);
  CHECK(seq.coeffs[3] == 0.0);
  CHECK(seq.coeffs[4] == 0.0);
}

TEST_CASE("g = 2 does not truncate the even series") {
  const auto seq = generate_coefficients({0.0, 0.0, 3, 2.0}, 4);
  CHECK(seq.coeffs[2] == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(seq.coeffs[4] == doctest::Approx(-1.0 / 48.0).epsilon(1e-15));
}

TEST_CASE("g = 0 with no couplings gives H = 1") {
  const auto seq = generate_coefficients({0.0, 0.0, 5, 0.0}, 10);
  for (std::size_t j = 1; j < seq.coeffs.size(); ++j) CHECK(seq.coeffs[j] == 0.0);
}

TEST_CASE("truncation residual") {
  CHECK(truncation_residual({0.0, 0.0, 3, 4.0}, 2) == 0.0);
  CHECK(truncation_residual({0.0, 0.0, 3, 2.0}, 1) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK_THROWS_AS(truncation_residual({0.0, 0.0, 3, 0.0}, 0), Error);
}

TEST_CASE("invalid Heun parameters are rejected") {
  CHECK_THROWS_AS(generate_coefficients({0.0, 0.0, 2, 0.0}, 3), Error);
  CHECK_THROWS_AS(generate_coefficients({0.0, 0.0, -1, 0.0}, 3), Error);
  CHECK_THROWS_AS(generate_coefficients({std::nan(""), 0.0, 3, 0.0}, 3), Error);
}

TEST_CASE("overflow guard fires for pathological growth") {
  try {
    generate_coefficients({1e80, 0.0, 1, 0.0}, 8);
    FAIL("expected OverflowGuard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OverflowGuard);
  }
}

TEST_CASE("first coefficient matches the generated c_1 bit-for-bit") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const HeunParams p{dist(rng), dist(rng), 2 * (i % 5) + 1, dist(rng)};
    CHECK(first_coefficient(p) == generate_coefficients(p, 1).coeffs[1]);
  }
}

TEST_CASE("odd coefficients vanish when alpha = delta = 0") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  for (int i = 0; i < 50; ++i) {
    const auto seq = generate_coefficients({0.0, 0.0, 2 * (i % 4) + 1, dist(rng)}, 25);
    for (std::size_t j = 1; j < seq.coeffs.size(); j += 2) CHECK(seq.coeffs[j] == 0.0);
  }
}

TEST_CASE("truncation propagates: once c_{n+1} = 0 at g = 2n all later terms vanish") {
  // alpha = delta = 0, theta = 3, g = 4 truncates exactly at n = 2
  const auto seq = generate_coefficients({0.0, 0.0, 3, 4.0}, 30);
  for (std::size_t j = 3; j < seq.coeffs.size(); ++j) CHECK(seq.coeffs[j] == 0.0);
}

TEST_CASE("series solves the biconfluent Heun equation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  std::uniform_real_distribution<double> spectral(-6.0, 6.0);
  std::uniform_real_distribution<double> point(0.05, 2.0);  // 60 terms converge here
  for (int trial = 0; trial < 100; ++trial) {
    const HeunParams p{coupling(rng), coupling(rng), 2 * (trial % 4) + 1, spectral(rng)};
    const auto seq = generate_coefficients(p, 60);
    const double xi = point(rng);
    const auto h = evaluate_H_derivatives(seq, xi);
    const double t1 = h.second;
    const double t2 = (p.theta / xi - p.alpha - 2.0 * xi) * h.first;
    const double t3 = (p.g - (p.theta * p.alpha + 2.0 * p.delta) / (2.0 * xi)) * h.value;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    CHECK(std::abs(t1 + t2 + t3) / scale < 1e-8);
  }
}

TEST_CASE("evaluate_H") {
  const CoefficientSequence quad{{1.0, 0.0, -0.5}, {}};
  CHECK(evaluate_H(quad, 0.0) == 1.0);
  CHECK(std::abs(evaluate_H(quad, std::sqrt(2.0))) < 1e-15);
  const CoefficientSequence lin{{1.0, 2.0}, {}};
  CHECK(evaluate_H(lin, 3.0) == 7.0);
}

TEST_CASE("term-wise derivatives match a hand-differentiated cubic") {
  // 1 + 2x - x^2 + 0.5x^3 -> 2 - 2x + 1.5x^2 -> -2 + 3x
  const CoefficientSequence seq{{1.0, 2.0, -1.0, 0.5}, {}};
  const auto v = evaluate_H_derivatives(seq, 2.0);
  CHECK(v.value == doctest::Approx(5.0));
  CHECK(v.first == doctest::Approx(4.0));
  CHECK(v.second == doctest::Approx(4.0));
}

TEST_CASE("radial ansatz") {
  const CoefficientSequence one{{1.0}, {}};
  const HeunParams p{0.0, 0.0, 3, 0.0};
  CHECK(radial_ansatz(one, p, 1, 0.0) == 0.0);
  CHECK(radial_ansatz(one, {0.0, 0.0, 1, 0.0}, 0, 0.0) == 1.0);
  CHECK(radial_ansatz(one, p, 1, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  // exp(-alpha xi / 2) factor
  CHECK(radial_ansatz(one, {2.0, 0.0, 3, 0.0}, 1, 1.0) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
}

TEST_CASE("positive real roots of polynomials") {
  CHECK(positive_real_roots(std::vector<double>{1.0, 0.685}).empty());
  const auto r = positive_real_roots(std::vector<double>{1.0, 0.0, -0.5});
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(positive_real_roots(std::vector<double>{1.0}).empty());

  // (x - 1)(x - 2)(x - 3)(x + 4): three positive roots
  const auto four = positive_real_roots(std::vector<double>{-24.0, 38.0, -13.0, -2.0, 1.0});
  REQUIRE(four.size() == 3);
  CHECK(four[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(four[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(four[2] == doctest::Approx(3.0).epsilon(1e-13));

  // (x - 1)^2 touches zero without a sign change
  CHECK(positive_real_roots(std::vector<double>{1.0, -2.0, 1.0}).empty());

  // two roots 1e-3 apart are still separated
  const auto close = positive_real_roots(std::vector<double>{1.001, -2.001, 1.0});
  REQUIRE(close.size() == 2);
  CHECK(close[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(close[1] == doctest::Approx(1.001).epsilon(1e-10));
}

TEST_CASE("root counting agrees with dense sign scanning on random polynomials") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(2 + trial % 7);
    for (double& v : c) v = dist(rng);
    c[0] = 1.0;
    const auto roots = positive_real_roots(c);
    const double bound = cauchy_root_bound(c);
    int changes = 0;
    double prev = evaluate_polynomial(c, 0.0);
    const int samples = 200000;
    for (int i = 1; i <= samples; ++i) {
      const double v = evaluate_polynomial(c, bound * i / samples);
      if (v != 0.0 && (v < 0.0) != (prev < 0.0)) ++changes;
      if (v != 0.0) prev = v;
    }
    CHECK(static_cast<int>(roots.size()) == changes);
  }
}
