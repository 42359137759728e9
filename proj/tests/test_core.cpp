#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dcss/core.hpp"

using namespace dcss;

TEST_CASE("make_params fills derived quantities") {
  const SystemParams p = make_params(4, 0.5, 0.25, 2.0, 2.0, 1.5);
  CHECK(p.N == 4);
  CHECK(p.Lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.two_star == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p.mu1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(p.mu2 == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(p.omega == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
  CHECK(p.nu == 1.5);
}

TEST_CASE("make_params rejects bad tuples") {
  CHECK_THROWS_AS(make_params(2, 0.1, 0.1, 2.0, 2.0, 1.0), DimensionTooSmall);
  CHECK_THROWS_AS(make_params(4, 0.0, 0.5, 2.0, 2.0, 1.0), HardyOutOfRange);
  CHECK_THROWS_AS(make_params(4, 1.0, 0.5, 2.0, 2.0, 1.0), HardyOutOfRange);
  CHECK_THROWS_AS(make_params(4, -0.3, 0.5, 2.0, 2.0, 1.0), HardyOutOfRange);
  CHECK_THROWS_AS(make_params(4, 0.5, 0.5, 1.0, 3.0, 1.0), ExponentMismatch);
  CHECK_THROWS_AS(make_params(4, 0.5, 0.5, 2.0, 2.5, 1.0), ExponentMismatch);
  CHECK_THROWS_AS(make_params(4, 0.5, 0.5, 2.0, 2.0,
                              std::numeric_limits<double>::quiet_NaN()),
                  ExponentMismatch);
  // Hardy coefficients may differ, exponents must sum to 2N/(N-2) exactly.
  CHECK_NOTHROW(make_params(3, 0.075, 0.15, 3.0, 3.0, -1.0));
  CHECK_NOTHROW(make_params(5, 1.125, 2.025, 5.0 / 3.0, 5.0 / 3.0, 0.5));
}

TEST_CASE("parameter identities hold on random admissible tuples") {
  std::mt19937 rng(987654321u);
  std::uniform_int_distribution<int> pickN(3, 9);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  std::uniform_real_distribution<double> nud(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = pickN(rng);
    const double Lam = hardy_constant(N);
    const double l1 = unit(rng) * Lam;
    const double l2 = unit(rng) * Lam;
    const double ts = critical_exponent(N);
    const double frac = 0.2 + 0.6 * unit(rng);
    const double alpha = 1.0 + frac * (ts - 2.0);
    const double beta = ts - alpha;
    const SystemParams p = make_params(N, l1, l2, alpha, beta, nud(rng));
    CHECK(p.Lambda == doctest::Approx((N - 2.0) * (N - 2.0) / 4.0).epsilon(1e-15));
    CHECK(p.two_star * (N - 2.0) == doctest::Approx(2.0 * N).epsilon(1e-15));
    CHECK(p.mu1 * p.mu1 + p.lambda1 == doctest::Approx(p.Lambda).epsilon(1e-13));
    CHECK(p.mu2 * p.mu2 + p.lambda2 == doctest::Approx(p.Lambda).epsilon(1e-13));
    CHECK(p.alpha + p.beta == doctest::Approx(p.two_star).epsilon(1e-15));
    const SystemParams q = with_nu(p, 0.125);
    CHECK(q.nu == 0.125);
    CHECK(q.lambda1 == p.lambda1);
    CHECK(q.mu2 == p.mu2);
  }
}

TEST_CASE("sphere areas match the closed forms and tgamma") {
  const double pi = std::numbers::pi;
  CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-15));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
  CHECK(sphere_area(5) == doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-15));
  for (int N = 3; N <= 12; ++N) {
    const double ref = 2.0 * std::pow(pi, N / 2.0) / std::tgamma(N / 2.0);
    CHECK(sphere_area(N) == doctest::Approx(ref).epsilon(1e-13));
  }
  CHECK_THROWS_AS(sphere_area(2), DimensionTooSmall);
}

TEST_CASE("grid layout: nodes, spacing, Simpson pattern") {
  const GridPtr g = make_grid(18.0, 7);
  CHECK(g->h == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(g->s.front() == -18.0);
  CHECK(g->s.back() == 18.0);
  CHECK(g->s[3] == 0.0);
  const double u = 6.0 / 3.0;
  const std::vector<double> expect = {u, 4 * u, 2 * u, 4 * u, 2 * u, 4 * u, u};
  for (int j = 0; j < 7; ++j) {
    CHECK(g->weights[j] == doctest::Approx(expect[j]).epsilon(1e-15));
  }
  CHECK(g->trap[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g->trap[3] == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(g->trap[6] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("grid rejects invalid shapes") {
  CHECK_THROWS_AS(make_grid(18.0, 4), BadGrid);
  CHECK_THROWS_AS(make_grid(18.0, 2), BadGrid);
  CHECK_THROWS_AS(make_grid(0.0, 101), BadGrid);
  CHECK_THROWS_AS(make_grid(-3.0, 101), BadGrid);
}

TEST_CASE("Simpson weights sum to the interval length") {
  const GridPtr g = make_grid(18.0, 4001);
  double sum = 0.0;
  for (double w : g->weights) sum += w;
  CHECK(sum == doctest::Approx(36.0).epsilon(1e-12));
  double tsum = 0.0;
  for (double w : g->trap) tsum += w;
  CHECK(tsum == doctest::Approx(36.0).epsilon(1e-12));
}

TEST_CASE("default grid matches the documented shape") {
  const GridPtr g = default_grid();
  CHECK(g->L == kDefaultHalfWidth);
  CHECK(g->n == kDefaultPoints);
  CHECK(g->s[(g->n - 1) / 2] == 0.0);
}

TEST_CASE("integrate: Gaussian, parity, cubic exactness, linearity") {
  const GridPtr g = make_grid(18.0, 4001);
  const int n = g->n;

  std::vector<double> ones(n, 1.0);
  CHECK(integrate(*g, ones) == doctest::Approx(36.0).epsilon(1e-13));

  std::vector<double> gauss(n), odd(n), cubic(n);
  for (int j = 0; j < n; ++j) {
    const double s = g->s[j];
    gauss[j] = std::exp(-s * s);
    odd[j] = s * std::exp(-s * s);
    cubic[j] = s * s * s + 2.0 * s * s - s + 0.5;
  }
  CHECK(integrate(*g, gauss) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK(std::abs(integrate(*g, odd)) < 1e-14);
  // Composite Simpson is exact on cubics: int = (4/3)L^3 + L  (odd parts drop).
  const double L = 18.0;
  const double exact = 2.0 * (2.0 * L * L * L / 3.0 + 0.5 * L);
  CHECK(integrate(*g, cubic) == doctest::Approx(exact).epsilon(1e-13));

  std::vector<double> combo(n);
  for (int j = 0; j < n; ++j) combo[j] = 2.0 * gauss[j] - 3.0 * cubic[j];
  CHECK(integrate(*g, combo) ==
        doctest::Approx(2.0 * integrate(*g, gauss) - 3.0 * integrate(*g, cubic))
            .epsilon(1e-13));

  std::vector<double> wrong(n - 1, 1.0);
  CHECK_THROWS_AS(integrate(*g, wrong), LengthMismatch);
}

TEST_CASE("profiles validate lengths and grids") {
  const GridPtr g = make_grid(10.0, 101);
  const GridPtr g2 = make_grid(10.0, 201);
  CHECK_THROWS_AS(make_profile(g, std::vector<double>(100, 0.0)), LengthMismatch);
  const Profile a = zero_profile(g);
  CHECK(static_cast<int>(a.v.size()) == 101);
  const Profile b = make_profile(g2, std::vector<double>(201, 1.0));
  CHECK_THROWS_AS(require_same_grid(a, b), GridMismatch);
  // Same shape on a different shared_ptr is fine (value-identical grids).
  const GridPtr g3 = make_grid(10.0, 101);
  const Profile c = zero_profile(g3);
  CHECK_NOTHROW(require_same_grid(a, c));
  CHECK_NOTHROW(require_pair(StatePair{a, c}));
}
