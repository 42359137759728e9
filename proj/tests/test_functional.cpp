#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dcss/closed_form.hpp"
#include "dcss/core.hpp"
#include "dcss/functional.hpp"

using namespace dcss;

namespace {

// Smooth decaying test state: a small sum of Gaussians with zero endpoints.
Profile random_state(GridPtr grid, std::mt19937& rng, bool positive) {
  std::uniform_real_distribution<double> amp(positive ? 0.2 : -1.0, 1.0);
  std::uniform_real_distribution<double> center(-3.0, 3.0);
  std::uniform_real_distribution<double> width(0.6, 2.5);
  Profile w = zero_profile(grid);
  for (int b = 0; b < 3; ++b) {
    const double a = amp(rng), c = center(rng), sg = width(rng);
    for (int j = 0; j < grid->n; ++j) {
      const double t = (grid->s[j] - c) / sg;
      w.v[j] += a * std::exp(-t * t);
    }
  }
  w.v.front() = w.v.back() = 0.0;
  return w;
}

double trap_pairing(const EFGrid& g, const StatePair& G, const StatePair& d) {
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    acc += g.trap[j] * (G.w1.v[j] * d.w1.v[j] + G.w2.v[j] * d.w2.v[j]);
  }
  return acc;
}

}  // namespace

TEST_CASE("zero state has zero energy and zero gradient") {
  const GridPtr g = make_grid(20.0, 401);
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);
  const StatePair x{zero_profile(g), zero_profile(g)};
  const EnergyBreakdown e = energy(p, x);
  CHECK(e.total == 0.0);
  CHECK(e.norm1_sq == 0.0);
  CHECK(e.coupling == 0.0);
  const StatePair G = gradient(p, x);
  for (double v : G.w1.v) CHECK(v == 0.0);
  for (double v : G.w2.v) CHECK(v == 0.0);
}

TEST_CASE("single-bubble energy equals the single-component level") {
  const GridPtr g = default_grid();
  for (const auto& [N, lam] : std::vector<std::pair<int, double>>{
           {3, 0.05}, {4, 0.5}, {5, 1.0}}) {
    const double ab = critical_exponent(N) / 2.0;
    const SystemParams p = make_params(N, lam, lam, ab, ab, 0.7);
    const StatePair x{bubble_ef_profile(N, lam, BubbleSpec::at_center(1, 0.0), g),
                      zero_profile(g)};
    const double M = single_component_level(N, lam);
    CHECK(energy(p, x).total == doctest::Approx(M).epsilon(1e-6));
  }
}

TEST_CASE("breakdown recombines into the total") {
  const GridPtr g = make_grid(20.0, 801);
  const SystemParams p = make_params(4, 0.3, 0.6, 2.0, 2.0, 1.3);
  std::mt19937 rng(2024u);
  for (int trial = 0; trial < 10; ++trial) {
    const StatePair x{random_state(g, rng, false), random_state(g, rng, false)};
    const EnergyBreakdown e = energy(p, x);
    const double recomb = 0.5 * (e.norm1_sq + e.norm2_sq) -
                          p.omega * (e.crit1 + e.crit2) / p.two_star -
                          p.nu * p.omega * e.coupling;
    CHECK(e.total == doctest::Approx(recomb).epsilon(1e-14));
    CHECK(e.norm1_sq ==
          doctest::Approx(norm_lambda_sq(p.N, p.lambda1, x.w1)).epsilon(1e-14));
    CHECK(e.crit2 ==
          doctest::Approx(lp_pos_integral(x.w2, p.two_star)).epsilon(1e-14));
    CHECK(e.coupling ==
          doctest::Approx(coupling_integral(x.w1, x.w2, p.alpha, p.beta))
              .epsilon(1e-14));
  }
}

TEST_CASE("nu = 0 energy decouples into component energies") {
  const GridPtr g = make_grid(20.0, 801);
  const SystemParams p0 = make_params(4, 0.3, 0.6, 2.0, 2.0, 0.0);
  std::mt19937 rng(7u);
  const StatePair x{random_state(g, rng, false), random_state(g, rng, false)};
  const StatePair x1{x.w1, zero_profile(g)};
  const StatePair x2{zero_profile(g), x.w2};
  CHECK(energy(p0, x).total ==
        doctest::Approx(energy(p0, x1).total + energy(p0, x2).total).epsilon(1e-13));
}

TEST_CASE("mismatched grids are rejected") {
  const GridPtr g1 = make_grid(20.0, 401);
  const GridPtr g2 = make_grid(21.0, 401);
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);
  const StatePair x{zero_profile(g1), zero_profile(g2)};
  CHECK_THROWS_AS(energy(p, x), GridMismatch);
  CHECK_THROWS_AS(gradient(p, x), GridMismatch);
  CHECK_THROWS_AS(nehari_residuals(p, x), GridMismatch);
}

TEST_CASE("gradient matches central finite differences") {
  const GridPtr g = make_grid(20.0, 401);
  // For fractional exponents (alpha < 2) the third derivative of the coupling
  // term can be locally huge where one component is small, so the step must be
  // small for central differences to sit in the asymptotic regime; at 1e-6 the
  // truncation and round-off contributions are both ~1e-8 relative.
  const double eps = 1e-6;
  std::mt19937 rng(12345u);

  const auto run_check = [&](const SystemParams& p, bool positive) {
    const StatePair x{random_state(g, rng, positive), random_state(g, rng, positive)};
    StatePair d{random_state(g, rng, false), random_state(g, rng, false)};
    // Unit direction: keeps the cubic FD truncation term well below tolerance.
    const double dn = std::sqrt(trap_pairing(*g, d, d));
    for (int j = 0; j < g->n; ++j) {
      d.w1.v[j] /= dn;
      d.w2.v[j] /= dn;
    }
    const StatePair G = gradient(p, x);
    const double an = trap_pairing(*g, G, d);
    StatePair xp = x, xm = x;
    for (int j = 0; j < g->n; ++j) {
      xp.w1.v[j] += eps * d.w1.v[j];
      xp.w2.v[j] += eps * d.w2.v[j];
      xm.w1.v[j] -= eps * d.w1.v[j];
      xm.w2.v[j] -= eps * d.w2.v[j];
    }
    const double fd = (energy(p, xp).total - energy(p, xm).total) / (2.0 * eps);
    CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(fd)));
  };

  const SystemParams p4 = make_params(4, 0.35, 0.7, 2.0, 2.0, 1.2);
  for (int trial = 0; trial < 70; ++trial) run_check(p4, false);
  // Fractional coupling exponents: test at positive states where the
  // integrand is smooth.
  const SystemParams p5 = make_params(5, 0.8, 1.5, 5.0 / 3.0, 5.0 / 3.0, 0.4);
  for (int trial = 0; trial < 30; ++trial) run_check(p5, true);
}

TEST_CASE("one vanishing component kills its gradient and coupling") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 2.0);
  const StatePair x{bubble_ef_profile(4, 0.5, BubbleSpec::at_center(1, 0.0), g),
                    zero_profile(g)};
  const EnergyBreakdown e = energy(p, x);
  CHECK(e.coupling == 0.0);
  const StatePair G = gradient(p, x);
  for (double v : G.w2.v) CHECK(v == 0.0);
}

TEST_CASE("constraint residuals: bubble scalings in closed form") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);
  const Profile z = bubble_ef_profile(4, 0.5, BubbleSpec::at_center(1, 0.0), g);
  const double S2 = std::pow(s_lambda(4, 0.5), 2.0);

  const StatePair on{z, zero_profile(g)};
  const auto r1 = nehari_residuals(p, on);
  CHECK(std::abs(r1.first) <= 1e-6 * S2);  // the bubble sits on the constraint
  CHECK(r1.second == 0.0);

  StatePair doubled = on;
  for (double& v : doubled.w1.v) v *= 2.0;
  const auto r2 = nehari_residuals(p, doubled);
  // G1(t z, 0) = (t^2 - t^4) S(lambda)^2 at N = 4; t = 2 gives -12 S^2.
  CHECK(r2.first == doctest::Approx(-12.0 * S2).epsilon(1e-6));
}

TEST_CASE("Rayleigh quotient: bubble optimality and invariances") {
  const GridPtr g = default_grid();
  for (const auto& [N, lam] : std::vector<std::pair<int, double>>{
           {3, 0.1}, {4, 0.5}, {5, 1.0}}) {
    const Profile z = bubble_ef_profile(N, lam, BubbleSpec::at_center(1, 0.0), g);
    const double q = sobolev_quotient(N, lam, z);
    CHECK(q == doctest::Approx(s_lambda(N, lam)).epsilon(1e-6));

    Profile scaled = z;
    for (double& v : scaled.v) v *= 7.5;
    CHECK(sobolev_quotient(N, lam, scaled) == doctest::Approx(q).epsilon(1e-12));

    // Any competitor sits at or above the sharp constant (up to truncation).
    std::mt19937 rng(555u);
    for (int trial = 0; trial < 5; ++trial) {
      const Profile w = random_state(g, rng, true);
      CHECK(sobolev_quotient(N, lam, w) >= s_lambda(N, lam) * (1.0 - 1e-3));
    }
  }
  CHECK_THROWS_AS(sobolev_quotient(4, 0.5, zero_profile(g)), ZeroProfile);
}

TEST_CASE("energy is invariant under integer translations of the profile") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);
  const int shift = 100;  // 100 cells = 2.1 units of s
  const double c = shift * g->h;
  const StatePair a{bubble_ef_profile(4, 0.5, BubbleSpec::at_center(1, 0.0), g),
                    bubble_ef_profile(4, 0.5, BubbleSpec::at_center(2, 0.0), g)};
  const StatePair b{bubble_ef_profile(4, 0.5, BubbleSpec::at_center(1, c), g),
                    bubble_ef_profile(4, 0.5, BubbleSpec::at_center(2, c), g)};
  CHECK(energy(p, b).total ==
        doctest::Approx(energy(p, a).total).epsilon(1e-8));
}

TEST_CASE("component norms are positive and decrease in lambda") {
  const GridPtr g = make_grid(20.0, 801);
  std::mt19937 rng(99u);
  const Profile w = random_state(g, rng, false);
  const double n0 = norm_lambda_sq(4, 0.0, w);
  const double n1 = norm_lambda_sq(4, 0.2, w);
  const double n2 = norm_lambda_sq(4, 0.8, w);
  CHECK(n0 > n1);
  CHECK(n1 > n2);
  CHECK(n2 > 0.0);
  CHECK_THROWS_AS(norm_lambda_sq(4, 1.0, w), HardyOutOfRange);
  CHECK_THROWS_AS(norm_lambda_sq(4, -0.1, w), HardyOutOfRange);
}

TEST_CASE("kinetic form: accuracy and fourth-order convergence") {
  // K approximates Int w'^2 for decaying profiles; for w = exp(-s^2/2) on a
  // wide grid, Int w'^2 = sqrt(pi)/2.
  const double exact = std::sqrt(std::acos(-1.0)) / 2.0;
  const auto err_at = [&](int n) {
    const GridPtr g = make_grid(20.0, n);
    std::vector<double> w(g->n);
    for (int j = 0; j < g->n; ++j) w[j] = std::exp(-0.5 * g->s[j] * g->s[j]);
    return std::abs(kinetic_form(w, g->h) - exact);
  };
  const double e2001 = err_at(2001);
  CHECK(e2001 < 1e-8);
  // Halving h shrinks the error ~16x.
  const double ratio = err_at(1001) / e2001;
  CHECK(ratio > 8.0);
  CHECK(ratio < 40.0);
}
