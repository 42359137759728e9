#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dcss/closed_form.hpp"
#include "dcss/core.hpp"
#include "dcss/verify.hpp"

using namespace dcss;

TEST_CASE("make_check tolerance semantics") {
  CHECK(make_check("a", "", 10.0, 10.0 + 5e-6, 1e-6).pass);
  CHECK(!make_check("b", "", 10.0, 10.0 + 2e-5, 1e-6).pass);
  CHECK(make_check("c", "", 0.0, 5e-8, 1e-7).pass);      // absolute when claimed = 0
  CHECK(!make_check("d", "", 0.0, 5e-7, 1e-7).pass);
  const CheckResult r = make_check("e", "stmt", 1.0, 2.0, 1e-3);
  CHECK(r.name == "e");
  CHECK(r.provenance == "stmt");
  CHECK(r.claimed == 1.0);
  CHECK(r.computed == 2.0);
}

TEST_CASE("identity suite passes on the default grid") {
  const auto checks = check_identities(default_grid());
  // 4 cases x 2 identities + 1 instanton comparison for the lambda = 0 case.
  CHECK(checks.size() == 9);
  for (const auto& c : checks) {
    INFO(c.name, ": claimed=", c.claimed, " computed=", c.computed);
    CHECK(c.pass);
  }
}

TEST_CASE("identity errors shrink at fourth order under refinement") {
  const auto coarse = check_identities({{4, 0.5}}, make_grid(42.0, 1001));
  const auto fine = check_identities({{4, 0.5}}, make_grid(42.0, 2001));
  REQUIRE(coarse.size() == 2);
  REQUIRE(fine.size() == 2);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double ec = std::abs(coarse[i].computed - coarse[i].claimed);
    const double ef = std::abs(fine[i].computed - fine[i].claimed);
    CHECK(ec / ef > 4.0);  // fourth order would give ~16x
  }
}

TEST_CASE("threshold suite is restricted to its regime") {
  const GridPtr g = default_grid();
  CHECK_THROWS_AS(
      check_thresholds(make_params(3, 0.1, 0.1, 3.0, 3.0, 1.0), g, SolveOptions{}),
      OutOfRegime);
  CHECK_THROWS_AS(
      check_thresholds(make_params(4, 0.5, 0.5, 2.5, 1.5, 1.0), g, SolveOptions{}),
      OutOfRegime);
}

TEST_CASE("threshold suite passes for symmetric N = 4 parameters") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);
  SolveOptions opts;
  opts.separations = {12.0};
  const auto checks = check_thresholds(p, g, opts);
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) {
    INFO(c.name, ": claimed=", c.claimed, " computed=", c.computed, " note=", c.note);
    CHECK(c.pass);
  }
}

TEST_CASE("symmetry check accepts the synchronized state, flags defects") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.5, 0.5, 2.0, 2.0, 1.0);

  SolveReport good;
  good.state = synchronized_pair(p, g);
  const CheckResult c = check_symmetry_profile(good);
  CHECK(c.pass);
  CHECK(c.computed < 1e-10);

  // A state whose peak is off center is rejected outright.
  SolveReport shifted;
  shifted.state = StatePair{
      bubble_ef_profile(4, 0.5, BubbleSpec::at_center(1, 3.0), g),
      bubble_ef_profile(4, 0.5, BubbleSpec::at_center(2, 3.0), g)};
  CHECK_THROWS_AS(check_symmetry_profile(shifted), ConditionFailed);

  // A centered but uneven state fails the check without throwing.
  SolveReport uneven = good;
  const int mid = (g->n - 1) / 2;
  for (int j = mid + 200; j < mid + 400; ++j) {
    uneven.state.w1.v[j] += 0.05;
  }
  const CheckResult cu = check_symmetry_profile(uneven);
  CHECK(!cu.pass);
  CHECK(cu.computed > 1e-3);
}

TEST_CASE("limit suite validates its coupling list") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.3, 0.6, 2.0, 2.0, 1.0);
  CHECK_THROWS_AS(check_limits(p, {}, g, SolveOptions{}), BadArgument);
  CHECK_THROWS_AS(check_limits(p, {0.1, 0.2}, g, SolveOptions{}), BadArgument);
  CHECK_THROWS_AS(check_limits(p, {0.2, -0.1}, g, SolveOptions{}), BadArgument);
}

TEST_CASE("limit suite passes on a short decreasing list") {
  const GridPtr g = default_grid();
  const SystemParams p = make_params(4, 0.3, 0.6, 2.0, 2.0, 1.0);
  SolveOptions opts;
  opts.separations = {12.0};
  const auto checks = check_limits(p, {0.2, 0.1}, g, opts);
  // 2 per-nu checks + monotonicity + d0 limit + 3 mp levels + mp monotonicity.
  CHECK(checks.size() == 8);
  for (const auto& c : checks) {
    INFO(c.name, ": claimed=", c.claimed, " computed=", c.computed, " note=", c.note);
    CHECK(c.pass);
  }
}
