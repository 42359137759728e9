#pragma once
// The theorem-checking suite: turns the quantitative claims the solver is
// built around (exact identities, threshold behavior, symmetry, small-nu
// limits) into pass/fail checks with explicit tolerances.

#include <string>
#include <utility>
#include <vector>

#include "dcss/core.hpp"
#include "dcss/minimize.hpp"

namespace dcss {

struct CheckResult {
  std::string name;
  std::string provenance;  // the mathematical statement the check encodes
  double claimed = 0;
  double computed = 0;
  double tolerance = 0;    // relative unless claimed == 0, then absolute
  bool pass = false;
  double runtime_s = 0;
  std::string note;        // free-form diagnostics
};

// Evaluates |computed - claimed| against tolerance (relative unless
// claimed == 0) and fills the pass flag.
CheckResult make_check(std::string name, std::string provenance, double claimed,
                       double computed, double tolerance);

// Exact-identity suite on a shared grid. For each (N, lambda) case:
//   - N * I_lambda(bubble) = S(lambda)^{N/2}  (tol 1e-6 rel)
//   - quotient(bubble) = S(lambda)            (tol 1e-6 rel)
// and for lambda = 0 additionally the instanton ratio
//   ||grad U||^2 / |U|_{2*}^{2*} = 1          (tol 1e-7 abs-style, claimed 1).
std::vector<CheckResult> check_identities(
    const std::vector<std::pair<int, double>>& cases, GridPtr grid);

// Default case list: {(3,0.1), (4,0.5), (5,1.0), (4,0.0)}.
std::vector<CheckResult> check_identities(GridPtr grid);

// Threshold behavior around nu0 (coupling beats both single components) and
// around the small-nu semitrivial regime, for N=4, alpha=beta=2:
//   - quotient minimization at nu=0.01: Semitrivial*, energy = min{M1,M2}
//     (tol 1e-5 rel);
//   - constrained minimization at nu = nu0+1: Coupled, energy < min{M1,M2};
//   - constrained minimization at nu = -1: infimum M1+M2 approached from
//     above but not attained (Dichotomizing).
// Throws OutOfRegime unless N == 4 and alpha == beta == 2.
std::vector<CheckResult> check_thresholds(const SystemParams& p, GridPtr grid,
                                          const SolveOptions& opts);

// Diagnostic (never a hard gate): evenness defect max|w(s)-w(-s)|/max|w| of a
// recentered converged state, plus the count of monotone-decay violations
// away from the peak (recorded in the note). Requires the report's state to
// be recentered (peak at s=0); throws ConditionFailed otherwise.
CheckResult check_symmetry_profile(const SolveReport& report);

// Small-coupling limit checks on a decreasing positive nu list:
//   - least energies increase toward M1+M2 as nu decreases, each below it
//     (per-step resolution 1e-3);
//   - the two-bubble mountain-pass level d_nu is strictly below d0 for each
//     nu in {0.1, 0.01, 0.001} and increases toward d0 as nu decreases;
//   - d0 equals M1+M2 to 1e-8 relative.
// Throws BadArgument on an empty or non-decreasing positive list.
std::vector<CheckResult> check_limits(const SystemParams& base,
                                      const std::vector<double>& nu_list,
                                      GridPtr grid, const SolveOptions& opts);

}  // namespace dcss
