#pragma once
// Constrained energy minimization: preconditioned projected gradient descent
// over the one-constraint set (quotient level) and the two-constraint set
// (least energy among fully nontrivial states), with multistart, recentering,
// and dichotomy detection.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dcss/core.hpp"

namespace dcss {

struct SolveOptions {
  int max_iters = 5000;
  double grad_tol = 1e-6;        // convergence: preconditioned-descent gradient L2 norm
  double step_init = 1.0;        // first trial step (warm-started afterwards)
  double backtrack = 0.5;        // Armijo backtracking factor
  double armijo_c = 1e-4;        // sufficient-decrease constant
  bool recenter = true;          // integer-cell shift of argmax(w1^2+w2^2) to s=0
  std::vector<double> separations = {4, 6, 8, 10, 12};  // multistart two-bubble offsets
  double dichotomy_threshold = -1;  // component-peak separation in s; <0 -> 0.6*L
  bool record_history = false;   // keep the per-iteration energy sequence
};

enum class Classification {
  Coupled,           // both components genuinely nontrivial
  SemitrivialFirst,  // second component vanished: state ~ (u, 0)
  SemitrivialSecond, // first component vanished: state ~ (0, v)
  Dichotomizing,     // component peaks separated beyond the threshold while
                     // the energy was still decreasing (infimum not attained)
};

const char* to_string(Classification c);

struct SolveReport {
  StatePair state;
  double energy = 0;
  Classification classification = Classification::Coupled;
  std::pair<double, double> nehari_residuals{0, 0};
  double grad_norm = 0;
  int iterations = 0;
  bool converged = false;
  // Fitted angle of the degenerate one-parameter family (N=4, equal Hardy
  // coefficients, nu = 1/2); NaN outside that regime.
  double theta = std::numeric_limits<double>::quiet_NaN();
  int start_index = -1;              // winning start (-1: caller-supplied init)
  std::string status;                // "converged", "stall", "dichotomizing", ...
  std::vector<std::string> start_log; // one line per multistart run
  std::vector<double> energy_history; // filled when options.record_history
};

// Minimizes J over the one-constraint set: each iterate is renormalized by
// project_single, stepped along the preconditioned negative gradient with
// Armijo backtracking, and recentered. On convergence the energy equals the
// quotient level c'. Classification turns Semitrivial* when the smaller
// component norm falls below 1e-6 of the larger.
SolveReport minimize_quotient(const SystemParams& p, const StatePair& init,
                              const SolveOptions& opts);

// Minimizes J over the two-constraint set with both components forced
// nontrivial. Starts from the co-centered bubble pair plus one two-bubble
// pair per entry of options.separations; returns the lowest-energy converged
// run (if none converged, the lowest-energy completed run). Per-start
// projection failures are recorded in start_log; AllStartsFailed is thrown
// only if no start produced a report. Requires nu != 0 (BadArgument).
SolveReport minimize_nehari(const SystemParams& p, GridPtr grid,
                            const SolveOptions& opts);

// Independent minimize_nehari solves, one per coupling strength, on a shared
// grid. Entries may run on a worker pool (workers >= 1; numerics of each
// entry are serial, so results are identical for any worker count). Results
// are ordered like nu_list. Throws BadArgument on an empty list; per-entry
// solver errors are recorded in the entry's status/start_log and scanning
// continues.
std::vector<SolveReport> scan(const SystemParams& base,
                              const std::vector<double>& nu_list, GridPtr grid,
                              const SolveOptions& opts, int workers = 1);

}  // namespace dcss
