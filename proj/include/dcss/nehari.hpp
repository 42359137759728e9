#pragma once
// Scaling projections onto the constraint sets of the coupled system:
//  - project_single: one multiplier t applied to both components (the weaker
//    one-constraint set; its infimum can be attained by semitrivial states);
//  - project_pair_pos / project_pair_neg: a multiplier per component (t,s)
//    landing on the two-constraint set that carries every nontrivial
//    solution, split by the sign of the coupling strength.

#include "dcss/core.hpp"

namespace dcss {

struct NehariScaling {
  double t = 0;        // multiplier on the first component, > 0
  double s = 0;        // multiplier on the second component, > 0
  double residual = 0; // max of both constraint residuals after scaling
};

struct SingleProjection {
  double t = 0;        // common multiplier, > 0
  StatePair state;     // (t w1, t w2)
};

// Closed-form one-multiplier projection (by homogeneity):
//   t = [ (||u||^2 + ||v||^2) / (omega * Int F) ]^{1/(2*-2)},
//   F = (w1+)^{2*} + 2* nu (w1+)^alpha (w2+)^beta + (w2+)^{2*}.
// The scaled pair satisfies J'(tu,tv)(tu,tv) = 0 and maximizes J along the
// ray. Throws NotProjectable when Int F <= 0 (both positive parts vanish, or
// strongly negative coupling), ZeroProfile on the zero pair.
SingleProjection project_single(const SystemParams& p, const StatePair& x);

// Two-multiplier projection for nu > 0. At N=4, alpha=beta=2 the constraint
// system is linear in (t^2, s^2) and solved exactly (accepted iff both
// entries are positive); for general exponents a damped Newton iteration on
// (ln t, ln s) starts from the decoupled single-component scalings.
// Throws NotProjectable (no positive solution / Newton failure), Singular
// (degenerate linear system), ZeroProfile (a component vanishes).
NehariScaling project_pair_pos(const SystemParams& p, const StatePair& x);

// Two-multiplier projection for nu < 0. Solved in the ratio variable
// q = (s/t)^beta:  t(q) = [A1/(B1 - alpha |nu| W q)]^{1/(2*-2)} turns the
// system into one scalar root-find that stays well conditioned as the
// coupling integral vanishes (it limits to the decoupled scalings).
// Requires the existence condition
//   B1^alpha B2^beta > alpha^alpha beta^beta (|nu| W)^{2*}
// (checked in log form); throws ConditionFailed when it does not hold,
// NoBracket if no sign change appears before the ratio bound, ZeroProfile.
NehariScaling project_pair_neg(const SystemParams& p, const StatePair& x);

// Applies a scaling to a pair: (t w1, s w2).
StatePair apply_scaling(const StatePair& x, double t, double s);

}  // namespace dcss
