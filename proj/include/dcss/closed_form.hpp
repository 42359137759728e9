#pragma once
// Exact solutions and exact constants of the doubly critical Hardy system:
// the explicit bubble profiles, the sharp Sobolev-Hardy constants, the
// coupling-strength thresholds, the synchronized-solution algebra, and the
// two-bubble mountain-pass level. These are the oracles every numerical
// result is checked against.

#include <optional>
#include <vector>

#include "dcss/core.hpp"

namespace dcss {

// ---------------------------------------------------------------------------
// Bubbles
// ---------------------------------------------------------------------------

// Identifies one member of the bubble family: which component it belongs to,
// its dilation parameter mu_scale > 0, and the equivalent Emden-Fowler
// translation center_s = ln(mu_scale).
struct BubbleSpec {
  int component = 1;     // 1 or 2
  double mu_scale = 1;   // dilation parameter, > 0
  double center_s = 0;   // translation in s; ln(mu_scale) for a pure dilation

  static BubbleSpec from_dilation(int component, double mu_scale);
  static BubbleSpec at_center(int component, double center_s);
};

// a(lambda) = (N-2)/2 - sqrt(Lambda - lambda), the singular-origin exponent
// of the radial bubble r^{-a}-type behavior. lambda in [0, Lambda).
double a_lambda(int N, double lambda);

// The bubble in Emden-Fowler coordinates:
//   w(s) = A * (2 cosh(2 mu (s - center_s)/(N-2)))^{-(N-2)/2},
//   A = [4 N mu^2/(N-2)]^{(N-2)/4},  mu = sqrt(Lambda - lambda).
// Solves -w'' + mu^2 w = w^{2*-1} exactly; at N=4, lambda=0 it is the
// standard instanton 2*sqrt(2)/(1+r^2) written radially.
Profile bubble_ef_profile(int N, double lambda, const BubbleSpec& spec, GridPtr grid);

// ---------------------------------------------------------------------------
// Sharp constants
// ---------------------------------------------------------------------------

// The sharp Sobolev constant S of D^{1,2}(R^N) -> L^{2*}, computed as the
// Rayleigh quotient of the exact lambda=0 bubble on a high-resolution
// internal grid; cached per N. (Unit tests compare it against the closed
// form pi*N*(N-2)*(Gamma(N/2)/Gamma(N))^{2/N}.)
double sobolev_constant(int N);

// Same quotient evaluated on a caller-chosen grid (resolution studies).
double sobolev_constant_on_grid(int N, double L, int n);

// S(lambda) = (1 - lambda/Lambda)^{(N-1)/N} * S, the sharp constant of the
// Hardy-Sobolev inequality with coefficient lambda in [0, Lambda).
double s_lambda(int N, double lambda);

// Least energy of the single-component problem at coefficient lambda:
// M(lambda) = S(lambda)^{N/2} / N.
double single_component_level(int N, double lambda);

// ---------------------------------------------------------------------------
// Coupling thresholds
// ---------------------------------------------------------------------------

// nu0 = (1/2*) [ (1 + max{mu1^2/mu2^2, mu2^2/mu1^2})^{2*/2} - 2 ].
// For nu > nu0 the coupled least energy drops strictly below both
// single-component levels. lambda_i in [0, Lambda).
double nu0(int N, double lambda1, double lambda2);

// N=4 only. nu1 = (1/2) min{ m1/m2, m2/m1, (m1 m2)^{3/4}/(m1^{3/2}+m2^{3/2}) }
// with m_i = 1 - lambda_i; below this threshold (and above 0) a positive
// coupled ground state still exists at N=4. lambda_i in (0,1).
double nu1(double lambda1, double lambda2);

// ---------------------------------------------------------------------------
// Synchronized-solution algebra (k-l system) and profiles
// ---------------------------------------------------------------------------

struct KLSolution {
  double k = 0;
  double l = 0;
  double residual = 0;     // max abs residual of the two equations
  bool degenerate = false; // another root coincides within ~1e-6
};

// All positive roots (k,l) of
//   k^{p-1} + p nu k^{p/2-1} l^{p/2} = 1,
//   p nu k^{p/2} l^{p/2-1} + l^{p-1} = 1,      p = 2*/2 = N/(N-2),
// found by a log-uniform sweep in k with a nested monotone solve in l,
// bisection refinement, Newton polishing, and (l,k)-mirror completion.
// The symmetric root k = l = (1+p nu)^{-1/(p-1)} is always present.
// Requires N >= 5 (so p < 2) and nu > 0; throws OutOfRegime otherwise.
std::vector<KLSolution> solve_kl(int N, double nu);

// The root of minimal k (the one that builds the least-energy synchronized
// pair). Throws NoRoot on an empty list.
KLSolution k0_selection(const std::vector<KLSolution>& roots);

// The closed-form synchronized state:
//   N=4, alpha=beta=2, nu != 1/2 : ((1+2nu)^{-1/2} w, (1+2nu)^{-1/2} w)
//   N=4, alpha=beta=2, nu == 1/2 : (sin(theta) w, cos(theta) w), theta from
//                                  the caller (a one-parameter family)
//   N>=5, alpha=beta=2*/2, nu >= 2/N : (sqrt(k0) w, sqrt(l0) w)
// with w the common bubble at lambda1 = lambda2. Throws OutOfRegime outside
// these hypotheses, BadArgument if theta is needed but absent.
StatePair synchronized_pair(const SystemParams& p, GridPtr grid,
                            std::optional<double> theta = std::nullopt);

// ---------------------------------------------------------------------------
// Two-bubble mountain-pass level
// ---------------------------------------------------------------------------

// d_nu = max over the rectangle [0,t1]^2 of the two-bubble surface
//   (t,s) -> t^2 A1/2 + s^2 A2/2 - (t^{2*} C1 + s^{2*} C2)/2* - nu t^al s^be W,
// where A_i, C_i, W are the norm/critical/coupling constants of the two
// centered bubbles and t1 > 1 is the smallest scaling at which both
// single-bubble energies fall below min{M1,M2}/4. The mesh maximizer
// (resolution x resolution scan) is polished by a damped 2x2 Newton step.
// At nu = 0 this equals M1 + M2, attained at (1,1); it is strictly smaller
// for every nu > 0. Requires nu >= 0.
double mountain_pass_level(const SystemParams& p, GridPtr grid, int resolution = 401);

}  // namespace dcss
