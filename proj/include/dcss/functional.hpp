#pragma once
// The energy functional of the coupled system in Emden-Fowler coordinates,
// its exact discrete gradient, the component norms, and the two natural
// constraint residuals.
//
// For a pair (u,v) represented by profiles (w1,w2):
//   J(u,v) = 1/2 (||u||_l1^2 + ||v||_l2^2)
//            - omega/2* * Int (w1+)^{2*} + (w2+)^{2*} ds
//            - nu * omega * Int (w1+)^alpha (w2+)^beta ds,
// where ||u||_l^2 = omega * Int (w'^2 + mu^2 w^2) ds, mu^2 = Lambda - l,
// and x+ = max(x,0). Only positive parts enter the non-quadratic terms, so
// descent is driven toward nonnegative states and fractional exponents
// (e.g. alpha-1 = 2/3 at N=5) stay real.
//
// Discretization: the kinetic integral Int w'^2 ds is the fourth-order
// two-scale quadratic form
//   K(w) = [ 4*Sum_j (w_{j+1}-w_j)^2/h - Sum_j (w_{j+2}-w_j)^2/(4h) ] / 3,
// all other integrals use trapezoid weights (spectrally accurate for
// exponentially decaying profiles). The gradient returned here is the exact
// gradient of this discrete energy, expressed as an L^2 field (raw partial
// derivatives divided by the trapezoid weight) with the two endpoint entries
// zeroed: endpoints are Dirichlet data, not degrees of freedom.

#include <utility>

#include "dcss/core.hpp"

namespace dcss {

struct EnergyBreakdown {
  double norm1_sq = 0;  // ||u||_{lambda1}^2 (includes the sphere factor omega)
  double norm2_sq = 0;  // ||v||_{lambda2}^2
  double crit1 = 0;     // Int (w1+)^{2*} ds  (no omega)
  double crit2 = 0;     // Int (w2+)^{2*} ds
  double coupling = 0;  // Int (w1+)^alpha (w2+)^beta ds  (no omega)
  double total = 0;     // J = (norm1_sq+norm2_sq)/2 - omega*(crit1+crit2)/2* - nu*omega*coupling
};

// All five energy components plus the total. Throws GridMismatch.
EnergyBreakdown energy(const SystemParams& p, const StatePair& x);

// Exact gradient of the discrete energy as an L^2 field (see header comment).
// Throws GridMismatch.
StatePair gradient(const SystemParams& p, const StatePair& x);

// Natural constraint residuals:
//   G1 = ||u||_{l1}^2 - omega * Int (w1+)^{2*} + nu*alpha*(w1+)^alpha (w2+)^beta ds
//   G2 = ||v||_{l2}^2 - omega * Int (w2+)^{2*} + nu*beta *(w1+)^alpha (w2+)^beta ds
// Both vanish on the constraint set that carries every nontrivial solution.
std::pair<double, double> nehari_residuals(const SystemParams& p, const StatePair& x);

// ||u||_lambda^2 / |u|_{2*}^2 for a single profile; its infimum over nonzero
// profiles is the sharp constant S(lambda). Accepts lambda in [0, Lambda).
// Throws ZeroProfile, HardyOutOfRange, DimensionTooSmall.
double sobolev_quotient(int N, double lambda, const Profile& w);

// ---- building blocks shared with the closed-form and solver modules ----

// ||u||_lambda^2 = omega*(K(w) + mu^2 * Int_trap w^2). lambda in [0, Lambda).
double norm_lambda_sq(int N, double lambda, const Profile& w);

// Trapezoid integral of (w+)^p over the grid (no omega factor).
double lp_pos_integral(const Profile& w, double p);

// Trapezoid integral of (a+)^pa (b+)^pb (no omega factor).
double coupling_integral(const Profile& a, const Profile& b, double pa, double pb);

// The fourth-order kinetic quadratic form K(w) (see header comment).
double kinetic_form(const std::vector<double>& w, double h);

// Adds coeff * dK/dw_j to out[j] (exact partials of kinetic_form, all rows).
void add_kinetic_gradient(const std::vector<double>& w, double h, double coeff,
                          std::vector<double>& out);

}  // namespace dcss
