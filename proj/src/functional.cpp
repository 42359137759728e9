#include "dcss/functional.hpp"

#include <cmath>

namespace dcss {

namespace {

// Positive-part power (x+)^p. Fast paths for the small integer exponents that
// dominate the N=3 and N=4 cases; std::pow otherwise.
inline double pos_pow(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 4.0) return (x * x) * (x * x);
  if (p == 5.0) return (x * x) * (x * x) * x;
  if (p == 6.0) return (x * x * x) * (x * x * x);
  return std::pow(x, p);
}

void check_lambda(int N, double lambda) {
  const double Lam = hardy_constant(N);  // throws DimensionTooSmall
  if (!(lambda >= 0.0) || !(lambda < Lam)) {
    throw HardyOutOfRange("lambda must lie in [0, " + std::to_string(Lam) + ")");
  }
}

}  // namespace

double kinetic_form(const std::vector<double>& w, double h) {
  const int n = static_cast<int>(w.size());
  double K1 = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    const double d = w[j + 1] - w[j];
    K1 += d * d;
  }
  double K2 = 0.0;
  for (int j = 0; j + 2 < n; ++j) {
    const double d = w[j + 2] - w[j];
    K2 += d * d;
  }
  return (4.0 * (K1 / h) - K2 / (4.0 * h)) / 3.0;
}

void add_kinetic_gradient(const std::vector<double>& w, double h, double coeff,
                          std::vector<double>& out) {
  const int n = static_cast<int>(w.size());
  const double c1 = coeff * (4.0 / 3.0) * (2.0 / h);   // single-step part
  const double c2 = coeff * (1.0 / 3.0) * (1.0 / (2.0 * h));  // double-step part
  // Single-step differences.
  for (int j = 1; j + 1 < n; ++j) out[j] += c1 * (2.0 * w[j] - w[j - 1] - w[j + 1]);
  out[0] += c1 * (w[0] - w[1]);
  out[n - 1] += c1 * (w[n - 1] - w[n - 2]);
  // Double-step differences (subtracted in the two-scale combination).
  for (int j = 2; j + 2 < n; ++j) out[j] -= c2 * (2.0 * w[j] - w[j - 2] - w[j + 2]);
  out[0] -= c2 * (w[0] - w[2]);
  out[1] -= c2 * (w[1] - w[3]);
  out[n - 1] -= c2 * (w[n - 1] - w[n - 3]);
  out[n - 2] -= c2 * (w[n - 2] - w[n - 4]);
}

double norm_lambda_sq(int N, double lambda, const Profile& w) {
  check_lambda(N, lambda);
  const EFGrid& g = *w.grid;
  if (static_cast<int>(w.v.size()) != g.n) throw LengthMismatch("profile length != grid size");
  const double musq = hardy_constant(N) - lambda;
  double mass = 0.0;
  for (int j = 0; j < g.n; ++j) mass += g.trap[j] * w.v[j] * w.v[j];
  return sphere_area(N) * (kinetic_form(w.v, g.h) + musq * mass);
}

double lp_pos_integral(const Profile& w, double p) {
  const EFGrid& g = *w.grid;
  if (static_cast<int>(w.v.size()) != g.n) throw LengthMismatch("profile length != grid size");
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) acc += g.trap[j] * pos_pow(w.v[j], p);
  return acc;
}

double coupling_integral(const Profile& a, const Profile& b, double pa, double pb) {
  require_same_grid(a, b);
  const EFGrid& g = *a.grid;
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    acc += g.trap[j] * pos_pow(a.v[j], pa) * pos_pow(b.v[j], pb);
  }
  return acc;
}

EnergyBreakdown energy(const SystemParams& p, const StatePair& x) {
  require_pair(x);
  const EFGrid& g = *x.w1.grid;
  const double om = p.omega;
  const double mu1s = p.Lambda - p.lambda1;
  const double mu2s = p.Lambda - p.lambda2;
  double mass1 = 0.0, mass2 = 0.0, c1 = 0.0, c2 = 0.0, cp = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double tw = g.trap[j];
    const double a = x.w1.v[j];
    const double b = x.w2.v[j];
    mass1 += tw * a * a;
    mass2 += tw * b * b;
    c1 += tw * pos_pow(a, p.two_star);
    c2 += tw * pos_pow(b, p.two_star);
    cp += tw * pos_pow(a, p.alpha) * pos_pow(b, p.beta);
  }
  EnergyBreakdown e;
  e.norm1_sq = om * (kinetic_form(x.w1.v, g.h) + mu1s * mass1);
  e.norm2_sq = om * (kinetic_form(x.w2.v, g.h) + mu2s * mass2);
  e.crit1 = c1;
  e.crit2 = c2;
  e.coupling = cp;
  e.total = 0.5 * (e.norm1_sq + e.norm2_sq) - (c1 + c2) * om / p.two_star - p.nu * cp * om;
  return e;
}

StatePair gradient(const SystemParams& p, const StatePair& x) {
  require_pair(x);
  const EFGrid& g = *x.w1.grid;
  const int n = g.n;
  const double om = p.omega;
  const double mu1s = p.Lambda - p.lambda1;
  const double mu2s = p.Lambda - p.lambda2;
  StatePair G{zero_profile(x.w1.grid), zero_profile(x.w2.grid)};
  // Exact partial derivatives of the discrete energy.
  add_kinetic_gradient(x.w1.v, g.h, 0.5 * om, G.w1.v);
  add_kinetic_gradient(x.w2.v, g.h, 0.5 * om, G.w2.v);
  for (int j = 0; j < n; ++j) {
    const double tw = g.trap[j];
    const double a = x.w1.v[j];
    const double b = x.w2.v[j];
    const double cross_a = p.nu * p.alpha * pos_pow(a, p.alpha - 1.0) * pos_pow(b, p.beta);
    const double cross_b = p.nu * p.beta * pos_pow(a, p.alpha) * pos_pow(b, p.beta - 1.0);
    G.w1.v[j] += om * tw * (mu1s * a - pos_pow(a, p.two_star - 1.0) - cross_a);
    G.w2.v[j] += om * tw * (mu2s * b - pos_pow(b, p.two_star - 1.0) - cross_b);
  }
  // Raw partials -> L2 field; endpoints are Dirichlet data, not unknowns.
  for (int j = 0; j < n; ++j) {
    G.w1.v[j] /= g.trap[j];
    G.w2.v[j] /= g.trap[j];
  }
  G.w1.v[0] = G.w1.v[n - 1] = 0.0;
  G.w2.v[0] = G.w2.v[n - 1] = 0.0;
  return G;
}

std::pair<double, double> nehari_residuals(const SystemParams& p, const StatePair& x) {
  const EnergyBreakdown e = energy(p, x);
  const double G1 = e.norm1_sq - (e.crit1 + p.nu * p.alpha * e.coupling) * p.omega;
  const double G2 = e.norm2_sq - (e.crit2 + p.nu * p.beta * e.coupling) * p.omega;
  return {G1, G2};
}

double sobolev_quotient(int N, double lambda, const Profile& w) {
  check_lambda(N, lambda);
  const double ts = critical_exponent(N);
  double sup = 0.0;
  for (double v : w.v) sup = std::max(sup, std::abs(v));
  if (sup == 0.0) throw ZeroProfile("quotient undefined for the zero profile");
  const double num = norm_lambda_sq(N, lambda, w);
  Profile aw = w;  // the denominator uses the full modulus, not the positive part
  for (double& v : aw.v) v = std::abs(v);
  const double den = lp_pos_integral(aw, ts) * sphere_area(N);
  return num / std::pow(den, 2.0 / ts);
}

}  // namespace dcss
