#include "dcss/nehari.hpp"

#include <cmath>

#include "dcss/functional.hpp"

namespace dcss {

namespace {

struct Constants {
  double A1, A2;  // component norms squared
  double B1, B2;  // omega * Int (wi+)^{2*}
  double W;       // omega * Int (w1+)^alpha (w2+)^beta
};

Constants constants_of(const SystemParams& p, const StatePair& x) {
  const EnergyBreakdown e = energy(p, x);
  return {e.norm1_sq, e.norm2_sq, e.crit1 * p.omega, e.crit2 * p.omega, e.coupling * p.omega};
}

double pair_residual(const SystemParams& p, const StatePair& x, double t, double s) {
  const auto [G1, G2] = nehari_residuals(p, apply_scaling(x, t, s));
  return std::max(std::abs(G1), std::abs(G2));
}

}  // namespace

StatePair apply_scaling(const StatePair& x, double t, double s) {
  StatePair y = x;
  for (double& v : y.w1.v) v *= t;
  for (double& v : y.w2.v) v *= s;
  return y;
}

SingleProjection project_single(const SystemParams& p, const StatePair& x) {
  require_pair(x);
  const Constants c = constants_of(p, x);
  if (c.A1 + c.A2 <= 0.0) throw ZeroProfile("cannot project the zero pair");
  // F = Int (w1+)^{2*} + 2* nu (w1+)^al (w2+)^be + (w2+)^{2*}, times omega.
  const double F = c.B1 + c.B2 + p.two_star * p.nu * c.W;
  if (!(F > 0.0)) {
    throw NotProjectable("nonpositive combined nonlinearity along the ray");
  }
  const double t = std::pow((c.A1 + c.A2) / F, 1.0 / (p.two_star - 2.0));
  return SingleProjection{t, apply_scaling(x, t, t)};
}

NehariScaling project_pair_pos(const SystemParams& p, const StatePair& x) {
  require_pair(x);
  if (!(p.nu > 0.0)) throw BadArgument("this projection handles nu > 0");
  const Constants c = constants_of(p, x);
  if (c.A1 <= 0.0 || c.A2 <= 0.0) throw ZeroProfile("both components must be nonzero");
  const double ts = p.two_star;

  if (std::abs(p.alpha - 2.0) < 1e-14 && std::abs(p.beta - 2.0) < 1e-14) {
    // The constraint system is linear in (t^2, s^2):
    //   B1 t^2 + 2 nu W s^2 = A1,
    //   2 nu W t^2 + B2 s^2 = A2.
    // The unique solution is the projection whenever both entries are
    // positive, for either sign of the determinant.
    const double det = c.B1 * c.B2 - 4.0 * p.nu * p.nu * c.W * c.W;
    if (std::abs(det) < 1e-13 * std::max(c.B1 * c.B2, 1e-300)) {
      // Degenerate system (e.g. proportional components at nu = 1/2): fall
      // back to the one-multiplier scaling and accept it if it already
      // satisfies both constraints.
      const SingleProjection sp = project_single(p, x);
      const auto [G1, G2] = nehari_residuals(p, sp.state);
      if (std::abs(G1) < 1e-9 * std::max(c.A1, 1.0) && std::abs(G2) < 1e-9 * std::max(c.A2, 1.0)) {
        return NehariScaling{sp.t, sp.t, std::max(std::abs(G1), std::abs(G2))};
      }
      throw Singular("degenerate two-multiplier system");
    }
    const double t2 = (c.B2 * c.A1 - 2.0 * p.nu * c.W * c.A2) / det;
    const double s2 = (c.B1 * c.A2 - 2.0 * p.nu * c.W * c.A1) / det;
    if (!(t2 > 0.0) || !(s2 > 0.0)) {
      throw NotProjectable("the two-multiplier system has no positive solution");
    }
    const double t = std::sqrt(t2), s = std::sqrt(s2);
    return NehariScaling{t, s, pair_residual(p, x, t, s)};
  }

  // General exponents: damped Newton on (ln t, ln s), initialized from the
  // decoupled single-component scalings.
  const auto F1 = [&](double t, double s) {
    return t * t * c.A1 - std::pow(t, ts) * c.B1 -
           p.nu * p.alpha * std::pow(t, p.alpha) * std::pow(s, p.beta) * c.W;
  };
  const auto F2 = [&](double t, double s) {
    return s * s * c.A2 - std::pow(s, ts) * c.B2 -
           p.nu * p.beta * std::pow(t, p.alpha) * std::pow(s, p.beta) * c.W;
  };
  const double scale = std::max(c.A1, c.A2);
  double lt = c.B1 > 0.0 ? std::log(c.A1 / c.B1) / (ts - 2.0) : 0.0;
  double ls = c.B2 > 0.0 ? std::log(c.A2 / c.B2) / (ts - 2.0) : 0.0;
  for (int it = 0; it < 100; ++it) {
    const double t = std::exp(lt), s = std::exp(ls);
    const double f1 = F1(t, s), f2 = F2(t, s);
    const double r0 = std::max(std::abs(f1), std::abs(f2));
    if (r0 < 1e-12 * scale) {
      return NehariScaling{t, s, pair_residual(p, x, t, s)};
    }
    const double cross = std::pow(t, p.alpha) * std::pow(s, p.beta) * c.W;
    // Derivatives wrt (ln t, ln s).
    const double j11 = 2.0 * t * t * c.A1 - ts * std::pow(t, ts) * c.B1 -
                       p.nu * p.alpha * p.alpha * cross;
    const double j12 = -p.nu * p.alpha * p.beta * cross;
    const double j21 = -p.nu * p.beta * p.alpha * cross;
    const double j22 = 2.0 * s * s * c.A2 - ts * std::pow(s, ts) * c.B2 -
                       p.nu * p.beta * p.beta * cross;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) throw Singular("singular Newton system");
    const double dx = -(j22 * f1 - j12 * f2) / det;
    const double dy = -(-j21 * f1 + j11 * f2) / det;
    const double n0 = std::hypot(f1, f2);
    double damp = 1.0;
    for (int bs = 0; bs < 40; ++bs) {
      const double fn1 = F1(std::exp(lt + damp * dx), std::exp(ls + damp * dy));
      const double fn2 = F2(std::exp(lt + damp * dx), std::exp(ls + damp * dy));
      if (std::hypot(fn1, fn2) < n0) break;
      damp *= 0.5;
    }
    lt += damp * dx;
    ls += damp * dy;
  }
  const double t = std::exp(lt), s = std::exp(ls);
  if (std::max(std::abs(F1(t, s)), std::abs(F2(t, s))) < 1e-9 * scale) {
    return NehariScaling{t, s, pair_residual(p, x, t, s)};
  }
  throw NotProjectable("Newton iteration did not reach the constraint set");
}

NehariScaling project_pair_neg(const SystemParams& p, const StatePair& x) {
  require_pair(x);
  if (!(p.nu < 0.0)) throw BadArgument("this projection handles nu < 0");
  const Constants cst = constants_of(p, x);
  if (cst.A1 <= 0.0 || cst.A2 <= 0.0) throw ZeroProfile("both components must be nonzero");
  const double ts = p.two_star, al = p.alpha, be = p.beta;
  const double A1 = cst.A1, A2 = cst.A2, B1 = cst.B1, B2 = cst.B2;
  const double C = std::abs(p.nu) * cst.W;  // repulsive coupling magnitude
  if (B1 <= 0.0 || B2 <= 0.0) throw NotProjectable("a component has no positive part");

  const double t0 = std::pow(A1 / B1, 1.0 / (ts - 2.0));
  const double s0 = std::pow(A2 / B2, 1.0 / (ts - 2.0));
  if (C < 1e-300) return NehariScaling{t0, s0, pair_residual(p, x, t0, s0)};

  // Existence condition, in log form to dodge overflow:
  //   B1^al B2^be > al^al be^be C^{2*}.
  if (al * std::log(B1) + be * std::log(B2) <=
      al * std::log(al) + be * std::log(be) + ts * std::log(C)) {
    throw ConditionFailed("repulsion too strong for a two-multiplier scaling");
  }

  // Solve in the ratio variable q = (s/t)^be. The first constraint gives
  //   t(q) = [A1 / (B1 - al C q)]^{1/(2*-2)}   (valid for q < qmax),
  // and the second becomes the scalar equation f(q) = 0 below. f > 0 as
  // q -> 0+ and f < 0 before qmax under the existence condition.
  const double qmax = B1 / (al * C);
  const auto t_of = [&](double q) { return std::pow(A1 / (B1 - al * C * q), 1.0 / (ts - 2.0)); };
  const auto f = [&](double q) {
    return A2 * std::pow(q, (2.0 - be) / be) +
           std::pow(t_of(q), ts - 2.0) * (be * C - B2 * std::pow(q, al / be));
  };

  double lo = std::pow(s0 / t0, be) * 1e-8;
  if (lo >= qmax) lo = qmax * 1e-8;
  for (int i = 0; i < 600 && !(f(lo) > 0.0); ++i) lo *= 0.5;
  if (!(f(lo) > 0.0)) throw NoBracket("no positive side found for the ratio equation");
  double hi = lo;
  bool bracketed = false;
  for (int i = 0; i < 600; ++i) {
    double next = hi * 10.0;
    if (next >= qmax) next = 0.5 * (hi + qmax);
    hi = next;
    if (f(hi) < 0.0) { bracketed = true; break; }
    if (qmax - hi < 1e-14 * qmax) break;
  }
  if (!bracketed) throw NoBracket("no sign change before the ratio bound");
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  const double q = std::sqrt(lo * hi);
  const double t = t_of(q);
  const double s = t * std::pow(q, 1.0 / be);
  return NehariScaling{t, s, pair_residual(p, x, t, s)};
}

}  // namespace dcss
