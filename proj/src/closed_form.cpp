#include "dcss/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "dcss/functional.hpp"

namespace dcss {

namespace {

void check_lambda_in(int N, double lambda, bool allow_zero) {
  const double Lam = hardy_constant(N);
  const bool ok = allow_zero ? (lambda >= 0.0 && lambda < Lam) : (lambda > 0.0 && lambda < Lam);
  if (!ok) {
    throw HardyOutOfRange("lambda = " + std::to_string(lambda) + " not in " +
                          (allow_zero ? "[0, " : "(0, ") + std::to_string(Lam) + ")");
  }
}

}  // namespace

BubbleSpec BubbleSpec::from_dilation(int component, double mu_scale) {
  if (!(mu_scale > 0.0)) throw BadArgument("bubble dilation parameter must be positive");
  if (component != 1 && component != 2) throw BadArgument("bubble component must be 1 or 2");
  return BubbleSpec{component, mu_scale, std::log(mu_scale)};
}

BubbleSpec BubbleSpec::at_center(int component, double center_s) {
  if (component != 1 && component != 2) throw BadArgument("bubble component must be 1 or 2");
  return BubbleSpec{component, std::exp(center_s), center_s};
}

double a_lambda(int N, double lambda) {
  check_lambda_in(N, lambda, /*allow_zero=*/true);
  return (N - 2) / 2.0 - std::sqrt(hardy_constant(N) - lambda);
}

Profile bubble_ef_profile(int N, double lambda, const BubbleSpec& spec, GridPtr grid) {
  check_lambda_in(N, lambda, /*allow_zero=*/true);
  if (!grid) throw BadGrid("null grid");
  const double mu = std::sqrt(hardy_constant(N) - lambda);
  const double k = 2.0 * mu / (N - 2);
  const double m = (N - 2) / 2.0;
  const double A = std::pow(4.0 * N * mu * mu / (N - 2), (N - 2) / 4.0);
  Profile w = zero_profile(grid);
  for (int j = 0; j < grid->n; ++j) {
    w.v[j] = A * std::pow(2.0 * std::cosh(k * (grid->s[j] - spec.center_s)), -m);
  }
  return w;
}

double sobolev_constant_on_grid(int N, double L, int n) {
  GridPtr g = make_grid(L, n);
  const Profile w = bubble_ef_profile(N, 0.0, BubbleSpec::at_center(1, 0.0), g);
  return sobolev_quotient(N, 0.0, w);
}

double sobolev_constant(int N) {
  if (N < 3) throw DimensionTooSmall("N = " + std::to_string(N) + ", need N >= 3");
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  // The lambda=0 profile decays like exp(-(N-2)/2 |s|); L=30 keeps truncation
  // below ~1e-13 even at N=3, and h=0.005 puts the quadrature error near 1e-11.
  const double S = sobolev_constant_on_grid(N, 30.0, 12001);
  cache.emplace(N, S);
  return S;
}

double s_lambda(int N, double lambda) {
  check_lambda_in(N, lambda, /*allow_zero=*/true);
  const double Lam = hardy_constant(N);
  return std::pow(1.0 - lambda / Lam, (N - 1.0) / N) * sobolev_constant(N);
}

double single_component_level(int N, double lambda) {
  return std::pow(s_lambda(N, lambda), N / 2.0) / N;
}

double nu0(int N, double lambda1, double lambda2) {
  check_lambda_in(N, lambda1, /*allow_zero=*/true);
  check_lambda_in(N, lambda2, /*allow_zero=*/true);
  const double Lam = hardy_constant(N);
  const double m1 = Lam - lambda1;
  const double m2 = Lam - lambda2;
  const double ratio = std::max(m1 / m2, m2 / m1);
  const double ts = critical_exponent(N);
  return (std::pow(1.0 + ratio, ts / 2.0) - 2.0) / ts;
}

double nu1(double lambda1, double lambda2) {
  for (double l : {lambda1, lambda2}) {
    if (!(l > 0.0) || !(l < 1.0)) {
      throw HardyOutOfRange("this threshold is defined for N = 4 with lambda in (0, 1)");
    }
  }
  const double m1 = 1.0 - lambda1;
  const double m2 = 1.0 - lambda2;
  const double third =
      std::pow(m1 * m2, 0.75) / (std::pow(m1, 1.5) + std::pow(m2, 1.5));
  return 0.5 * std::min({m1 / m2, m2 / m1, third});
}

// ---------------------------------------------------------------------------
// k-l system
// ---------------------------------------------------------------------------

namespace {

struct KLSystem {
  double p;   // 2*/2, in (1,2) for N >= 5
  double pn;  // p * nu

  double eq1(double k, double l) const {
    return std::pow(k, p - 1.0) + pn * std::pow(k, p / 2.0 - 1.0) * std::pow(l, p / 2.0) - 1.0;
  }
  double eq2(double k, double l) const {
    return pn * std::pow(k, p / 2.0) * std::pow(l, p / 2.0 - 1.0) + std::pow(l, p - 1.0) - 1.0;
  }
  double residual(double k, double l) const {
    return std::max(std::abs(eq1(k, l)), std::abs(eq2(k, l)));
  }

  // Roots in l of eq2 for fixed k. eq2 is U-shaped in l (the first term
  // decreases, the second increases); its minimizer has the closed form
  // l* = k * ((1-p/2) pn / (p-1))^{2/p}. Returns 0, 1, or 2 roots (ascending).
  std::vector<double> l_roots_for_k(double k) const {
    std::vector<double> out;
    const double lstar = k * std::pow((1.0 - p / 2.0) * pn / (p - 1.0), 2.0 / p);
    const double fmin = eq2(k, lstar);
    if (fmin > 0.0) return out;
    // Lower root: eq2 -> +inf as l -> 0+.
    {
      double lo = lstar, hi = lstar;
      while (eq2(k, lo) < 0.0) lo /= 2.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (eq2(k, mid) < 0.0) hi = mid; else lo = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    // Upper root: eq2 -> +inf as l -> inf.
    {
      double lo = lstar, hi = lstar;
      while (eq2(k, hi) < 0.0) hi *= 2.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (eq2(k, mid) < 0.0) lo = mid; else hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    return out;
  }

  // Damped Newton on (ln k, ln l); returns true on success.
  bool polish(double& k, double& l) const {
    for (int it = 0; it < 100; ++it) {
      const double f1 = eq1(k, l), f2 = eq2(k, l);
      const double r0 = std::max(std::abs(f1), std::abs(f2));
      if (r0 < 1e-15) return true;
      const double d11 = (p - 1.0) * std::pow(k, p - 2.0) +
                         pn * (p / 2.0 - 1.0) * std::pow(k, p / 2.0 - 2.0) * std::pow(l, p / 2.0);
      const double d12 = pn * (p / 2.0) * std::pow(k, p / 2.0 - 1.0) * std::pow(l, p / 2.0 - 1.0);
      const double d21 = pn * (p / 2.0) * std::pow(k, p / 2.0 - 1.0) * std::pow(l, p / 2.0 - 1.0);
      const double d22 = pn * (p / 2.0 - 1.0) * std::pow(k, p / 2.0) * std::pow(l, p / 2.0 - 2.0) +
                         (p - 1.0) * std::pow(l, p - 2.0);
      // Jacobian wrt (ln k, ln l).
      const double j11 = d11 * k, j12 = d12 * l, j21 = d21 * k, j22 = d22 * l;
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) return r0 < 1e-12;
      double dx = -(j22 * f1 - j12 * f2) / det;
      double dy = -(-j21 * f1 + j11 * f2) / det;
      double damp = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 40; ++ls) {
        const double kn = k * std::exp(damp * dx);
        const double ln_ = l * std::exp(damp * dy);
        if (residual(kn, ln_) < r0) {
          k = kn; l = ln_; moved = true; break;
        }
        damp *= 0.5;
      }
      if (!moved) return r0 < 1e-12;
    }
    return residual(k, l) < 1e-12;
  }
};

}  // namespace

std::vector<KLSolution> solve_kl(int N, double nu) {
  if (N < 5) {
    throw OutOfRegime("the k-l synchronization system needs N >= 5 (so 2*/2 < 2)");
  }
  if (!(nu > 0.0)) throw OutOfRegime("the k-l synchronization system needs nu > 0");
  const KLSystem sys{N / (N - 2.0), (N / (N - 2.0)) * nu};
  const double p = sys.p;

  std::vector<std::pair<double, double>> cand;
  // The symmetric root is always present: k = l = (1 + p nu)^{-1/(p-1)}.
  const double ksym = std::pow(1.0 + sys.pn, -1.0 / (p - 1.0));
  cand.emplace_back(ksym, ksym);

  // Log-uniform sweep in k; per branch (lower/upper l-root), bracket sign
  // changes of the first equation's residual and bisect.
  constexpr int kSweep = 2000;
  const double lo_k = 1e-6;
  double prev_k[2] = {0, 0};
  double prev_r[2] = {0, 0};
  bool have_prev[2] = {false, false};
  for (int i = 0; i < kSweep; ++i) {
    const double k = lo_k * std::pow(1.0 / lo_k, static_cast<double>(i) / (kSweep - 1));
    const auto ls = sys.l_roots_for_k(k);
    for (std::size_t b = 0; b < 2; ++b) {
      if (b >= ls.size()) { have_prev[b] = false; continue; }
      const double r = sys.eq1(k, ls[b]);
      if (have_prev[b] && prev_r[b] * r < 0.0) {
        double a = prev_k[b], c = k;
        double ra = prev_r[b];
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + c);
          const auto lm = sys.l_roots_for_k(mid);
          if (b >= lm.size()) break;
          const double rm = sys.eq1(mid, lm[b]);
          if (ra * rm < 0.0) { c = mid; } else { a = mid; ra = rm; }
          if (c - a < 1e-14 * std::max(1.0, c)) break;
        }
        const double kk = 0.5 * (a + c);
        const auto lm = sys.l_roots_for_k(kk);
        if (b < lm.size()) cand.emplace_back(kk, lm[b]);
      }
      prev_k[b] = k; prev_r[b] = r; have_prev[b] = true;
    }
  }

  // Polish, keep the good ones, and complete with (l,k) mirrors: the system
  // maps to itself under swapping the variables together with the equations.
  std::vector<std::pair<double, double>> polished;
  for (auto [k, l] : cand) {
    if (sys.polish(k, l) && k > 0.0 && l > 0.0) {
      polished.emplace_back(k, l);
      polished.emplace_back(l, k);
    }
  }
  std::sort(polished.begin(), polished.end());
  std::vector<KLSolution> roots;
  for (const auto& [k, l] : polished) {
    bool dup = false;
    for (const auto& r : roots) {
      if (std::abs(r.k - k) < 1e-8 && std::abs(r.l - l) < 1e-8) { dup = true; break; }
    }
    if (dup) continue;
    KLSolution sol;
    sol.k = k;
    sol.l = l;
    sol.residual = sys.residual(k, l);
    if (sol.residual < 1e-12) roots.push_back(sol);
  }
  if (roots.empty()) throw NoRoot("no valid root survived polishing (solver failure)");
  // Flag near-coincident roots (tangency at the nu = 2/N transition).
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i].k - roots[j].k) < 1e-6 && std::abs(roots[i].l - roots[j].l) < 1e-6) {
        roots[i].degenerate = roots[j].degenerate = true;
      }
    }
  }
  return roots;
}

KLSolution k0_selection(const std::vector<KLSolution>& roots) {
  if (roots.empty()) throw NoRoot("empty root list");
  const KLSolution* best = &roots.front();
  for (const auto& r : roots) {
    if (r.k < best->k) best = &r;
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Synchronized states
// ---------------------------------------------------------------------------

StatePair synchronized_pair(const SystemParams& p, GridPtr grid, std::optional<double> theta) {
  if (p.lambda1 != p.lambda2) {
    throw OutOfRegime("synchronized states require equal Hardy coefficients");
  }
  const Profile w = bubble_ef_profile(p.N, p.lambda1, BubbleSpec::at_center(1, 0.0), grid);
  double c1 = 0, c2 = 0;
  if (p.N == 4) {
    if (std::abs(p.alpha - 2.0) > 1e-12 || std::abs(p.beta - 2.0) > 1e-12) {
      throw OutOfRegime("the N = 4 synchronized family needs alpha = beta = 2");
    }
    if (p.nu == 0.5) {
      if (!theta) {
        throw BadArgument("nu = 1/2 is a one-parameter family: supply theta");
      }
      c1 = std::sin(*theta);
      c2 = std::cos(*theta);
    } else {
      if (p.nu <= -0.5) throw OutOfRegime("need 1 + 2 nu > 0 for the synchronized amplitude");
      c1 = c2 = 1.0 / std::sqrt(1.0 + 2.0 * p.nu);
    }
  } else if (p.N >= 5) {
    const double half = p.two_star / 2.0;
    if (std::abs(p.alpha - half) > 1e-12 || std::abs(p.beta - half) > 1e-12) {
      throw OutOfRegime("the N >= 5 synchronized family needs alpha = beta = 2*/2");
    }
    if (!(p.nu >= 2.0 / p.N)) {
      throw OutOfRegime("synchronization of the ground state needs nu >= 2/N here");
    }
    const KLSolution kl = k0_selection(solve_kl(p.N, p.nu));
    c1 = std::sqrt(kl.k);
    c2 = std::sqrt(kl.l);
  } else {
    throw OutOfRegime("no synchronized closed form at N = 3");
  }
  StatePair out{w, w};
  for (double& v : out.w1.v) v *= c1;
  for (double& v : out.w2.v) v *= c2;
  return out;
}

// ---------------------------------------------------------------------------
// Two-bubble mountain-pass level
// ---------------------------------------------------------------------------

double mountain_pass_level(const SystemParams& p, GridPtr grid, int resolution) {
  if (!(p.nu >= 0.0)) throw BadArgument("the two-bubble level is defined for nu >= 0");
  if (resolution < 2) throw BadArgument("resolution must be >= 2");
  const Profile z1 = bubble_ef_profile(p.N, p.lambda1, BubbleSpec::at_center(1, 0.0), grid);
  const Profile z2 = bubble_ef_profile(p.N, p.lambda2, BubbleSpec::at_center(2, 0.0), grid);
  const double A1 = norm_lambda_sq(p.N, p.lambda1, z1);
  const double A2 = norm_lambda_sq(p.N, p.lambda2, z2);
  const double ts = p.two_star;
  const double C1 = lp_pos_integral(z1, ts) * p.omega;
  const double C2 = lp_pos_integral(z2, ts) * p.omega;
  const double W = coupling_integral(z1, z2, p.alpha, p.beta) * p.omega;

  const auto I1 = [&](double t) { return t * t * A1 / 2.0 - std::pow(t, ts) * C1 / ts; };
  const auto I2 = [&](double t) { return t * t * A2 / 2.0 - std::pow(t, ts) * C2 / ts; };
  const double Mmin = std::min(I1(1.0), I2(1.0));

  // Smallest t > 1 with both single-bubble energies <= Mmin/4. Both energies
  // peak at t = 1 and decrease monotonically to -inf beyond it.
  const auto excess = [&](double t) { return std::max(I1(t), I2(t)) - Mmin / 4.0; };
  double hi = 2.0;
  while (excess(hi) > 0.0) hi *= 1.5;
  double lo = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) lo = mid; else hi = mid;
  }
  const double t1 = hi;

  const auto surf = [&](double t, double s) {
    return t * t * A1 / 2.0 + s * s * A2 / 2.0 - (std::pow(t, ts) * C1 + std::pow(s, ts) * C2) / ts -
           p.nu * std::pow(t, p.alpha) * std::pow(s, p.beta) * W;
  };
  double best = -std::numeric_limits<double>::infinity();
  double bt = 0, bs = 0;
  const double step = t1 / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double t = i * step;
    for (int j = 0; j < resolution; ++j) {
      const double s = j * step;
      const double v = surf(t, s);
      if (v > best) { best = v; bt = t; bs = s; }
    }
  }

  // Damped Newton polish of the interior maximizer: the mesh alone misses the
  // true critical point by O(step^2) in value, which matters at the 1e-8
  // tolerances of the nu = 0 identity.
  if (bt > 0.0 && bs > 0.0) {
    double t = bt, s = bs, f = surf(bt, bs);
    const double scale = std::max(A1, A2);
    for (int it = 0; it < 50; ++it) {
      const double gt = t * A1 - std::pow(t, ts - 1.0) * C1 -
                        p.nu * p.alpha * std::pow(t, p.alpha - 1.0) * std::pow(s, p.beta) * W;
      const double gs = s * A2 - std::pow(s, ts - 1.0) * C2 -
                        p.nu * p.beta * std::pow(t, p.alpha) * std::pow(s, p.beta - 1.0) * W;
      if (std::max(std::abs(gt), std::abs(gs)) < 1e-14 * scale) break;
      const double htt = A1 - (ts - 1.0) * std::pow(t, ts - 2.0) * C1 -
                         p.nu * p.alpha * (p.alpha - 1.0) * std::pow(t, p.alpha - 2.0) *
                             std::pow(s, p.beta) * W;
      const double hss = A2 - (ts - 1.0) * std::pow(s, ts - 2.0) * C2 -
                         p.nu * p.beta * (p.beta - 1.0) * std::pow(t, p.alpha) *
                             std::pow(s, p.beta - 2.0) * W;
      const double hts = -p.nu * p.alpha * p.beta * std::pow(t, p.alpha - 1.0) *
                         std::pow(s, p.beta - 1.0) * W;
      const double det = htt * hss - hts * hts;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double dt = -(hss * gt - hts * gs) / det;
      const double ds = -(-hts * gt + htt * gs) / det;
      double damp = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 30; ++ls) {
        const double tn = t + damp * dt;
        const double sn = s + damp * ds;
        if (tn > 0.0 && sn > 0.0 && tn <= t1 && sn <= t1) {
          const double fn = surf(tn, sn);
          if (fn >= f) { t = tn; s = sn; f = fn; moved = true; break; }
        }
        damp *= 0.5;
      }
      if (!moved) break;
    }
    best = std::max(best, f);
  }
  return best;
}

}  // namespace dcss
