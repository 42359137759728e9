#include "dcss/minimize.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "dcss/closed_form.hpp"
#include "dcss/functional.hpp"
#include "dcss/nehari.hpp"

namespace dcss {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Coupled: return "coupled";
    case Classification::SemitrivialFirst: return "semitrivial-first";
    case Classification::SemitrivialSecond: return "semitrivial-second";
    case Classification::Dichotomizing: return "dichotomizing";
  }
  return "unknown";
}

namespace {

double trap_norm(const EFGrid& g, const StatePair& f) {
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    acc += g.trap[j] * (f.w1.v[j] * f.w1.v[j] + f.w2.v[j] * f.w2.v[j]);
  }
  return std::sqrt(acc);
}

double trap_inner(const EFGrid& g, const StatePair& a, const StatePair& b) {
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    acc += g.trap[j] * (a.w1.v[j] * b.w1.v[j] + a.w2.v[j] * b.w2.v[j]);
  }
  return acc;
}

// Solves (musq - D2) y = rhs with the 3-point Laplacian and Dirichlet ends
// (Thomas algorithm). This inverse smooths the stiff high-frequency part of
// the gradient; without it plain descent needs ~h^-2 more iterations.
void solve_helmholtz(const EFGrid& g, double musq, const std::vector<double>& rhs,
                     std::vector<double>& y, std::vector<double>& cp, std::vector<double>& dp) {
  const int m = g.n - 2;
  const double off = -1.0 / (g.h * g.h);
  const double diag = musq + 2.0 / (g.h * g.h);
  cp.resize(m);
  dp.resize(m);
  double denom = diag;
  cp[0] = off / denom;
  dp[0] = rhs[1] / denom;
  for (int i = 1; i < m; ++i) {
    denom = diag - off * cp[i - 1];
    cp[i] = off / denom;
    dp[i] = (rhs[i + 1] - off * dp[i - 1]) / denom;
  }
  y.assign(g.n, 0.0);
  y[m] = dp[m - 1];
  for (int i = m - 2; i >= 0; --i) y[i + 1] = dp[i] - cp[i] * y[i + 2];
}

int argmax_abs(const std::vector<double>& v) {
  int best = 0;
  double bv = std::abs(v[0]);
  for (int j = 1; j < static_cast<int>(v.size()); ++j) {
    if (std::abs(v[j]) > bv) { bv = std::abs(v[j]); best = j; }
  }
  return best;
}

void shift_in_place(std::vector<double>& v, int sh) {
  const int n = static_cast<int>(v.size());
  std::vector<double> out(n, 0.0);
  if (sh > 0) {
    for (int j = 0; j + sh < n; ++j) out[j] = v[j + sh];
  } else {
    for (int j = -sh; j < n; ++j) out[j] = v[j + sh];
  }
  v.swap(out);
}

// Integer-cell shift placing argmax(w1^2 + w2^2) at s = 0.
void recenter(StatePair& x) {
  const int n = static_cast<int>(x.w1.v.size());
  int idx = 0;
  double bv = -1.0;
  for (int j = 0; j < n; ++j) {
    const double m = x.w1.v[j] * x.w1.v[j] + x.w2.v[j] * x.w2.v[j];
    if (m > bv) { bv = m; idx = j; }
  }
  const int sh = idx - (n - 1) / 2;
  if (sh == 0) return;
  shift_in_place(x.w1.v, sh);
  shift_in_place(x.w2.v, sh);
}

void clamp_nonnegative(StatePair& x) {
  for (double& v : x.w1.v) v = std::max(v, 0.0);
  for (double& v : x.w2.v) v = std::max(v, 0.0);
}

void zero_ends(StatePair& x) {
  x.w1.v.front() = x.w1.v.back() = 0.0;
  x.w2.v.front() = x.w2.v.back() = 0.0;
}

Classification classify_by_norms(const EnergyBreakdown& e) {
  const double r1 = std::sqrt(std::max(e.norm1_sq, 0.0));
  const double r2 = std::sqrt(std::max(e.norm2_sq, 0.0));
  if (r2 < 1e-6 * r1) return Classification::SemitrivialFirst;
  if (r1 < 1e-6 * r2) return Classification::SemitrivialSecond;
  return Classification::Coupled;
}

// Shared descent loop. `project` maps a raw candidate onto the constraint
// set (throwing a projection error when impossible); `watch_dichotomy`
// enables the separation detector (two-constraint minimization only).
SolveReport descend(const SystemParams& p, StatePair x, const SolveOptions& opts,
                    const std::function<StatePair(const StatePair&)>& project,
                    bool watch_dichotomy) {
  const GridPtr grid = x.w1.grid;
  const EFGrid& g = *grid;
  const bool clamp = p.alpha < 2.0 || p.beta < 2.0;  // fractional gradient powers
  const bool theta_family = p.N == 4 && p.lambda1 == p.lambda2 && p.nu == 0.5;
  const double dicho = opts.dichotomy_threshold > 0 ? opts.dichotomy_threshold : 0.6 * g.L;

  zero_ends(x);
  if (clamp) clamp_nonnegative(x);
  x = project(x);  // projection errors propagate to the caller
  double E = energy(p, x).total;

  SolveReport rep;
  rep.state = x;
  rep.energy = E;
  if (opts.record_history) rep.energy_history.push_back(E);

  std::vector<double> cp_buf, dp_buf;
  StatePair P{zero_profile(grid), zero_profile(grid)};
  double tau_prev = opts.step_init;
  int stall = 0;
  double gn = std::numeric_limits<double>::infinity();

  const auto finish = [&](const StatePair& st, double en, int it, double gnorm,
                          const char* status) {
    rep.state = st;
    rep.energy = en;
    rep.grad_norm = gnorm;
    rep.iterations = it;
    rep.status = status;
    rep.nehari_residuals = nehari_residuals(p, st);
    const EnergyBreakdown eb = energy(p, st);
    rep.classification = classify_by_norms(eb);
    if (theta_family) {
      rep.theta = std::atan2(std::sqrt(std::max(eb.norm1_sq, 0.0)),
                             std::sqrt(std::max(eb.norm2_sq, 0.0)));
    }
    return rep;
  };

  for (int it = 0; it < opts.max_iters; ++it) {
    const StatePair G = gradient(p, x);
    gn = trap_norm(g, G);
    if (gn < opts.grad_tol) {
      rep.converged = true;
      return finish(x, E, it, gn, "converged");
    }
    solve_helmholtz(g, p.Lambda - p.lambda1, G.w1.v, P.w1.v, cp_buf, dp_buf);
    solve_helmholtz(g, p.Lambda - p.lambda2, G.w2.v, P.w2.v, cp_buf, dp_buf);
    const double dd = trap_inner(g, G, P);

    const auto candidate_at = [&](double tau, StatePair& out) -> bool {
      out = x;
      for (int j = 0; j < g.n; ++j) {
        out.w1.v[j] -= tau * P.w1.v[j];
        out.w2.v[j] -= tau * P.w2.v[j];
      }
      if (clamp) clamp_nonnegative(out);
      zero_ends(out);
      try {
        out = project(out);
      } catch (const Error&) {
        return false;
      }
      return true;
    };

    StatePair y{zero_profile(grid), zero_profile(grid)};
    double En = 0.0;
    bool accepted = false;
    double tau = std::min(4.0 * tau_prev, 1.0);
    // The sufficient-decrease test must demand more than the roundoff floor
    // of the energy evaluation, or noise-level "accepts" at tiny steps would
    // ratchet the warm-started step length down to nothing near a minimizer.
    const double noise =
        32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(E));
    for (int ls = 0; ls < 50; ++ls) {
      if (candidate_at(tau, y)) {
        En = energy(p, y).total;
        if (std::isfinite(En) &&
            En <= E - std::max(opts.armijo_c * tau * dd, noise)) {
          accepted = true;
          break;
        }
      }
      tau *= opts.backtrack;
    }
    if (!accepted) {
      // Energy comparisons go roundoff-flat near a minimizer while the
      // gradient still has room to drop; rescue with a fresh full-range step
      // sweep that accepts a non-increasing step cutting the gradient norm by
      // at least 10%.
      tau = 1.0;
      for (int ls = 0; ls < 26; ++ls) {
        if (candidate_at(tau, y)) {
          En = energy(p, y).total;
          if (std::isfinite(En) && En <= E + 1e-12 * std::max(1.0, std::abs(E))) {
            const double gny = trap_norm(g, gradient(p, y));
            if (gny <= 0.9 * gn) {
              accepted = true;
              break;
            }
          }
        }
        tau *= opts.backtrack;
      }
    }
    if (!accepted) {
      rep.converged = false;
      return finish(x, E, it, gn, "stall");
    }
    tau_prev = tau;
    x = y;
    if (opts.recenter) recenter(x);
    const double En2 = energy(p, x).total;
    if (opts.record_history) rep.energy_history.push_back(En2);

    if (watch_dichotomy) {
      const double sep =
          std::abs(g.s[argmax_abs(x.w1.v)] - g.s[argmax_abs(x.w2.v)]);
      if (sep > dicho) {
        rep.converged = false;
        SolveReport r = finish(x, En2, it, gn, "dichotomizing");
        r.classification = Classification::Dichotomizing;
        return r;
      }
    }
    if (std::abs(En2 - E) < 1e-12 * std::max(1.0, std::abs(E))) {
      if (++stall > 50) {
        // A genuinely flat energy: either the degenerate one-parameter
        // family (declared converged by design) or a roundoff plateau.
        rep.converged = theta_family;
        return finish(x, En2, it, gn, theta_family ? "energy-stall-family" : "energy-stall");
      }
    } else {
      stall = 0;
    }
    E = En2;
  }
  rep.converged = false;
  return finish(x, E, opts.max_iters, gn, "max-iters");
}

}  // namespace

SolveReport minimize_quotient(const SystemParams& p, const StatePair& init,
                              const SolveOptions& opts) {
  require_pair(init);
  const auto project = [&p](const StatePair& x) { return project_single(p, x).state; };
  SolveReport rep = descend(p, init, opts, project, /*watch_dichotomy=*/false);
  rep.start_index = -1;
  return rep;
}

SolveReport minimize_nehari(const SystemParams& p, GridPtr grid, const SolveOptions& opts) {
  if (p.nu == 0.0) throw BadArgument("two-constraint minimization needs nu != 0");
  if (!grid) throw BadGrid("null grid");
  const auto project = [&p](const StatePair& x) -> StatePair {
    const NehariScaling sc =
        p.nu > 0 ? project_pair_pos(p, x) : project_pair_neg(p, x);
    return apply_scaling(x, sc.t, sc.s);
  };

  std::vector<std::string> log;
  std::vector<SolveReport> runs;
  std::vector<int> run_start;
  const int nstarts = 1 + static_cast<int>(opts.separations.size());
  for (int si = 0; si < nstarts; ++si) {
    std::ostringstream tag;
    StatePair init{zero_profile(grid), zero_profile(grid)};
    if (si == 0) {
      tag << "start 0 (co-centered)";
      init.w1 = bubble_ef_profile(p.N, p.lambda1, BubbleSpec::at_center(1, 0.0), grid);
      init.w2 = bubble_ef_profile(p.N, p.lambda2, BubbleSpec::at_center(2, 0.0), grid);
    } else {
      const double d = opts.separations[si - 1];
      tag << "start " << si << " (separation " << d << ")";
      init.w1 = bubble_ef_profile(p.N, p.lambda1, BubbleSpec::at_center(1, -d / 2.0), grid);
      init.w2 = bubble_ef_profile(p.N, p.lambda2, BubbleSpec::at_center(2, d / 2.0), grid);
    }
    try {
      SolveReport r = descend(p, init, opts, project, /*watch_dichotomy=*/true);
      std::ostringstream line;
      line << tag.str() << ": status=" << r.status << " energy=" << r.energy
           << " iters=" << r.iterations;
      log.push_back(line.str());
      runs.push_back(std::move(r));
      run_start.push_back(si);
    } catch (const Error& e) {
      log.push_back(tag.str() + ": " + e.what());
    }
  }
  if (runs.empty()) {
    std::string msg = "every start failed:";
    for (const auto& l : log) msg += "\n  " + l;
    throw AllStartsFailed(msg);
  }
  int best = -1;
  for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
    if (best < 0) { best = i; continue; }
    const bool bc = runs[best].converged, ic = runs[i].converged;
    if (ic != bc) {
      if (ic) best = i;
      continue;
    }
    if (runs[i].energy < runs[best].energy) best = i;
  }
  SolveReport out = std::move(runs[best]);
  out.start_index = run_start[best];
  out.start_log = std::move(log);
  return out;
}

std::vector<SolveReport> scan(const SystemParams& base, const std::vector<double>& nu_list,
                              GridPtr grid, const SolveOptions& opts, int workers) {
  if (nu_list.empty()) throw BadArgument("empty coupling-strength list");
  if (!grid) throw BadGrid("null grid");
  const int total = static_cast<int>(nu_list.size());
  std::vector<SolveReport> out(total);
  const auto work = [&](int idx) {
    try {
      out[idx] = minimize_nehari(with_nu(base, nu_list[idx]), grid, opts);
    } catch (const Error& e) {
      SolveReport r;
      r.state = StatePair{zero_profile(grid), zero_profile(grid)};
      r.energy = std::numeric_limits<double>::quiet_NaN();
      r.converged = false;
      r.status = std::string("error: ") + e.what();
      out[idx] = std::move(r);
    }
  };
  const int nthreads = std::max(1, std::min(workers, total));
  if (nthreads == 1) {
    for (int i = 0; i < total; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace dcss
