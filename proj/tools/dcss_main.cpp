// Command-line front end: closed-form constants and exact states, the
// constrained minimizer, coupling-strength scans, the two-bubble
// mountain-pass level, and the theorem-checking suites. Every command can
// emit a JSON report whose config block reproduces the run exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcss/closed_form.hpp"
#include "dcss/functional.hpp"
#include "dcss/minimize.hpp"
#include "dcss/nehari.hpp"
#include "dcss/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CliConfig {
  std::string command;
  int N = 4;
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  double alpha = 0.0;  // 0 means "default to 2*/2"
  double beta = 0.0;
  double nu = 1.0;
  double L = dcss::kDefaultHalfWidth;
  int n = dcss::kDefaultPoints;
  int max_iters = 5000;
  double grad_tol = 1e-6;
  double dichotomy_threshold = -1.0;
  std::vector<double> separations = {4, 6, 8, 10, 12};
  bool recenter = true;
  bool quotient = false;
  double init_scale1 = 1.0;
  double init_scale2 = 1.0;
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> nu_list;
  int resolution = 401;
  std::string suite = "identities";
};

int resolve_workers(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("DCSS_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double effective_alpha(const CliConfig& c) {
  return c.alpha != 0.0 ? c.alpha : static_cast<double>(c.N) / (c.N - 2.0);
}
double effective_beta(const CliConfig& c) {
  return c.beta != 0.0 ? c.beta : static_cast<double>(c.N) / (c.N - 2.0);
}

dcss::SystemParams params_from(const CliConfig& c) {
  return dcss::make_params(c.N, c.lambda1, c.lambda2, effective_alpha(c),
                           effective_beta(c), c.nu);
}

dcss::SolveOptions options_from(const CliConfig& c) {
  dcss::SolveOptions o;
  o.max_iters = c.max_iters;
  o.grad_tol = c.grad_tol;
  o.dichotomy_threshold = c.dichotomy_threshold;
  o.separations = c.separations;
  o.recenter = c.recenter;
  return o;
}

json config_block(const CliConfig& c) {
  json j;
  j["command"] = c.command;
  j["params"] = {{"N", c.N},
                 {"lambda1", c.lambda1},
                 {"lambda2", c.lambda2},
                 {"alpha", c.alpha},
                 {"beta", c.beta},
                 {"nu", c.nu}};
  j["grid"] = {{"L", c.L}, {"n", c.n}};
  json solver;
  solver["max_iters"] = c.max_iters;
  solver["grad_tol"] = c.grad_tol;
  solver["dichotomy_threshold"] = c.dichotomy_threshold;
  solver["separations"] = c.separations;
  solver["recenter"] = c.recenter;
  solver["quotient"] = c.quotient;
  solver["init_scale1"] = c.init_scale1;
  solver["init_scale2"] = c.init_scale2;
  if (std::isnan(c.theta)) {
    solver["theta"] = nullptr;
  } else {
    solver["theta"] = c.theta;
  }
  solver["nu_list"] = c.nu_list;
  solver["resolution"] = c.resolution;
  solver["suite"] = c.suite;
  j["solver"] = std::move(solver);
  return j;
}

template <typename T>
void maybe(const json& j, const char* key, T& into) {
  if (j.contains(key) && !j.at(key).is_null()) into = j.at(key).get<T>();
}

void load_config_file(const std::string& path, const std::string& command,
                      CliConfig& c) {
  std::ifstream in(path);
  if (!in) throw dcss::BadArgument("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw dcss::BadArgument(std::string("config parse failure: ") + e.what());
  }
  const json& cfg = doc.contains("config") ? doc.at("config") : doc;
  if (cfg.contains("command")) {
    const std::string cmd = cfg.at("command").get<std::string>();
    if (!cmd.empty() && cmd != command) {
      throw dcss::BadArgument("config file was produced by subcommand '" + cmd +
                              "', not '" + command + "'");
    }
  }
  if (cfg.contains("params")) {
    const json& p = cfg.at("params");
    maybe(p, "N", c.N);
    maybe(p, "lambda1", c.lambda1);
    maybe(p, "lambda2", c.lambda2);
    maybe(p, "alpha", c.alpha);
    maybe(p, "beta", c.beta);
    maybe(p, "nu", c.nu);
  }
  if (cfg.contains("grid")) {
    const json& g = cfg.at("grid");
    maybe(g, "L", c.L);
    maybe(g, "n", c.n);
  }
  if (cfg.contains("solver")) {
    const json& s = cfg.at("solver");
    maybe(s, "max_iters", c.max_iters);
    maybe(s, "grad_tol", c.grad_tol);
    maybe(s, "dichotomy_threshold", c.dichotomy_threshold);
    maybe(s, "separations", c.separations);
    maybe(s, "recenter", c.recenter);
    maybe(s, "quotient", c.quotient);
    maybe(s, "init_scale1", c.init_scale1);
    maybe(s, "init_scale2", c.init_scale2);
    if (s.contains("theta") && !s.at("theta").is_null()) {
      c.theta = s.at("theta").get<double>();
    }
    maybe(s, "nu_list", c.nu_list);
    maybe(s, "resolution", c.resolution);
    maybe(s, "suite", c.suite);
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_report(const std::string& path, const CliConfig& c, const json& payload,
                  double wall_s, int workers) {
  if (path.empty()) return;
  json doc;
  doc["meta"] = {{"tool", "dcss"},
                 {"version", kVersion},
                 {"generated_utc", utc_now()},
                 {"wall_time_s", wall_s},
                 {"workers", workers}};
  doc["config"] = config_block(c);
  doc["payload"] = payload;
  std::ofstream out(path);
  if (!out) throw dcss::BadArgument("cannot open report file: " + path);
  out << doc.dump(2) << "\n";
}

void write_profile_csv(const std::string& path, const dcss::StatePair& x) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw dcss::BadArgument("cannot open csv file: " + path);
  const dcss::EFGrid& g = *x.w1.grid;
  out << "s,w1,w2\n";
  for (int j = 0; j < g.n; ++j) {
    out << fmt17(g.s[j]) << ',' << fmt17(x.w1.v[j]) << ',' << fmt17(x.w2.v[j])
        << '\n';
  }
}

json report_payload(const dcss::SolveReport& r) {
  json p;
  p["energy"] = r.energy;
  p["classification"] = dcss::to_string(r.classification);
  p["converged"] = r.converged;
  p["status"] = r.status;
  p["iterations"] = r.iterations;
  p["grad_norm"] = r.grad_norm;
  p["residuals"] = {r.nehari_residuals.first, r.nehari_residuals.second};
  if (!std::isnan(r.theta)) p["theta"] = r.theta;
  p["start_index"] = r.start_index;
  p["start_log"] = r.start_log;
  return p;
}

json check_to_json(const dcss::CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["statement"] = c.provenance;
  j["claimed"] = c.claimed;
  j["computed"] = c.computed;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["note"] = c.note;
  return j;
}

void print_check(const dcss::CheckResult& c) {
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
            << "  claimed=" << fmt17(c.claimed) << "  computed=" << fmt17(c.computed)
            << "  tol=" << c.tolerance;
  if (!c.note.empty()) std::cout << "  (" << c.note << ")";
  std::cout << "\n";
}

int exit_code_for(const dcss::Error& e) {
  if (dynamic_cast<const dcss::OutOfRegime*>(&e) != nullptr ||
      dynamic_cast<const dcss::ConditionFailed*>(&e) != nullptr) {
    return 3;
  }
  if (dynamic_cast<const dcss::NotProjectable*>(&e) != nullptr ||
      dynamic_cast<const dcss::NoBracket*>(&e) != nullptr ||
      dynamic_cast<const dcss::NoRoot*>(&e) != nullptr ||
      dynamic_cast<const dcss::Singular*>(&e) != nullptr ||
      dynamic_cast<const dcss::ZeroProfile*>(&e) != nullptr ||
      dynamic_cast<const dcss::AllStartsFailed*>(&e) != nullptr) {
    return 4;
  }
  return 2;  // configuration / validation problem
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int run_constants(CliConfig& c, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const double Lambda = dcss::hardy_constant(c.N);
  for (double lam : {c.lambda1, c.lambda2}) {
    if (lam < 0.0 || lam >= Lambda) {
      throw dcss::HardyOutOfRange("lambda must lie in [0, Lambda_N)");
    }
  }
  const double ts = dcss::critical_exponent(c.N);
  const double omega = dcss::sphere_area(c.N);
  const double S = dcss::sobolev_constant(c.N);
  const double S1 = dcss::s_lambda(c.N, c.lambda1);
  const double S2 = dcss::s_lambda(c.N, c.lambda2);
  const double M1 = dcss::single_component_level(c.N, c.lambda1);
  const double M2 = dcss::single_component_level(c.N, c.lambda2);
  const double v0 = dcss::nu0(c.N, c.lambda1, c.lambda2);

  json payload;
  payload["Lambda_N"] = Lambda;
  payload["two_star"] = ts;
  payload["mu1"] = std::sqrt(Lambda - c.lambda1);
  payload["mu2"] = std::sqrt(Lambda - c.lambda2);
  payload["omega"] = omega;
  payload["S"] = S;
  payload["S_lambda1"] = S1;
  payload["S_lambda2"] = S2;
  payload["M_lambda1"] = M1;
  payload["M_lambda2"] = M2;
  payload["nu0"] = v0;
  std::cout << "N = " << c.N << ", lambda = (" << c.lambda1 << ", " << c.lambda2
            << ")\n";
  std::cout << "Lambda_N      = " << fmt17(Lambda) << "\n";
  std::cout << "2*            = " << fmt17(ts) << "\n";
  std::cout << "omega_N       = " << fmt17(omega) << "\n";
  std::cout << "S             = " << fmt17(S) << "\n";
  std::cout << "S(lambda1)    = " << fmt17(S1) << "\n";
  std::cout << "S(lambda2)    = " << fmt17(S2) << "\n";
  std::cout << "M(lambda1)    = " << fmt17(M1) << "\n";
  std::cout << "M(lambda2)    = " << fmt17(M2) << "\n";
  std::cout << "nu0           = " << fmt17(v0) << "\n";
  if (c.N == 4 && c.lambda1 > 0.0 && c.lambda2 > 0.0) {
    const double v1 = dcss::nu1(c.lambda1, c.lambda2);
    payload["nu1"] = v1;
    std::cout << "nu1           = " << fmt17(v1) << "\n";
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_report(report_path, c, payload, wall, 1);
  return 0;
}

int run_exact(CliConfig& c, const std::string& report_path, const std::string& csv_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const dcss::SystemParams p = params_from(c);
  const dcss::GridPtr grid = dcss::make_grid(c.L, c.n);
  json payload;
  if (p.N >= 5) {
    const auto roots = dcss::solve_kl(p.N, p.nu);
    json jroots = json::array();
    for (const auto& r : roots) {
      jroots.push_back({{"k", r.k},
                        {"l", r.l},
                        {"residual", r.residual},
                        {"degenerate", r.degenerate}});
    }
    payload["kl_roots"] = std::move(jroots);
    const dcss::KLSolution k0 = dcss::k0_selection(roots);
    payload["k0"] = k0.k;
    payload["l0"] = k0.l;
    const double level =
        (k0.k + k0.l) *
        std::pow(dcss::s_lambda(p.N, p.lambda1), p.N / 2.0) / p.N;
    payload["closed_form_energy"] = level;
    std::cout << "k-l roots (k, l, residual):\n";
    for (const auto& r : roots) {
      std::cout << "  (" << fmt17(r.k) << ", " << fmt17(r.l) << ", " << r.residual
                << (r.degenerate ? ", degenerate" : "") << ")\n";
    }
    std::cout << "selected k0 = " << fmt17(k0.k) << ", l0 = " << fmt17(k0.l) << "\n";
    std::cout << "closed-form energy = " << fmt17(level) << "\n";
  }
  std::optional<double> theta;
  if (!std::isnan(c.theta)) theta = c.theta;
  const dcss::StatePair state = dcss::synchronized_pair(p, grid, theta);
  const dcss::EnergyBreakdown eb = dcss::energy(p, state);
  const auto res = dcss::nehari_residuals(p, state);
  payload["energy"] = eb.total;
  payload["residuals"] = {res.first, res.second};
  std::cout << "synchronized-state energy on grid = " << fmt17(eb.total) << "\n";
  std::cout << "constraint residuals = (" << fmt17(res.first) << ", "
            << fmt17(res.second) << ")\n";
  write_profile_csv(csv_path, state);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_report(report_path, c, payload, wall, 1);
  return 0;
}

int run_solve(CliConfig& c, const std::string& report_path, const std::string& csv_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const dcss::SystemParams p = params_from(c);
  const dcss::GridPtr grid = dcss::make_grid(c.L, c.n);
  const dcss::SolveOptions opts = options_from(c);
  dcss::SolveReport rep;
  if (c.quotient) {
    dcss::StatePair init{
        dcss::bubble_ef_profile(p.N, p.lambda1, dcss::BubbleSpec::at_center(1, 0.0), grid),
        dcss::bubble_ef_profile(p.N, p.lambda2, dcss::BubbleSpec::at_center(2, 0.0), grid)};
    for (double& v : init.w1.v) v *= c.init_scale1;
    for (double& v : init.w2.v) v *= c.init_scale2;
    rep = dcss::minimize_quotient(p, init, opts);
  } else {
    rep = dcss::minimize_nehari(p, grid, opts);
  }
  std::cout << "energy         = " << fmt17(rep.energy) << "\n";
  std::cout << "classification = " << dcss::to_string(rep.classification) << "\n";
  std::cout << "converged      = " << (rep.converged ? "yes" : "no") << " ("
            << rep.status << ", " << rep.iterations << " iterations)\n";
  std::cout << "grad_norm      = " << fmt17(rep.grad_norm) << "\n";
  std::cout << "residuals      = (" << fmt17(rep.nehari_residuals.first) << ", "
            << fmt17(rep.nehari_residuals.second) << ")\n";
  if (!std::isnan(rep.theta)) {
    std::cout << "theta          = " << fmt17(rep.theta) << "\n";
  }
  write_profile_csv(csv_path, rep.state);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_report(report_path, c, report_payload(rep), wall, 1);
  const bool ok = rep.converged || rep.classification == dcss::Classification::Dichotomizing;
  return ok ? 0 : 4;
}

int run_scan(CliConfig& c, const std::string& report_path, const std::string& csv_path,
             int workers_flag) {
  const auto t0 = std::chrono::steady_clock::now();
  const dcss::SystemParams base = params_from(c);
  const dcss::GridPtr grid = dcss::make_grid(c.L, c.n);
  const dcss::SolveOptions opts = options_from(c);
  const int workers = resolve_workers(workers_flag);
  const auto reports = dcss::scan(base, c.nu_list, grid, opts, workers);

  json jentries = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    json e = report_payload(reports[i]);
    e.erase("start_log");  // keep the scan payload compact and deterministic
    json entry;
    entry["nu"] = c.nu_list[i];
    entry.update(e);
    jentries.push_back(std::move(entry));
    const bool ok = reports[i].converged ||
                    reports[i].classification == dcss::Classification::Dichotomizing;
    all_ok = all_ok && ok;
    std::cout << "nu=" << fmt17(c.nu_list[i]) << "  energy=" << fmt17(reports[i].energy)
              << "  " << dcss::to_string(reports[i].classification) << "  "
              << reports[i].status << "\n";
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw dcss::BadArgument("cannot open csv file: " + csv_path);
    out << "nu,quantity,value\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const dcss::SolveReport& r = reports[i];
      const std::string nu = fmt17(c.nu_list[i]);
      out << nu << ",energy," << fmt17(r.energy) << "\n";
      out << nu << ",grad_norm," << fmt17(r.grad_norm) << "\n";
      out << nu << ",iterations," << r.iterations << "\n";
      out << nu << ",converged," << (r.converged ? 1 : 0) << "\n";
      out << nu << ",classification," << dcss::to_string(r.classification) << "\n";
      out << nu << ",residual1," << fmt17(r.nehari_residuals.first) << "\n";
      out << nu << ",residual2," << fmt17(r.nehari_residuals.second) << "\n";
    }
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json payload;
  payload["entries"] = std::move(jentries);
  write_report(report_path, c, payload, wall, workers);
  return all_ok ? 0 : 4;
}

int run_mp_level(CliConfig& c, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const dcss::SystemParams p = params_from(c);
  const dcss::GridPtr grid = dcss::make_grid(c.L, c.n);
  const double d = dcss::mountain_pass_level(p, grid, c.resolution);
  const double sumM = dcss::single_component_level(p.N, p.lambda1) +
                      dcss::single_component_level(p.N, p.lambda2);
  json payload;
  payload["d_nu"] = d;
  payload["sum_single_levels"] = sumM;
  payload["deficit"] = sumM - d;
  std::cout << "d_nu     = " << fmt17(d) << "\n";
  std::cout << "M1 + M2  = " << fmt17(sumM) << "\n";
  std::cout << "deficit  = " << fmt17(sumM - d) << "\n";
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_report(report_path, c, payload, wall, 1);
  return 0;
}

int run_verify(CliConfig& c, const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const dcss::GridPtr grid = dcss::make_grid(c.L, c.n);
  std::vector<dcss::CheckResult> checks;
  if (c.suite == "identities") {
    checks = dcss::check_identities(grid);
  } else if (c.suite == "thresholds") {
    const dcss::SystemParams p = params_from(c);
    checks = dcss::check_thresholds(p, grid, options_from(c));
  } else if (c.suite == "limits") {
    const dcss::SystemParams p = params_from(c);
    std::vector<double> nus = c.nu_list;
    if (nus.empty()) nus = {0.2, 0.1, 0.05};
    checks = dcss::check_limits(p, nus, grid, options_from(c));
  } else {
    throw dcss::BadArgument("unknown suite '" + c.suite +
                            "' (expected identities, thresholds, or limits)");
  }
  json jchecks = json::array();
  int fails = 0;
  for (const auto& ck : checks) {
    print_check(ck);
    jchecks.push_back(check_to_json(ck));
    if (!ck.pass) ++fails;
  }
  std::cout << checks.size() - fails << "/" << checks.size() << " checks passed\n";
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json payload;
  payload["checks"] = std::move(jchecks);
  payload["failures"] = fails;
  write_report(report_path, c, payload, wall, 1);
  return fails == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-energy states of a doubly critical coupled Hardy-Schrodinger system"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path, report_path, csv_path;
  int workers_flag = 0;

  const auto add_common = [&](CLI::App* sub, bool with_solver) {
    sub->add_option("--config", config_path,
                    "JSON config (or full report) to load defaults from");
    sub->add_option("--report", report_path, "write a JSON report here");
    sub->add_option("--N", cfg.N, "space dimension (>= 3)");
    sub->add_option("--lambda1", cfg.lambda1, "first Hardy coefficient");
    sub->add_option("--lambda2", cfg.lambda2, "second Hardy coefficient");
    sub->add_option("--alpha", cfg.alpha, "first coupling exponent (default 2*/2)");
    sub->add_option("--beta", cfg.beta, "second coupling exponent (default 2*/2)");
    sub->add_option("--nu", cfg.nu, "coupling strength");
    sub->add_option("--L", cfg.L, "grid half-width in the log-radial variable");
    sub->add_option("--n", cfg.n, "grid point count (odd)");
    if (with_solver) {
      sub->add_option("--max-iters", cfg.max_iters, "iteration cap");
      sub->add_option("--grad-tol", cfg.grad_tol, "gradient-norm stopping tolerance");
      sub->add_option("--dichotomy-threshold", cfg.dichotomy_threshold,
                      "peak separation that declares dichotomy (<=0: 0.6 L)");
      sub->add_option("--separations", cfg.separations,
                      "initial peak separations for the multistart")
          ->delimiter(',');
      sub->add_flag("--no-recenter{false}", cfg.recenter,
                    "disable translation normalization");
    }
  };

  CLI::App* c_const = app.add_subcommand("constants", "print the closed-form constants");
  add_common(c_const, false);

  CLI::App* c_exact = app.add_subcommand(
      "exact", "closed-form synchronized states and the k-l root system");
  add_common(c_exact, false);
  c_exact->add_option("--theta", cfg.theta,
                      "mixing angle for the degenerate one-parameter family");
  c_exact->add_option("--csv", csv_path, "write the profile as CSV (s,w1,w2)");

  CLI::App* c_solve = app.add_subcommand("solve", "minimize over the constraint set");
  add_common(c_solve, true);
  c_solve->add_flag("--quotient", cfg.quotient,
                    "minimize over the one-constraint set instead of two");
  c_solve->add_option("--init-scale1", cfg.init_scale1,
                      "first-component amplitude factor for the quotient start");
  c_solve->add_option("--init-scale2", cfg.init_scale2,
                      "second-component amplitude factor for the quotient start");
  c_solve->add_option("--csv", csv_path, "write the final profile as CSV (s,w1,w2)");

  CLI::App* c_scan = app.add_subcommand("scan", "solve across a list of coupling strengths");
  add_common(c_scan, true);
  c_scan->add_option("--nu-list", cfg.nu_list, "coupling strengths to scan")
      ->delimiter(',')
      ->required();
  c_scan->add_option("--csv", csv_path, "write results as CSV (nu,quantity,value)");
  c_scan->add_option("--workers", workers_flag,
                     "worker threads (default: DCSS_WORKERS or hardware)");

  CLI::App* c_mp = app.add_subcommand("mp-level", "two-bubble mountain-pass level");
  add_common(c_mp, false);
  c_mp->add_option("--resolution", cfg.resolution, "mesh resolution per axis");

  CLI::App* c_verify = app.add_subcommand("verify", "run a self-checking suite");
  add_common(c_verify, true);
  c_verify->add_option("--suite", cfg.suite, "identities | thresholds | limits");
  c_verify->add_option("--nu-list", cfg.nu_list,
                       "coupling strengths for the limits suite")
      ->delimiter(',');

  // Two-phase parse: find --config first, load it as defaults, then let the
  // actual command line override field by field.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    std::string path;
    if (a == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    }
    if (!path.empty()) {
      std::string command;
      for (int j = 1; j < argc; ++j) {
        const std::string b = argv[j];
        if (!b.empty() && b[0] != '-') {
          command = b;
          break;
        }
      }
      try {
        load_config_file(path, command, cfg);
      } catch (const dcss::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_const->parsed()) {
      cfg.command = "constants";
      return run_constants(cfg, report_path);
    }
    if (c_exact->parsed()) {
      cfg.command = "exact";
      return run_exact(cfg, report_path, csv_path);
    }
    if (c_solve->parsed()) {
      cfg.command = "solve";
      return run_solve(cfg, report_path, csv_path);
    }
    if (c_scan->parsed()) {
      cfg.command = "scan";
      return run_scan(cfg, report_path, csv_path, workers_flag);
    }
    if (c_mp->parsed()) {
      cfg.command = "mp-level";
      return run_mp_level(cfg, report_path);
    }
    if (c_verify->parsed()) {
      cfg.command = "verify";
      return run_verify(cfg, report_path);
    }
  } catch (const dcss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
