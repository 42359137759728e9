#include "dcss/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dcss {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double hardy_constant(int N) {
  if (N < 3) throw DimensionTooSmall("N = " + std::to_string(N) + ", need N >= 3");
  const double d = N - 2;
  return d * d / 4.0;
}

double critical_exponent(int N) {
  if (N < 3) throw DimensionTooSmall("N = " + std::to_string(N) + ", need N >= 3");
  return 2.0 * N / (N - 2);
}

double sphere_area(int N) {
  if (N < 3) throw DimensionTooSmall("N = " + std::to_string(N) + ", need N >= 3");
  // Gamma(N/2) by the recurrence Gamma(x+1) = x Gamma(x) from Gamma(1) = 1
  // or Gamma(1/2) = sqrt(pi): exact for integer and half-integer arguments.
  double g;
  double x;
  if (N % 2 == 0) {
    g = 1.0;  // Gamma(1)
    x = 1.0;
  } else {
    g = std::sqrt(std::numbers::pi);  // Gamma(1/2)
    x = 0.5;
  }
  while (x < N / 2.0 - 0.25) {
    g *= x;
    x += 1.0;
  }
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / g;
}

SystemParams make_params(int N, double lambda1, double lambda2, double alpha,
                         double beta, double nu) {
  SystemParams p;
  p.Lambda = hardy_constant(N);  // throws DimensionTooSmall for N < 3
  p.N = N;
  p.two_star = critical_exponent(N);
  for (double l : {lambda1, lambda2}) {
    if (!(l > 0.0) || !(l < p.Lambda)) {
      throw HardyOutOfRange("lambda = " + fmt(l) + " not in (0, " + fmt(p.Lambda) + ")");
    }
  }
  if (!(alpha > 1.0) || !(beta > 1.0)) {
    throw ExponentMismatch("need alpha > 1 and beta > 1, got alpha = " + fmt(alpha) +
                           ", beta = " + fmt(beta));
  }
  if (std::abs(alpha + beta - p.two_star) > 1e-12) {
    throw ExponentMismatch("alpha + beta = " + fmt(alpha + beta) +
                           " differs from 2N/(N-2) = " + fmt(p.two_star));
  }
  if (!std::isfinite(nu)) throw ExponentMismatch("nu must be finite");
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.alpha = alpha;
  p.beta = beta;
  p.nu = nu;
  p.mu1 = std::sqrt(p.Lambda - lambda1);
  p.mu2 = std::sqrt(p.Lambda - lambda2);
  p.omega = sphere_area(N);
  return p;
}

SystemParams with_nu(const SystemParams& p, double nu) {
  return make_params(p.N, p.lambda1, p.lambda2, p.alpha, p.beta, nu);
}

GridPtr make_grid(double L, int n) {
  if (!(L > 0.0)) throw BadGrid("half width L = " + fmt(L) + " must be positive");
  if (n < 3 || n % 2 == 0) {
    throw BadGrid("point count n = " + std::to_string(n) + " must be odd and >= 3");
  }
  auto g = std::make_shared<EFGrid>();
  g->L = L;
  g->n = n;
  g->h = 2.0 * L / (n - 1);
  g->s.resize(n);
  for (int j = 0; j < n; ++j) g->s[j] = -L + g->h * j;
  g->s[n - 1] = L;  // exact endpoint
  g->s[(n - 1) / 2] = 0.0;
  g->weights.assign(n, g->h / 3.0);
  for (int j = 1; j < n - 1; ++j) {
    g->weights[j] = (j % 2 == 1 ? 4.0 : 2.0) * g->h / 3.0;
  }
  g->trap.assign(n, g->h);
  g->trap[0] = g->trap[n - 1] = g->h / 2.0;
  return g;
}

GridPtr default_grid() { return make_grid(kDefaultHalfWidth, kDefaultPoints); }

double integrate(const EFGrid& grid, const std::vector<double>& samples) {
  if (static_cast<int>(samples.size()) != grid.n) {
    throw LengthMismatch("got " + std::to_string(samples.size()) + " samples on a grid of " +
                         std::to_string(grid.n) + " points");
  }
  double acc = 0.0;
  for (int j = 0; j < grid.n; ++j) acc += grid.weights[j] * samples[j];
  return acc;
}

Profile make_profile(GridPtr grid, std::vector<double> values) {
  if (!grid) throw BadGrid("null grid");
  if (static_cast<int>(values.size()) != grid->n) {
    throw LengthMismatch("got " + std::to_string(values.size()) + " values on a grid of " +
                         std::to_string(grid->n) + " points");
  }
  return Profile{std::move(grid), std::move(values)};
}

Profile zero_profile(GridPtr grid) {
  if (!grid) throw BadGrid("null grid");
  const int n = grid->n;
  return Profile{std::move(grid), std::vector<double>(n, 0.0)};
}

void require_same_grid(const Profile& a, const Profile& b) {
  if (!a.grid || !b.grid) throw GridMismatch("profile without a grid");
  if (a.grid == b.grid) return;
  if (a.grid->n != b.grid->n || a.grid->L != b.grid->L) {
    throw GridMismatch("grids differ: (L=" + fmt(a.grid->L) + ", n=" + std::to_string(a.grid->n) +
                       ") vs (L=" + fmt(b.grid->L) + ", n=" + std::to_string(b.grid->n) + ")");
  }
}

void require_pair(const StatePair& x) {
  require_same_grid(x.w1, x.w2);
  if (static_cast<int>(x.w1.v.size()) != x.w1.grid->n ||
      static_cast<int>(x.w2.v.size()) != x.w2.grid->n) {
    throw LengthMismatch("profile length does not match its grid");
  }
}

}  // namespace dcss
