#pragma once
// Core types for the doubly critical coupled Hardy-Schrodinger solver:
// validated system parameters, the Emden-Fowler grid with quadrature weights,
// sampled radial profiles, and the error taxonomy shared by every module.
//
// All computation happens in Emden-Fowler coordinates: a radial function
// u(r) on (0,inf) is represented as u(r) = r^{-(N-2)/2} w(ln r), where w
// decays like exp(-mu|s|) with mu^2 = Lambda_N - lambda. This removes the
// |x|^{-2} singularity and turns dilations into s-translations.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcss {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define DCSS_DEFINE_ERROR(Name)                                     \
  struct Name : Error {                                             \
    explicit Name(const std::string& m) : Error(#Name ": " + m) {}  \
  }

DCSS_DEFINE_ERROR(DimensionTooSmall);  // N < 3
DCSS_DEFINE_ERROR(HardyOutOfRange);    // lambda outside the admissible interval
DCSS_DEFINE_ERROR(ExponentMismatch);   // alpha,beta invalid or alpha+beta != 2N/(N-2)
DCSS_DEFINE_ERROR(BadGrid);            // even point count or nonpositive half width
DCSS_DEFINE_ERROR(LengthMismatch);     // sample vector length != grid size
DCSS_DEFINE_ERROR(GridMismatch);       // profiles on different grids
DCSS_DEFINE_ERROR(ZeroProfile);        // operation undefined on the zero profile
DCSS_DEFINE_ERROR(NotProjectable);     // no positive scaling onto the constraint set
DCSS_DEFINE_ERROR(ConditionFailed);    // existence condition for the nu<0 scaling fails
DCSS_DEFINE_ERROR(NoBracket);          // root bracketing failed after expansion
DCSS_DEFINE_ERROR(Singular);           // degenerate linear system in a projection
DCSS_DEFINE_ERROR(OutOfRegime);        // parameters outside a result's hypotheses
DCSS_DEFINE_ERROR(NoRoot);             // algebraic system solver found no root
DCSS_DEFINE_ERROR(AllStartsFailed);    // every multistart initialization failed
DCSS_DEFINE_ERROR(BadArgument);        // malformed argument (e.g. empty scan list)

#undef DCSS_DEFINE_ERROR

// ---------------------------------------------------------------------------
// SystemParams: the tuple (N, lambda1, lambda2, alpha, beta, nu)
// ---------------------------------------------------------------------------

struct SystemParams {
  int N = 0;            // dimension, >= 3
  double lambda1 = 0;   // Hardy coefficient of the first component, in (0, Lambda)
  double lambda2 = 0;   // Hardy coefficient of the second component
  double alpha = 0;     // coupling exponent of the first component, > 1
  double beta = 0;      // coupling exponent of the second component, > 1
  double nu = 0;        // coupling strength (any sign)

  // Derived, precomputed by make_params.
  double Lambda = 0;    // (N-2)^2/4, the sharp Hardy constant
  double two_star = 0;  // 2N/(N-2), the critical Sobolev exponent
  double mu1 = 0;       // sqrt(Lambda - lambda1)
  double mu2 = 0;       // sqrt(Lambda - lambda2)
  double omega = 0;     // surface area of the unit (N-1)-sphere
};

// Validates and completes a parameter tuple.
// Throws DimensionTooSmall, HardyOutOfRange, ExponentMismatch.
SystemParams make_params(int N, double lambda1, double lambda2, double alpha,
                         double beta, double nu);

// Same parameters with a different coupling strength (revalidated).
SystemParams with_nu(const SystemParams& p, double nu);

// Sharp Hardy constant (N-2)^2/4. Throws DimensionTooSmall.
double hardy_constant(int N);

// Critical Sobolev exponent 2N/(N-2). Throws DimensionTooSmall.
double critical_exponent(int N);

// Surface area of the unit (N-1)-sphere, 2 pi^{N/2} / Gamma(N/2), with the
// Gamma factor evaluated in closed form (integer/half-integer recurrence).
double sphere_area(int N);

// ---------------------------------------------------------------------------
// EFGrid: uniform symmetric grid in s = ln r with quadrature weights
// ---------------------------------------------------------------------------

struct EFGrid {
  double L = 0;                 // half width: s in [-L, L]
  int n = 0;                    // odd point count >= 3
  double h = 0;                 // spacing 2L/(n-1)
  std::vector<double> s;        // nodes
  std::vector<double> weights;  // composite Simpson weights (h/3)*[1,4,2,...,4,1]
  std::vector<double> trap;     // trapezoid weights (energy internals)

  double s_min() const { return -L; }
  double s_max() const { return L; }
};

using GridPtr = std::shared_ptr<const EFGrid>;

// Builds the symmetric grid. Throws BadGrid for n even, n < 3, or L <= 0.
GridPtr make_grid(double L, int n);

// Half width / point count used by the CLI and the acceptance runs when the
// caller does not override them. Chosen so domain truncation of profiles with
// decay rate mu >= 0.3 stays below ~1e-10 (exp(-2*0.3*42) ~ 1e-11).
inline constexpr double kDefaultHalfWidth = 42.0;
inline constexpr int kDefaultPoints = 4001;
GridPtr default_grid();

// Composite Simpson quadrature of samples over [-L, L].
// Throws LengthMismatch if samples.size() != grid.n.
double integrate(const EFGrid& grid, const std::vector<double>& samples);

// ---------------------------------------------------------------------------
// Profile / StatePair
// ---------------------------------------------------------------------------

// A sampled Emden-Fowler profile w(s). Endpoint values are treated as
// homogeneous Dirichlet data by every operator.
struct Profile {
  GridPtr grid;
  std::vector<double> v;
};

// Builds a profile, validating the sample length. Throws LengthMismatch.
Profile make_profile(GridPtr grid, std::vector<double> values);

// Zero profile on a grid.
Profile zero_profile(GridPtr grid);

// A two-component state (w1, w2) on a shared grid.
struct StatePair {
  Profile w1;
  Profile w2;
};

// Throws GridMismatch unless both profiles live on value-identical grids.
void require_same_grid(const Profile& a, const Profile& b);
void require_pair(const StatePair& x);

}  // namespace dcss
