#pragma once

// Quantitative experiments on the potential operators: the local/global
// kernel split, row norms, operator application by quadrature, the families
// of test functions that witness unboundedness, the Hardy-type operator on
// (1, inf) and the scan for negative Dunkl kernel values.

#include "lagpot/params.hpp"
#include "lagpot/potential_kernels.hpp"
#include "lagpot/quadrature.hpp"
#include "lagpot/signed_log.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace lagpot {

enum class SplitPart { Full, Local, Global };

/// Kernel restricted by the indicator of {|x| <= 2, |y| <= 2} (Local) or its
/// complement (Global). Local + Global = Full at every point.
struct SplitKernel {
  KernelKind kind = KernelKind::Convolution;
  Params params;
  SplitPart part = SplitPart::Full;

  bool active(double x, double y) const;
  /// Kernel value with the exact difference diff = y - x.
  LogIntegral evaluate(double x, double y, double diff, const QuadratureConfig& quad = {}) const;
  SignedLogValue operator()(double x, double y, const QuadratureConfig& quad = {}) const {
    return evaluate(x, y, y - x, quad).value;
  }
};

/// dmu_alpha = y^{2alpha+1} dy on (0, inf), dw_alpha = |y|^{2alpha+1} dy on R,
/// or Lebesgue measure on (0, inf).
enum class Measure { Mu, W, Lebesgue };

/// The measure that goes with a kernel kind.
Measure natural_measure(KernelKind kind);
/// log of the density of `m` at y (for W uses |y|).
double log_density(Measure m, double alpha, double y);

struct TestFunction {
  std::string name;
  /// f(y) in log form; zero outside [lo, hi].
  std::function<SignedLogValue(double)> value;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  /// Interior points where f jumps or is singular.
  std::vector<double> breakpoints;
};

/// Integrates g(y, diff) over (a, b), where diff = y - x is exact near the
/// diagonal point x. Each gap between consecutive special points is split in
/// two and integrated in the log of the distance to the nearer special point,
/// which resolves algebraic endpoint singularities and infinite tails.
LogIntegral integrate_with_singularities(const std::function<SignedLogValue(double, double)>& g, double a, double b,
                                         std::vector<double> special, double x,
                                         const QuadratureConfig& quad = {});

// ---- row norms ---------------------------------------------------------------

/// ||K(x, .)||_{L^p(m)} over y in the support of the split, for 1 <= p <= inf,
/// with m the natural measure of the kernel kind. Divergent integrals return
/// +inf with `divergent` set. For p = inf the supremum is taken over refined
/// sample grids until two refinements agree to 1%.
LogIntegral row_norm(const SplitKernel& split, double x, double p, const QuadratureConfig& quad = {});

/// Least-squares slope of log(values) against log(xs).
double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& log_values);

// ---- operators -----------------------------------------------------------------

struct OperatorValue {
  double x = 0.0;
  SignedLogValue value;
  bool divergent = false;
  double achieved_rel_tol = 0.0;
};

/// (I f)(x) = int K(x, y) f(y) dm(y) at each grid point; non-integrable
/// pairings are flagged per point.
std::vector<OperatorValue> apply_operator(const SplitKernel& split, const TestFunction& f,
                                          const std::vector<double>& xs, Measure m,
                                          const QuadratureConfig& kernel_quad = {},
                                          const QuadratureConfig& outer_quad = {});

OperatorValue apply_operator_at(const SplitKernel& split, const TestFunction& f, double x, Measure m,
                                const QuadratureConfig& kernel_quad = {}, const QuadratureConfig& outer_quad = {});

/// ||f||_{L^p(m)} over the support of f, 1 <= p < inf.
LogIntegral lp_norm(const TestFunction& f, double p, Measure m, double alpha, const QuadratureConfig& quad = {});

/// ||I f||_{L^q(m)} restricted to x in (x_lo, x_hi), 1 <= q < inf.
/// `x_special` are points where I f is singular or has kinks.
LogIntegral operator_lq_norm(const SplitKernel& split, const TestFunction& f, double q, Measure m, double x_lo,
                             double x_hi, const std::vector<double>& x_special,
                             const QuadratureConfig& kernel_quad = {}, const QuadratureConfig& mid_quad = {},
                             const QuadratureConfig& outer_quad = {});

// ---- test functions --------------------------------------------------------------

enum class Family { LogEdge, BumpAtN, EdgePower, LogLogEdge };

std::string to_string(Family f);
Family parse_family(const std::string& text);

struct FamilyParams {
  Params params;
  double inv_p = 0.5;
  double inv_q = 0.5;
  /// bump_at_n: the n of f_n = chi_(n, n+1/n)
  double n = 8.0;
  /// edge_power: epsilon with 0 < epsilon < 1/p - 2 sigma - 1/q
  double epsilon = 0.0;
};

/// log_edge:     chi_{y>e} y^{-2(alpha+1)/p} (log y)^{-1/p - sigma/(alpha+1)},
///               needs sigma <= alpha+1 and 1/p + sigma/(alpha+1) <= 1
/// bump_at_n:    chi_(n, n+1/n), needs n >= 2
/// edge_power:   chi_(2,3) (3-y)^A, A = -1/p + epsilon, needs sigma < 1/2 and
///               0 < epsilon < 1/p - 2 sigma - 1/q
/// log_log_edge: chi_(2,3) / ((3-y)^{2 sigma} log(2/(3-y))), needs sigma < 1/2
TestFunction counterexample_family(Family family, const FamilyParams& fp);

/// ||f||_p^p for log_edge computed in the variable w = log log y, where the
/// integrand is exp(-kappa w) with kappa = sigma p/(alpha+1). Exact value 1/kappa.
LogIntegral log_edge_norm_certificate(const Params& params, double inv_p, const QuadratureConfig& quad = {});

/// ||I_global f||_q^q over x in (e, exp(L_k)) for L_k = L0 * 2^k, k = 0..doublings.
struct PartialNorms {
  std::vector<double> window_log_upper;
  std::vector<double> partial;  // the q-th powers
  /// Each doubling raised the partial integral by more than 10% (three times in a row).
  bool growing = false;
};

PartialNorms log_edge_partial_norms(const Params& params, double inv_p, double L0, int doublings,
                                    const QuadratureConfig& kernel_quad = {}, const QuadratureConfig& mid_quad = {},
                                    const QuadratureConfig& outer_quad = {});

// ---- Hardy-type operator ---------------------------------------------------------

/// mu_alpha(B(x, r)) for the ball in ((1, inf), |.|, dmu_alpha).
double ball_measure(double alpha, double x, double r);

/// U f(x) = int_1^inf (x+y)^{-2alpha-1} |x-y|^{2sigma-1} f(y) dmu_alpha(y),
/// x > 1, for alpha >= -1/2 and sigma < 1/2.
std::vector<OperatorValue> hardy_operator(const Params& params, const TestFunction& f,
                                          const std::vector<double>& xs, const QuadratureConfig& quad = {});

// ---- Dunkl folding ---------------------------------------------------------------

/// (I_D f)(x) over R with dw_alpha.
OperatorValue dunkl_apply(const Params& params, const TestFunction& f, double x, const QuadratureConfig& kernel_quad = {},
                          const QuadratureConfig& outer_quad = {});

/// I_+(f_s)(x) + I_-(f_{-s})(x) for x > 0, with s = +1 giving (I_D f)(x) and
/// s = -1 giving (I_D f)(-x); I_+- integrate K_D(x, +-y) over (0, inf) against dmu_alpha.
OperatorValue dunkl_folded(const Params& params, const TestFunction& f, double x, int s,
                           const QuadratureConfig& kernel_quad = {}, const QuadratureConfig& outer_quad = {});

// ---- negativity scan ---------------------------------------------------------------

struct NegativityHit {
  double x, y;
  double log_abs;
  /// Still negative at tightened quadrature accuracy.
  bool reverified;
};

struct NegativityReport {
  std::vector<NegativityHit> hits;
  /// Smallest |x| on the grid anti-diagonal y = -x with K_D < 0 (inf if none).
  double min_antidiagonal = std::numeric_limits<double>::infinity();
  std::size_t scanned = 0;
};

/// Scans K_D on an n x n grid of [-box, box]^2 (symmetric, avoiding 0) plus the
/// anti-diagonal. Requires alpha < -1/2 unless `enforce_alpha` is false.
NegativityReport negativity_scan(const Params& params, double box, int n, const QuadratureConfig& quad = {},
                                 bool enforce_alpha = true);

}  // namespace lagpot
