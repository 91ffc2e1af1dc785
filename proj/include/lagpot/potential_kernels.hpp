#pragma once

#include "lagpot/envelopes.hpp"
#include "lagpot/params.hpp"
#include "lagpot/quadrature.hpp"
#include "lagpot/signed_log.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace lagpot {

/// Convolution:  K(x,y) = Gamma(sigma)^{-1} int_0^inf G_t^alpha(x,y) t^{sigma-1} dt, x, y > 0
/// HermiteType:  (xy)^{alpha+1/2} K(x,y)
/// Dunkl:        the same subordination of the Dunkl heat kernel, x, y real
/// DunklAux:     int_0^inf (sinh 2t / xy ^ 1)(xy v sinh 2t)^{-alpha-1/2} G_t(x,y) t^{sigma-1} dt,
///               with G_t the Hermite heat kernel (no Gamma factor)
enum class KernelKind { Convolution, HermiteType, Dunkl, DunklAux };

std::string to_string(KernelKind kind);
/// Accepts conv, hermite, dunkl, dunkl_aux (and the enum names).
KernelKind parse_kernel_kind(const std::string& text);

/// Kernel value in log form. Exact diagonal points with sigma <= 1/2 give +inf
/// (for Dunkl only when additionally xy > 0).
SignedLogValue potential_kernel(KernelKind kind, const Params& params, double x, double y,
                                const QuadratureConfig& quad = {});

/// Same, with the achieved relative tolerance of the subordination integral.
LogIntegral potential_kernel_detailed(KernelKind kind, const Params& params, double x, double y,
                                      const QuadratureConfig& quad = {});

/// Variant taking the exact difference diff = y - x, for points closer to the
/// diagonal than the spacing of doubles near x.
LogIntegral potential_kernel_diff(KernelKind kind, const Params& params, double x, double y, double diff,
                                  const QuadratureConfig& quad = {});

// ---- two-sided envelopes --------------------------------------------------

/// Envelope of K for x, y > 0. For x + y <= 1:
///   chi(sigma > alpha+1) + chi(sigma = alpha+1) log(1/(x+y))
///     + (x+y)^{-2alpha-1} { |x-y|^{2sigma-1} | 1 + log((x+y)/|x-y|) | (x+y)^{2sigma-1} }
/// and for x + y > 1:
///   (x+y)^{-2alpha-1} exp(-c |x-y|(x+y))
///     { |x-y|^{2sigma-1} | 1 + log+(1/(|x-y|(x+y))) | (x+y)^{1-2sigma} }
/// the braces selecting sigma < 1/2, = 1/2, > 1/2.
EnvelopeShape conv_envelope_shape(const Params& params, double x, double y);

/// Envelope of K_D for alpha > -1/2, x, y real. Same-sign points use the
/// convolution shapes in |x|, |y| (with |x - y| and |x + y|); opposite-sign
/// points use
///   chi(sigma > alpha+1) + chi(sigma = alpha+1) log(1/(|x|+|y|)) + (|x|+|y|)^{2sigma-2alpha-2}
/// for |x| + |y| <= 1 and
///   (|x|+|y|)^{-2alpha-4-2sigma} exp(-c |x-y||x+y|)
/// for |x| + |y| > 1.
EnvelopeShape dunkl_envelope_shape(const Params& params, double x, double y);

/// Envelope of the Hermite (alpha = -1/2) Dunkl kernel, all real x, y:
///   exp(-c |x-y|(|x|+|y|)) { |x-y|^{2sigma-1} | 1 + log+(1/(|x-y|(|x|+|y|))) | (1+|x+y|)^{1-2sigma} }.
EnvelopeShape hermite_osc_envelope_shape(double sigma, double x, double y);

EnvelopeBounds envelope_conv(const Params& params, double x, double y, const EnvelopeConstants& k);
EnvelopeBounds envelope_dunkl(const Params& params, double x, double y, const EnvelopeConstants& k);
EnvelopeBounds envelope_hermite_osc(double sigma, double x, double y, const EnvelopeConstants& k);

// ---- J/E decompositions ---------------------------------------------------

/// Constants of the three-term J/E decomposition: exp(-c_exp (x+y)^2),
/// J(c1 (x+y)^2, c2 (x+y)^2/(xy)) and E(c_E ..., c_E ...). Requires c1 < c2.
struct JEConstants {
  double c_exp;
  double c1;
  double c2;
  double c_E;
};

inline constexpr JEConstants kJELowerDefault{1.0, 1.0, 2.0, 1.0};
inline constexpr JEConstants kJEUpperDefault{0.25, 0.0625, 1.0, 0.125};

struct JEDecomposition {
  SignedLogValue lower;
  SignedLogValue upper;
};

/// Evaluates the J/E decomposition of K (Convolution) or of the auxiliary
/// kernel (DunklAux) with the given constants. For xy <= 1:
///   exp(-c(x+y)^2) + (x+y)^{2sigma-2alpha-2} J_{alpha-sigma}(c1 (x+y)^2, c2 (x+y)^2/(xy))
///     + (xy)^{sigma-alpha-1} E_{sigma-a}(c (x-y)^2/(xy), c xy (x+y)^2)
/// and for xy > 1:
///   exp(-c(x+y)^2) + (xy)^{-alpha-b} E_{sigma-a}(c (x-y)^2, c (x+y)^2)
/// with (a, b) = (3/2, 1/2) for Convolution and (1/2, 3/2) for DunklAux.
JEDecomposition exp_je_decomposition(KernelKind kind, const Params& params, double x, double y,
                                     const JEConstants& lower = kJELowerDefault,
                                     const JEConstants& upper = kJEUpperDefault);

// ---- calibration ----------------------------------------------------------

enum class EnvelopeSelector { Convolution, Dunkl, HermiteOscillator };

/// Which part of the plane a calibration covers.
enum class PlaneRegion { All, Small, Large };

struct CalibrationDomain {
  GridSpec grid;
  /// Restrict to |x| + |y| <= 1 (Small) or > 1 (Large).
  PlaneRegion region = PlaneRegion::All;
  /// Use (x, -y) instead of (x, y): opposite-sign points.
  bool opposite_sign = false;
  /// Drop points with |x - y| < gap (|x| + |y|); 0 keeps everything.
  double diagonal_gap = 0.0;
  /// Keep only points with |x| + |y| <= max_sum.
  double max_sum = std::numeric_limits<double>::infinity();
};

/// The (x, y) points a domain spans, after region and gap filters.
std::vector<std::array<double, 2>> domain_points(const CalibrationDomain& domain);

/// Shape function used by the calibration; the default comes from `selector`.
using ShapeFunction = std::function<EnvelopeShape(double, double)>;

ShapeFunction envelope_shape_function(EnvelopeSelector selector, const Params& params,
                                      double exponent_shift = 0.0);

/// Computes the kernel on the domain and fits envelope constants.
/// Throws DomainError if a point is an exact diagonal singularity
/// (x = y with sigma <= 1/2).
RatioReport calibrate_envelope(KernelKind kind, const Params& params, const CalibrationDomain& domain,
                               EnvelopeSelector selector, const QuadratureConfig& quad = {},
                               double exponent_shift = 0.0);

/// Samples (kernel value + shape) on the domain, for callers that want to
/// calibrate several shapes against one set of kernel values.
std::vector<CalibrationSample> kernel_samples(KernelKind kind, const Params& params,
                                              const std::vector<std::array<double, 2>>& points,
                                              const ShapeFunction& shape, const QuadratureConfig& quad = {});

}  // namespace lagpot
