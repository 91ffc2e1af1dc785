#pragma once

#include "lagpot/signed_log.hpp"

namespace lagpot {

/// A (t, x, y) evaluation point; t > 0.
struct HeatPoint {
  double t;
  double x;
  double y;
};

/// Hermite heat kernel
/// (2 pi sinh 2t)^{-1/2} exp(-[tanh t (x+y)^2 + coth t (x-y)^2] / 4).
SignedLogValue hermite_heat(double t, double x, double y);

/// Laguerre heat kernel of convolution type, x, y >= 0 (zero arguments are
/// taken in the limiting sense).
SignedLogValue laguerre_heat(double alpha, double t, double x, double y);

/// Dunkl-Laguerre heat kernel, x, y real. Negative only for alpha < -1/2, xy < 0.
SignedLogValue dunkl_heat(double alpha, double t, double x, double y);

inline SignedLogValue hermite_heat(const HeatPoint& p) { return hermite_heat(p.t, p.x, p.y); }
inline SignedLogValue laguerre_heat(double alpha, const HeatPoint& p) {
  return laguerre_heat(alpha, p.t, p.x, p.y);
}
inline SignedLogValue dunkl_heat(double alpha, const HeatPoint& p) { return dunkl_heat(alpha, p.t, p.x, p.y); }

/// Forms taking s = log t and the exact difference diff = y - x. Used by the
/// subordination and operator quadratures, where t may be far below the
/// double range of sinh and y - x far below the spacing of x.
namespace heat_detail {

double hermite_log(double s, double x, double y, double diff);
double laguerre_log(double alpha, double s, double x, double y, double diff);
SignedLogValue dunkl_log(double alpha, double s, double x, double y, double diff);

/// log(u^{-nu} e^{-u} I_nu(u)) given log u; stays finite when u overflows.
double log_scaled_i_over_power_from_log(double nu, double log_u);

}  // namespace heat_detail

}  // namespace lagpot
