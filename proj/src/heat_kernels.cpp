#include "lagpot/heat_kernels.hpp"

#include "lagpot/errors.hpp"
#include "lagpot/special_functions.hpp"

#include <cmath>
#include <limits>

namespace lagpot {

namespace {

constexpr double kLogTwo = 0.69314718055994530942;
constexpr double kLogTwoPi = 1.83787706640934548356;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this log u the Hankel series equals 1 to double precision.
constexpr double kHugeLogU = 690.0;

// -[tanh t * sum^2 + coth t * diff^2] / 4
double heat_exponent(double s, double sum, double diff) {
  const double t = std::exp(s);
  const double th = std::tanh(t);
  double e = -0.25 * th * sum * sum;
  if (diff != 0.0) {
    if (th == 0.0) return -kInf;
    e -= 0.25 * diff * diff / th;
  }
  return e;
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat kernel needs t > 0");
}

// 1 +- I_{a+1}/I_a at |z| = exp(log_u), sign +1 for "+".
SignedLogValue one_plus_minus_ratio(double alpha, double log_u, int sign) {
  if (log_u == -kInf) return SignedLogValue::from_log(0.0);
  if (log_u > kHugeLogU) {
    if (sign > 0) return SignedLogValue::from_log(kLogTwo);
    const double a = alpha + 0.5;
    if (a == 0.0) return SignedLogValue::zero();
    return SignedLogValue::from_log(std::log(std::fabs(a)) - log_u, a > 0 ? 1 : -1);
  }
  const double u = std::exp(log_u);
  if (u == 0.0) return SignedLogValue::from_log(0.0);
  if (sign > 0) return SignedLogValue::from_log(std::log1p(bessel_ratio(alpha, u)));
  return SignedLogValue::from_real(bessel_ratio_complement(alpha, u));
}

}  // namespace

namespace heat_detail {

double log_scaled_i_over_power_from_log(double nu, double log_u) {
  if (log_u == -kInf) return log_scaled_i_over_power(nu, 0.0);
  if (log_u > kHugeLogU) return -0.5 * kLogTwoPi - (nu + 0.5) * log_u;
  return log_scaled_i_over_power(nu, std::exp(log_u));
}

double hermite_log(double s, double x, double y, double diff) {
  return -0.5 * (kLogTwoPi + log_sinh_2t(s)) + heat_exponent(s, x + y, diff);
}

double laguerre_log(double alpha, double s, double x, double y, double diff) {
  const double ls = log_sinh_2t(s);
  const double xy = x * y;
  const double log_z = xy > 0.0 ? std::log(xy) - ls : -kInf;
  return -(alpha + 1.0) * ls + heat_exponent(s, x + y, diff) +
         log_scaled_i_over_power_from_log(alpha, log_z);
}

SignedLogValue dunkl_log(double alpha, double s, double x, double y, double diff) {
  if (alpha == -0.5) return SignedLogValue::from_log(hermite_log(s, x, y, diff));
  const double ls = log_sinh_2t(s);
  const double ax = std::fabs(x), ay = std::fabs(y);
  const double axy = ax * ay;
  const double log_z = axy > 0.0 ? std::log(axy) - ls : -kInf;
  // |y| - |x|; equals +-diff when the signs agree.
  double abs_diff;
  if (x >= 0.0 && y >= 0.0) abs_diff = diff;
  else if (x <= 0.0 && y <= 0.0) abs_diff = -diff;
  else abs_diff = ay - ax;
  const double base = -kLogTwo - (alpha + 1.0) * ls + heat_exponent(s, ax + ay, abs_diff) +
                      log_scaled_i_over_power_from_log(alpha, log_z);
  const int branch = (x * y >= 0.0) ? 1 : -1;
  return scale_log(one_plus_minus_ratio(alpha, log_z, branch), base);
}

}  // namespace heat_detail

SignedLogValue hermite_heat(double t, double x, double y) {
  check_time(t);
  return SignedLogValue::from_log(heat_detail::hermite_log(std::log(t), x, y, y - x));
}

SignedLogValue laguerre_heat(double alpha, double t, double x, double y) {
  check_time(t);
  if (!(alpha > -1.0)) throw DomainError("alpha must satisfy alpha > -1");
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("convolution-type kernel needs x, y > 0");
  return SignedLogValue::from_log(heat_detail::laguerre_log(alpha, std::log(t), x, y, y - x));
}

SignedLogValue dunkl_heat(double alpha, double t, double x, double y) {
  check_time(t);
  if (!(alpha > -1.0)) throw DomainError("alpha must satisfy alpha > -1");
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("Dunkl kernel needs finite x, y");
  return heat_detail::dunkl_log(alpha, std::log(t), x, y, y - x);
}

}  // namespace lagpot
