#pragma once

// Reference integrals computed with Boost's double-exponential quadrature,
// written directly from the defining formulas. Nothing here calls the
// library's quadrature or special-function code.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace detail {

// log int_lo^hi exp(g(u)) du for concave g peaking at `peak` (clipped into range).
template <class G>
double log_concave_integral(G g, double lo, double hi, double peak) {
  peak = std::clamp(peak, lo, hi);
  const double gmax = g(peak);
  boost::math::quadrature::tanh_sinh<double> ts(15);
  auto f = [&](double u) { return std::exp(g(u) - gmax); };
  double total = 0.0;
  if (peak > lo) total += ts.integrate(f, lo, peak, 1e-14);
  if (hi > peak) total += ts.integrate(f, peak, hi, 1e-14);
  return gmax + std::log(total);
}

// Point where a concave g has dropped `drop` below g(start), walking right.
template <class G>
double walk_right(G g, double start, double drop) {
  const double target = g(start) - drop;
  double step = 1.0;
  double u = start;
  while (g(u + step) > target) {
    u += step;
    step *= 2.0;
  }
  return u + step;
}

}  // namespace detail

/// log J_A(T, S), J_A(T, S) = int_T^S t^A e^{-t} dt, T > 0 (S may be +inf).
inline double log_j(double A, double T, double S) {
  auto g = [A](double u) { return (A + 1.0) * u - std::exp(u); };
  const double lo = std::log(T);
  const double peak = A > -1.0 ? std::log(A + 1.0) : lo;
  double hi = std::isinf(S) ? detail::walk_right(g, std::max(lo, peak), 80.0) : std::log(S);
  if (!std::isinf(S)) hi = std::min(hi, detail::walk_right(g, std::max(lo, std::min(peak, hi)), 80.0));
  return detail::log_concave_integral(g, lo, hi, peak);
}

/// log E_A(T, S), E_A(T, S) = int_0^1 t^A exp(-T/t - S t) dt; T > 0 or A > -1.
/// Substitutes t = e^{-v}.
inline double log_e(double A, double T, double S) {
  auto h = [=](double v) { return -(A + 1.0) * v - T * std::exp(v) - S * std::exp(-v); };
  double peak = 0.0;
  if (T > 0.0) {
    const double z = (-(A + 1.0) + std::sqrt((A + 1.0) * (A + 1.0) + 4.0 * T * S)) / (2.0 * T);
    peak = z > 1.0 ? std::log(z) : 0.0;
  } else if (S > A + 1.0) {
    peak = std::log(S / (A + 1.0));
  }
  const double hi = detail::walk_right(h, peak, 80.0);
  return detail::log_concave_integral(h, 0.0, hi, peak);
}

/// E_A(T, S) in 50-digit arithmetic with tanh-sinh on (0, 1).
inline double e_integral_50(double A, double T, double S) {
  using F = boost::multiprecision::cpp_bin_float_50;
  boost::math::quadrature::tanh_sinh<F> ts(12);
  const F a(A), tt(T), ss(S);
  auto f = [&](F t) {
    if (t <= 0) return F(0);
    return F(boost::multiprecision::exp(a * boost::multiprecision::log(t) - tt / t - ss * t));
  };
  return static_cast<double>(ts.integrate(f, F(0), F(1), F("1e-30")));
}

namespace detail {

// Closed forms with Boost's cyl_bessel_i, evaluated in F. Double overflows in
// I_nu once u = xy / sinh 2t passes ~700, so callers switch to Float50 there.
template <class F>
F laguerre_heat_closed(double alpha, double t, double x, double y) {
  using std::exp, std::pow, std::sinh, std::tanh;
  const F sh = sinh(F(2) * F(t)), xy = F(x) * F(y);
  return exp(-(F(x) * F(x) + F(y) * F(y)) / (F(2) * tanh(F(2) * F(t)))) * pow(xy, F(-alpha)) / sh *
         boost::math::cyl_bessel_i(F(alpha), xy / sh);
}

template <class F>
F dunkl_heat_closed(double alpha, double t, double x, double y) {
  using std::exp, std::pow, std::sinh, std::tanh, std::abs;
  const F sh = sinh(F(2) * F(t)), u = F(x) * F(y) / sh, au = abs(u);
  F phi;
  if (au == 0) {
    phi = pow(F(2), F(-alpha)) / boost::math::tgamma(F(alpha) + 1);
  } else {
    phi = pow(au, F(-alpha)) * (boost::math::cyl_bessel_i(F(alpha), au) +
                                (u > 0 ? F(1) : F(-1)) * boost::math::cyl_bessel_i(F(alpha) + 1, au));
  }
  return pow(sh, F(-alpha - 1)) * exp(-(F(x) * F(x) + F(y) * F(y)) / (F(2) * tanh(F(2) * F(t)))) * phi / 2;
}

}  // namespace detail

// True when the heat exponent is below -(x-y)^2 / (2 sinh 2t) < -2000, which no
// power prefactor in the double range can lift above zero.
inline bool negligible(double t, double x, double y) {
  return (x - y) * (x - y) / (2.0 * std::sinh(2.0 * t)) > 2000.0;
}

/// Laguerre heat kernel of convolution type from its closed form.
inline double laguerre_heat(double alpha, double t, double x, double y) {
  if (negligible(t, x, y)) return 0.0;
  if (x * y / std::sinh(2.0 * t) < 600.0) return detail::laguerre_heat_closed<double>(alpha, t, x, y);
  return static_cast<double>(detail::laguerre_heat_closed<boost::multiprecision::cpp_bin_float_50>(alpha, t, x, y));
}

inline double hermite_heat(double t, double x, double y) {
  const double sh = std::sinh(2.0 * t);
  return std::exp(-0.5 * (x * x + y * y) / std::tanh(2.0 * t) + x * y / sh) / std::sqrt(2.0 * M_PI * sh);
}

/// Dunkl heat kernel from I_alpha and I_{alpha+1} directly.
inline double dunkl_heat(double alpha, double t, double x, double y) {
  if (negligible(t, std::fabs(x), std::fabs(y))) return 0.0;
  if (std::fabs(x * y) / std::sinh(2.0 * t) < 600.0) return detail::dunkl_heat_closed<double>(alpha, t, x, y);
  return static_cast<double>(detail::dunkl_heat_closed<boost::multiprecision::cpp_bin_float_50>(alpha, t, x, y));
}

/// Subordination integral Gamma(sigma)^{-1} int_0^inf G_t t^{sigma-1} dt of a
/// heat kernel given as a callable of t, by exp_sinh on (0, inf).
template <class Heat>
double subordinate(Heat heat, double sigma) {
  boost::math::quadrature::exp_sinh<double> es;
  auto f = [&](double t) {
    const double v = heat(t);
    return std::isfinite(v) ? v * std::pow(t, sigma - 1.0) : 0.0;
  };
  return es.integrate(f, 1e-13) / std::tgamma(sigma);
}

/// int_0^inf f(z) dz by exp_sinh. Non-finite samples (0 * inf far out in the
/// tails) count as zero.
template <class F>
double half_line(F f) {
  boost::math::quadrature::exp_sinh<double> es;
  auto g = [&](double z) {
    const double v = f(z);
    return std::isfinite(v) ? v : 0.0;
  };
  return es.integrate(g, 1e-13);
}

}  // namespace oracle
