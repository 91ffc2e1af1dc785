#include "lagpot/special_functions.hpp"

#include "lagpot/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogTwo = 0.69314718055994530942;
constexpr double kLogTwoPi = 1.83787706640934548356;

// log of sum_k (u^2/4)^k / (k! Gamma(nu+k+1)); every term is positive for nu > -1.
double log_series_sum(double nu, double u) {
  const double q = 0.25 * u * u;
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (sum > 1e250) {
      sum *= 1e-250;
      term *= 1e-250;
      log_scale += 250.0 * std::log(10.0);
    }
    if (k > q && term < 1e-17 * sum) break;
  }
  return std::log(sum) + log_scale - log_gamma(nu + 1.0);
}

// Hankel expansion sum_k (-1)^k a_k(nu) / u^k with e^{-u} I_nu(u) ~ (2 pi u)^{-1/2} S.
double hankel_sum(double nu, double u) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * u);
    if (std::fabs(next) > std::fabs(term)) break;
    sum += next;
    term = next;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// S_nu - S_{nu+1} summed termwise, so the leading 1 cancels exactly.
double hankel_difference(double nu, double u) {
  const double mu0 = 4.0 * nu * nu;
  const double mu1 = 4.0 * (nu + 1.0) * (nu + 1.0);
  double t0 = 1.0;
  double t1 = 1.0;
  double diff = 0.0;
  double last = kInf;
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    t0 *= -(mu0 - odd * odd) / (8.0 * k * u);
    t1 *= -(mu1 - odd * odd) / (8.0 * k * u);
    const double d = t0 - t1;
    if (std::fabs(d) > last && k > 2) break;
    diff += d;
    last = std::fabs(d);
    if (last < 1e-17 * std::fabs(diff)) break;
  }
  return diff;
}

bool is_minus_half(double nu) { return nu == -0.5; }

// 1 - I_{nu+1}/I_nu as a signed log value.
SignedLogValue ratio_complement_log(double nu, double u) {
  if (is_minus_half(nu)) {
    // 1 - tanh u = 2 e^{-2u} / (1 + e^{-2u})
    return SignedLogValue::from_log(kLogTwo - 2.0 * u - std::log1p(std::exp(-2.0 * u)));
  }
  if (u > bessel_switch_point(nu) || u > bessel_switch_point(nu + 1.0)) {
    const double s = hankel_sum(nu, u);
    return SignedLogValue::from_real(hankel_difference(nu, u) / s);
  }
  return SignedLogValue::from_real(1.0 - bessel_ratio(nu, u));
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma needs x > 0");
  // boost's lgamma does not touch the global signgam, unlike std::lgamma.
  return boost::math::lgamma(x);
}

double bessel_switch_point(double nu) { return std::max(30.0, nu * nu); }

double log_scaled_i_over_power(double nu, double u) {
  if (!(nu > -1.0)) throw DomainError("Bessel order must satisfy nu > -1");
  if (!(u >= 0.0)) throw DomainError("Bessel argument must satisfy u >= 0");
  if (u == 0.0) return -nu * kLogTwo - log_gamma(nu + 1.0);
  if (u <= bessel_switch_point(nu)) return -u - nu * kLogTwo + log_series_sum(nu, u);
  return -0.5 * (kLogTwoPi + std::log(u)) + std::log(hankel_sum(nu, u)) - nu * std::log(u);
}

SignedLogValue bessel_i_scaled(double nu, double u) {
  if (!(nu > -1.0)) throw DomainError("Bessel order must satisfy nu > -1");
  if (!(u >= 0.0)) throw DomainError("Bessel argument must satisfy u >= 0");
  if (u == 0.0) {
    if (nu == 0.0) return SignedLogValue::from_log(0.0);
    return nu > 0.0 ? SignedLogValue::zero() : SignedLogValue::infinity();
  }
  if (u <= bessel_switch_point(nu))
    return SignedLogValue::from_log(log_scaled_i_over_power(nu, u) + nu * std::log(u));
  return SignedLogValue::from_log(-0.5 * (kLogTwoPi + std::log(u)) + std::log(hankel_sum(nu, u)));
}

double bessel_ratio(double nu, double u) {
  if (!(nu > -1.0)) throw DomainError("Bessel order must satisfy nu > -1");
  if (!(u > 0.0)) throw DomainError("bessel_ratio needs u > 0");
  if (is_minus_half(nu)) return std::tanh(u);
  if (u > bessel_switch_point(nu) || u > bessel_switch_point(nu + 1.0))
    return 1.0 - hankel_difference(nu, u) / hankel_sum(nu, u);
  // Leading series term; the next one is smaller by u^2 / (4 (nu+1)(nu+2)).
  if (u < 1e-10) return u / (2.0 * (nu + 1.0));
  // Modified Lentz on r = 1/(b1 + 1/(b2 + ...)), b_k = 2(nu+k)/u.
  constexpr double tiny = 1e-300;
  double f = 2.0 * (nu + 1.0) / u;
  double c = f;
  double d = 0.0;
  for (int k = 2; k < 100000; ++k) {
    const double b = 2.0 * (nu + k) / u;
    d = b + d;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + 1.0 / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return 1.0 / f;
}

double bessel_ratio_complement(double nu, double u) {
  if (!(nu > -1.0)) throw DomainError("Bessel order must satisfy nu > -1");
  if (!(u > 0.0)) throw DomainError("bessel_ratio needs u > 0");
  return ratio_complement_log(nu, u).to_real();
}

SignedLogValue psi_alpha(double alpha, double u) {
  if (!(alpha > -1.0)) throw DomainError("alpha must satisfy alpha > -1");
  if (!(u > 0.0)) throw DomainError("psi_alpha needs u > 0");
  const SignedLogValue comp = ratio_complement_log(alpha, u);
  return scale_log(comp, log_scaled_i_over_power(alpha, u) + alpha * std::log(u) + u);
}

SignedLogValue phi_alpha(double alpha, double u) {
  if (!(alpha > -1.0)) throw DomainError("alpha must satisfy alpha > -1");
  const double a = std::fabs(u);
  const double base = log_scaled_i_over_power(alpha, a) + a;
  if (u == 0.0) return SignedLogValue::from_log(base);
  if (u > 0.0) return SignedLogValue::from_log(base + std::log1p(bessel_ratio(alpha, a)));
  return scale_log(ratio_complement_log(alpha, a), base);
}

double laguerre_fn(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre_fn needs n >= 0");
  if (!(alpha > -1.0)) throw DomainError("alpha must satisfy alpha > -1");
  const double v = x * x;
  double prev = 1.0;
  double cur = 1.0 + alpha - v;
  if (n == 0) cur = 1.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - v) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  const double log_c = 0.5 * (kLogTwo + log_gamma(n + 1.0) - log_gamma(n + alpha + 1.0));
  return cur * std::exp(log_c - 0.5 * v);
}

double generalized_hermite_fn(int n, double alpha, double x) {
  if (n < 0) throw DomainError("generalized_hermite_fn needs n >= 0");
  const double inv_sqrt2 = 0.70710678118654752440;
  if (n % 2 == 0) {
    const int m = n / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return inv_sqrt2 * sign * laguerre_fn(m, alpha, x);
  }
  const int m = (n - 1) / 2;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return inv_sqrt2 * sign * x * laguerre_fn(m, alpha + 1.0, x);
}

double p_of(double r) {
  if (!(r >= 0.0)) throw DomainError("p_of needs r > 0");
  return 0.5 * std::asinh(r);
}

double log_sinh_2t(double s) {
  const double t2 = 2.0 * std::exp(s);
  if (s < -20.0) return kLogTwo + s + t2 * t2 / 6.0;
  if (t2 < 20.0) return std::log(std::sinh(t2));
  return t2 - kLogTwo + std::log1p(-std::exp(-2.0 * t2));
}

}  // namespace lagpot
