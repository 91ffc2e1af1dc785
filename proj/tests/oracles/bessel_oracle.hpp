#pragma once

// Extended-precision reference values for the Bessel family, independent of
// the library code paths.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// I_nu(u) by its ascending series summed in 50-digit arithmetic.
inline Float50 bessel_i_series(double nu, double u, int max_terms = 4000) {
  const Float50 q = Float50(u) * Float50(u) / 4;
  Float50 term = boost::multiprecision::pow(Float50(u) / 2, Float50(nu)) / boost::math::tgamma(Float50(nu) + 1);
  Float50 sum = term;
  for (int k = 1; k < max_terms; ++k) {
    term *= q / (Float50(k) * (Float50(nu) + k));
    sum += term;
    if (k > u && term < sum * Float50("1e-45")) break;
  }
  return sum;
}

/// log(e^{-u} I_nu(u)).
inline double log_bessel_i_scaled(double nu, double u) {
  return static_cast<double>(boost::multiprecision::log(bessel_i_series(nu, u))) - u;
}

/// I_{nu+1}(u) / I_nu(u).
inline double bessel_ratio(double nu, double u) {
  return static_cast<double>(bessel_i_series(nu + 1.0, u) / bessel_i_series(nu, u));
}

/// I_nu(u) - I_{nu+1}(u), exact sign, as (sign, log|.|).
inline std::pair<int, double> psi(double nu, double u) {
  const Float50 d = bessel_i_series(nu, u) - bessel_i_series(nu + 1.0, u);
  if (d == 0) return {0, -INFINITY};
  return {d > 0 ? 1 : -1, static_cast<double>(boost::multiprecision::log(boost::multiprecision::abs(d)))};
}

}  // namespace oracle
