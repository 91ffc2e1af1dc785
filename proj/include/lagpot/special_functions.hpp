#pragma once

#include "lagpot/signed_log.hpp"

namespace lagpot {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// e^{-u} I_nu(u) for nu > -1, u >= 0.
///
/// Ascending series for u <= bessel_switch_point(nu), Hankel's large-argument
/// expansion above. At u = 0 the value is 1 (nu = 0), 0 (nu > 0) or +inf.
SignedLogValue bessel_i_scaled(double nu, double u);

/// Argument above which bessel_i_scaled uses the asymptotic expansion.
double bessel_switch_point(double nu);

/// log(u^{-nu} e^{-u} I_nu(u)), finite for every u >= 0 including u = 0.
double log_scaled_i_over_power(double nu, double u);

/// I_{nu+1}(u) / I_nu(u) for u > 0.
double bessel_ratio(double nu, double u);

/// 1 - I_{nu+1}(u) / I_nu(u), computed without cancellation for large u.
double bessel_ratio_complement(double nu, double u);

/// Psi_alpha(u) = I_alpha(u) - I_{alpha+1}(u) for u > 0 (unscaled).
SignedLogValue psi_alpha(double alpha, double u);

/// Phi_alpha(u) = |u|^{-alpha} [I_alpha(|u|) + sgn(u) I_{alpha+1}(|u|)], with
/// Phi_alpha(0) = 2^{-alpha} / Gamma(alpha + 1).
SignedLogValue phi_alpha(double alpha, double u);

/// Orthonormal Laguerre function of convolution type,
/// c_n L_n^alpha(x^2) e^{-x^2/2} with c_n = sqrt(2 n! / Gamma(n + alpha + 1)).
/// Even in x.
double laguerre_fn(int n, double alpha, double x);

/// Generalized Hermite function h_n^alpha, orthonormal in L^2(|x|^{2alpha+1} dx).
double generalized_hermite_fn(int n, double alpha, double x);

/// p(r) = asinh(r) / 2, the solution of sinh(2 p) = r.
double p_of(double r);

/// log sinh(2t) written in terms of s = log t, accurate for all s.
double log_sinh_2t(double s);

}  // namespace lagpot
