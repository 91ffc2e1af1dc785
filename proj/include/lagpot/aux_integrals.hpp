#pragma once

#include "lagpot/envelopes.hpp"
#include "lagpot/quadrature.hpp"
#include "lagpot/signed_log.hpp"

namespace lagpot {

/// Exponent and limits of J_A(T, S) or E_A(T, S), plus the case-splitting
/// constants beta > 1 and gamma > 0 used by the J envelope.
struct AuxParams {
  double A = 0.0;
  double T = 0.0;
  double S = 0.0;
  double beta = 2.0;
  double gamma = 1.0;
};

/// J_A(T, S) = int_T^S t^A e^{-t} dt for 0 <= T <= S <= inf, T < inf.
/// +inf when T = 0 and A <= -1.
SignedLogValue j_integral(double A, double T, double S, const QuadratureConfig& quad = {});

/// E_A(T, S) = int_0^1 t^A exp(-T/t - S t) dt for T, S >= 0.
/// +inf exactly when T = 0 and A <= -1.
SignedLogValue e_integral(double A, double T, double S, const QuadratureConfig& quad = {});

/// Which of the four (T, S) regimes of the J envelope applies.
enum class JCase { SmallGap, LargeT, LargeS, SmallS };

JCase j_case(double T, double S, double beta, double gamma);

/// Envelope shape for J_A(T, S):
///   SmallGap  S <= beta T:                      T^A (S - T) e^{-c T}
///   LargeT    S > beta T, T >= gamma:           T^A e^{-T}
///   LargeS    S > beta T, S >= beta gamma, T < gamma:
///                                               T^{A+1} | 1 + log+(1/T) | 1
///   SmallS    S > beta T, S < beta gamma:       T^{A+1} | log(S/T) | S^{A+1}
/// with the three alternatives for A < -1, A = -1, A > -1.
EnvelopeShape j_envelope_shape(double A, double T, double S, double beta = 2.0, double gamma = 1.0);

/// Envelope shape for E_A(T, S): exp(-c sqrt(T (T v S))) times
/// T^{A+1} | 1 + log+(1/(T (T v S))) | (S v gamma)^{-A-1}.
EnvelopeShape e_envelope_shape(double A, double T, double S, double gamma = 1.0);

inline EnvelopeBounds j_envelope(double A, double T, double S, double beta, double gamma,
                                 const EnvelopeConstants& consts) {
  return j_envelope_shape(A, T, S, beta, gamma).bounds(consts);
}

inline EnvelopeBounds e_envelope(double A, double T, double S, double gamma, const EnvelopeConstants& consts) {
  return e_envelope_shape(A, T, S, gamma).bounds(consts);
}

}  // namespace lagpot
