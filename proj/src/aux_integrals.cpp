#include "lagpot/aux_integrals.hpp"

#include "lagpot/errors.hpp"
#include "lagpot/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_plus(double v) { return v > 1.0 ? std::log(v) : 0.0; }

// A < -1, A = -1, A > -1
int exponent_branch(double A) {
  if (nearly_equal(A, -1.0)) return 0;
  return A < -1.0 ? -1 : 1;
}

SignedLogValue pow_log(double base, double p) {
  if (base == 0.0) {
    if (p > 0.0) return SignedLogValue::zero();
    if (p == 0.0) return SignedLogValue::from_log(0.0);
    return SignedLogValue::infinity();
  }
  return SignedLogValue::from_log(p * std::log(base));
}

}  // namespace

SignedLogValue j_integral(double A, double T, double S, const QuadratureConfig& quad) {
  if (!(T >= 0.0) || !(T <= S) || !std::isfinite(T))
    throw DomainError("J_A(T,S) needs 0 <= T <= S <= inf with T finite");
  if (T == S) return SignedLogValue::zero();
  if (T == 0.0 && A <= -1.0) return SignedLogValue::infinity();
  const double a = T > 0.0 ? std::log(T) : -kInf;
  const double b = std::isinf(S) ? kInf : std::log(S);
  std::vector<double> anchors = {0.0};
  if (A > -1.0) anchors.push_back(std::log(A + 1.0));
  if (std::isfinite(a) && std::isfinite(b)) anchors.push_back(0.5 * (a + b));
  auto f = [A](double s) { return SignedLogValue::from_log((A + 1.0) * s - std::exp(s)); };
  return integrate_log_domain(f, a, b, anchors, quad).value;
}

SignedLogValue e_integral(double A, double T, double S, const QuadratureConfig& quad) {
  if (!(T >= 0.0) || !(S >= 0.0) || !std::isfinite(T) || !std::isfinite(S))
    throw DomainError("E_A(T,S) needs finite T, S >= 0");
  if (T == 0.0 && A <= -1.0) return SignedLogValue::infinity();
  // t = e^{-s}, s in (0, inf)
  auto f = [A, T, S](double s) {
    return SignedLogValue::from_log(-(A + 1.0) * s - T * std::exp(s) - S * std::exp(-s));
  };
  std::vector<double> anchors = {0.5, 2.0};
  if (T > 0.0) {
    const double b = A + 1.0;
    const double w = (-b + std::sqrt(b * b + 4.0 * T * S)) / (2.0 * T);
    if (w > 1.0) anchors.push_back(std::log(w));
    anchors.push_back(std::max(0.1, -std::log(T)));
  }
  return integrate_log_domain(f, 0.0, kInf, anchors, quad).value;
}

JCase j_case(double T, double S, double beta, double gamma) {
  if (!(beta > 1.0) || !(gamma > 0.0)) throw DomainError("J envelope needs beta > 1 and gamma > 0");
  if (!(T >= 0.0) || !(T <= S) || !std::isfinite(T))
    throw DomainError("J_A(T,S) needs 0 <= T <= S <= inf with T finite");
  if (S <= beta * T) return JCase::SmallGap;
  if (T >= gamma) return JCase::LargeT;
  if (S >= beta * gamma) return JCase::LargeS;
  return JCase::SmallS;
}

EnvelopeShape j_envelope_shape(double A, double T, double S, double beta, double gamma) {
  const JCase c = j_case(T, S, beta, gamma);
  const int br = exponent_branch(A);
  EnvelopeShape e;
  switch (c) {
    case JCase::SmallGap:
      e.base = S == T ? SignedLogValue::zero() : pow_log(T, A) * SignedLogValue::from_real(S - T);
      e.decay = T;
      e.has_exponential = true;
      break;
    case JCase::LargeT:
      e.base = SignedLogValue::from_log(A * std::log(T) - T);
      break;
    case JCase::LargeS:
      if (br < 0) e.base = pow_log(T, A + 1.0);
      else if (br == 0) e.base = T == 0.0 ? SignedLogValue::infinity() : SignedLogValue::from_real(1.0 + log_plus(1.0 / T));
      else e.base = SignedLogValue::from_log(0.0);
      break;
    case JCase::SmallS:
      if (br < 0) e.base = pow_log(T, A + 1.0);
      else if (br == 0) e.base = T == 0.0 ? SignedLogValue::infinity() : SignedLogValue::from_real(std::log(S / T));
      else e.base = pow_log(S, A + 1.0);
      break;
  }
  return e;
}

EnvelopeShape e_envelope_shape(double A, double T, double S, double gamma) {
  if (!(T >= 0.0) || !(S >= 0.0)) throw DomainError("E envelope needs T, S >= 0");
  if (!(gamma > 0.0)) throw DomainError("E envelope needs gamma > 0");
  const double m = std::max(T, S);
  const int br = exponent_branch(A);
  EnvelopeShape e;
  e.has_exponential = true;
  e.decay = std::sqrt(T * m);
  if (br < 0) e.base = pow_log(T, A + 1.0);
  else if (br == 0) e.base = T * m == 0.0 ? SignedLogValue::infinity()
                                          : SignedLogValue::from_real(1.0 + log_plus(1.0 / (T * m)));
  else e.base = pow_log(std::max(S, gamma), -A - 1.0);
  return e;
}

}  // namespace lagpot
