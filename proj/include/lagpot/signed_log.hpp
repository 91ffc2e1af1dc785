#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>

namespace lagpot {

/// An extended real stored as sign and natural log of the magnitude.
///
/// Kernel values in this library range over several hundred orders of
/// magnitude and may change sign, so every kernel, Bessel value and integral
/// travels in this form. `sign == 0` exactly when `log_abs == -inf`.
struct SignedLogValue {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLogValue zero() { return {}; }
  static SignedLogValue infinity(int s = 1) {
    return {s, std::numeric_limits<double>::infinity()};
  }
  /// Builds from a log-magnitude; a log of -inf collapses to zero.
  static SignedLogValue from_log(double log_abs, int sign = 1);
  static SignedLogValue from_real(double v);

  bool is_zero() const { return sign == 0; }
  bool is_infinite() const { return sign != 0 && log_abs == std::numeric_limits<double>::infinity(); }
  bool is_finite() const { return !is_infinite() && !std::isnan(log_abs); }

  /// Converts back to a double, saturating to +-inf or 0 outside range.
  double to_real() const;

  SignedLogValue operator-() const { return {-sign, log_abs}; }
  SignedLogValue abs() const { return {sign == 0 ? 0 : 1, log_abs}; }
};

SignedLogValue operator*(SignedLogValue a, SignedLogValue b);
SignedLogValue operator/(SignedLogValue a, SignedLogValue b);
SignedLogValue operator+(SignedLogValue a, SignedLogValue b);
SignedLogValue operator-(SignedLogValue a, SignedLogValue b);

inline SignedLogValue& operator*=(SignedLogValue& a, SignedLogValue b) { return a = a * b; }
inline SignedLogValue& operator+=(SignedLogValue& a, SignedLogValue b) { return a = a + b; }

/// Multiplies by a positive real given through its logarithm.
inline SignedLogValue scale_log(SignedLogValue a, double log_factor) {
  if (a.sign == 0) return a;
  return {a.sign, a.log_abs + log_factor};
}

struct Difference {
  SignedLogValue value;
  /// Estimated relative accuracy of `value`, from the cancellation factor.
  double rel_accuracy;
};

/// a - b together with the relative accuracy actually achieved.
Difference subtract_with_accuracy(SignedLogValue a, SignedLogValue b);

/// Compares magnitudes on the log scale: |log|a| - log|b||, with matching
/// signs required. Returns +inf when the signs differ.
double log_distance(SignedLogValue a, SignedLogValue b);

std::ostream& operator<<(std::ostream& os, const SignedLogValue& v);

}  // namespace lagpot
