#include "lagpot/signed_log.hpp"

#include <algorithm>
#include <ostream>

namespace lagpot {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

SignedLogValue SignedLogValue::from_log(double log_abs, int sign) {
  if (sign == 0 || log_abs == -kInf) return zero();
  return {sign > 0 ? 1 : -1, log_abs};
}

SignedLogValue SignedLogValue::from_real(double v) {
  if (v == 0.0) return zero();
  return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
}

double SignedLogValue::to_real() const {
  if (sign == 0) return 0.0;
  // exp saturates to inf / 0 on its own.
  return sign * std::exp(log_abs);
}

SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
  if (a.sign == 0 || b.sign == 0) return SignedLogValue::zero();
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
  if (b.sign == 0) return SignedLogValue::infinity(a.sign == 0 ? 1 : a.sign);
  if (a.sign == 0) return a;
  return {a.sign * b.sign, a.log_abs - b.log_abs};
}

SignedLogValue operator+(SignedLogValue a, SignedLogValue b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  if (a.log_abs == kInf) {
    if (b.log_abs == kInf && a.sign != b.sign) return {0, std::numeric_limits<double>::quiet_NaN()};
    return a;
  }
  const double delta = b.log_abs - a.log_abs;  // <= 0
  if (a.sign == b.sign) return {a.sign, a.log_abs + std::log1p(std::exp(delta))};
  if (delta == 0.0) return SignedLogValue::zero();
  return {a.sign, a.log_abs + std::log1p(-std::exp(delta))};
}

SignedLogValue operator-(SignedLogValue a, SignedLogValue b) { return a + (-b); }

Difference subtract_with_accuracy(SignedLogValue a, SignedLogValue b) {
  const SignedLogValue d = a - b;
  if (a.sign == 0 || b.sign == 0 || a.sign != b.sign) return {d, kEps};
  if (d.sign == 0) return {d, kInf};
  const double larger = std::max(a.log_abs, b.log_abs);
  return {d, kEps * std::exp(larger - d.log_abs)};
}

double log_distance(SignedLogValue a, SignedLogValue b) {
  if (a.sign != b.sign) return kInf;
  if (a.sign == 0) return 0.0;
  if (a.log_abs == b.log_abs) return 0.0;
  return std::fabs(a.log_abs - b.log_abs);
}

std::ostream& operator<<(std::ostream& os, const SignedLogValue& v) {
  return os << "{sign=" << v.sign << ", log=" << v.log_abs << "}";
}

}  // namespace lagpot
