#include "doctest.h"

#include "lagpot/params.hpp"
#include "lagpot/signed_log.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace lagpot;

TEST_CASE("zero and sign invariant") {
  CHECK(SignedLogValue::zero().sign == 0);
  CHECK(SignedLogValue::from_log(-INFINITY).sign == 0);
  CHECK(SignedLogValue::from_real(0.0).is_zero());
  const SignedLogValue v = SignedLogValue::from_real(-3.0);
  CHECK(v.sign == -1);
  CHECK(v.log_abs == doctest::Approx(std::log(3.0)));
}

TEST_CASE("to_real saturates outside the double range") {
  CHECK(SignedLogValue::from_log(1000.0).to_real() == std::numeric_limits<double>::infinity());
  CHECK(SignedLogValue::from_log(1000.0, -1).to_real() == -std::numeric_limits<double>::infinity());
  CHECK(SignedLogValue::from_log(-1000.0).to_real() == 0.0);
  CHECK(SignedLogValue::from_log(std::log(2.5)).to_real() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("multiplication adds logs and multiplies signs") {
  const SignedLogValue a = SignedLogValue::from_log(500.0, -1), b = SignedLogValue::from_log(400.0, -1);
  const SignedLogValue p = a * b;
  CHECK(p.sign == 1);
  CHECK(p.log_abs == 900.0);
  CHECK((a * SignedLogValue::zero()).is_zero());
  const SignedLogValue q = a / b;
  CHECK(q.sign == 1);
  CHECK(q.log_abs == doctest::Approx(100.0));
}

TEST_CASE("same-sign addition is accurate to 1e-14") {
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(u(rng)), y = std::exp(u(rng));
    const SignedLogValue s = SignedLogValue::from_real(x) + SignedLogValue::from_real(y);
    CHECK(std::fabs(s.to_real() / (x + y) - 1.0) <= 1e-14);
  }
  // Far outside the double range.
  const SignedLogValue big = SignedLogValue::from_log(2000.0) + SignedLogValue::from_log(2000.0);
  CHECK(big.log_abs == doctest::Approx(2000.0 + std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("subtraction reports the cancellation it suffered") {
  const SignedLogValue a = SignedLogValue::from_real(1.0), b = SignedLogValue::from_real(1.0 - 1e-8);
  const Difference d = subtract_with_accuracy(a, b);
  CHECK(d.value.sign == 1);
  CHECK(d.rel_accuracy > 1e-9);
  CHECK(d.rel_accuracy < 1e-7);
  const Difference exact = subtract_with_accuracy(a, a);
  CHECK(exact.value.is_zero());
  const Difference opposite = subtract_with_accuracy(a, -b);
  CHECK(opposite.rel_accuracy < 1e-15);
  CHECK(opposite.value.to_real() == doctest::Approx(2.0 - 1e-8));
}

TEST_CASE("log_distance requires matching signs") {
  CHECK(log_distance(SignedLogValue::from_real(2.0), SignedLogValue::from_real(-2.0)) == INFINITY);
  CHECK(log_distance(SignedLogValue::from_real(2.0), SignedLogValue::from_real(4.0)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("Params validation") {
  CHECK_THROWS_AS(Params::make(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Params::make(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(Params::make(0.0, NAN), DomainError);
  CHECK_NOTHROW(Params::make(-0.99, 0.01));
  CHECK_THROWS_AS(Params::make_dunkl_envelope(-0.5, 1.0), DomainError);
  CHECK_NOTHROW(Params::make_dunkl_envelope(-0.49, 1.0));
}
