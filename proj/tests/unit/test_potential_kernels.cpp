#include "doctest.h"

#include "lagpot/aux_integrals.hpp"
#include "lagpot/errors.hpp"
#include "lagpot/potential_kernels.hpp"
#include "quadrature_oracles.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace lagpot;

namespace {

const Params P(double a, double s) { return Params::make(a, s); }

double K(KernelKind kind, double a, double s, double x, double y) {
  return potential_kernel(kind, P(a, s), x, y).log_abs;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return v;
}

}  // namespace

TEST_CASE("spectral identity at (alpha, sigma, x) = (0.5, 1, 1)") {
  const double a = 0.5, s = 1.0, x = 1.0;
  auto f = [&](double y) {
    return potential_kernel(KernelKind::Convolution, P(a, s), x, y).to_real() * std::exp(-0.5 * y * y) *
           std::pow(y, 2.0 * a + 1.0);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double lhs = ts.integrate(f, 0.0, x, 1e-10) + oracle::half_line([&](double z) { return f(x + z); });
  CHECK(lhs == doctest::Approx(std::pow(2.0 * a + 2.0, -s) * std::exp(-0.5 * x * x)).epsilon(1e-6));
}

TEST_CASE("kernels match the subordination oracle") {
  for (double a : {-0.75, 0.0, 1.5})
    for (double s : {0.3, 1.0, 2.5})
      for (double x : {0.3, 1.2})
        for (double y : {0.5, 2.0}) {
          const double o = oracle::subordinate([&](double t) { return oracle::laguerre_heat(a, t, x, y); }, s);
          CHECK(potential_kernel(KernelKind::Convolution, P(a, s), x, y).to_real() == doctest::Approx(o).epsilon(1e-9));
          for (double yy : {y, -y}) {
            const double od = oracle::subordinate([&](double t) { return oracle::dunkl_heat(a, t, x, yy); }, s);
            CHECK(potential_kernel(KernelKind::Dunkl, P(a, s), x, yy).to_real() == doctest::Approx(od).epsilon(1e-9));
          }
        }
}

TEST_CASE("hermite-type kernel is (xy)^{alpha+1/2} K") {
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> a_d(-0.9, 2.0), s_d(0.1, 3.0), x_d(0.01, 6.0);
  for (int i = 0; i < 10; ++i) {
    const double a = a_d(rng), s = s_d(rng), x = x_d(rng), y = x_d(rng);
    const double kh = K(KernelKind::HermiteType, a, s, x, y);
    const double want = K(KernelKind::Convolution, a, s, x, y) + (a + 0.5) * std::log(x * y);
    CHECK(std::fabs(kh - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("Dunkl kernel goes negative on the anti-diagonal for alpha < -1/2") {
  const SignedLogValue v = potential_kernel(KernelKind::Dunkl, P(-0.75, 1.0), 10.0, -10.0);
  CHECK(v.sign == -1);
  CHECK(potential_kernel(KernelKind::Dunkl, P(-0.75, 1.0), 3.0, -3.0).sign == -1);
  CHECK(potential_kernel(KernelKind::Dunkl, P(-0.75, 1.0), 3.0, 3.0).sign == 1);
}

TEST_CASE("Dunkl kernel at alpha = -1/2 relates to the convolution kernels") {
  for (double s : {0.3, 1.5})
    for (double x : {0.4, 2.0})
      for (double y : {0.7, 3.0}) {
        const SignedLogValue lhs = scale_log(potential_kernel(KernelKind::Dunkl, P(-0.5, s), x, y), std::log(2.0));
        const SignedLogValue rhs = potential_kernel(KernelKind::Convolution, P(-0.5, s), x, y) +
                                   scale_log(potential_kernel(KernelKind::Convolution, P(0.5, s), x, y), std::log(x * y));
        CHECK(std::fabs(std::expm1(lhs.log_abs - rhs.log_abs)) <= 1e-7);
      }
}

TEST_CASE("symmetries") {
  for (KernelKind kind : {KernelKind::Convolution, KernelKind::HermiteType, KernelKind::DunklAux})
    for (double x : {0.2, 1.5})
      for (double y : {0.9, 4.0})
        CHECK(std::fabs(K(kind, 0.3, 0.7, x, y) - K(kind, 0.3, 0.7, y, x)) <= 1e-12 * std::max(1.0, std::fabs(K(kind, 0.3, 0.7, x, y))));
  for (double a : {-0.75, 0.5})
    for (double x : {-2.0, 0.3, 1.5})
      for (double y : {-0.9, 4.0}) {
        const SignedLogValue v = potential_kernel(KernelKind::Dunkl, P(a, 0.7), x, y);
        const SignedLogValue w = potential_kernel(KernelKind::Dunkl, P(a, 0.7), y, x);
        const SignedLogValue m = potential_kernel(KernelKind::Dunkl, P(a, 0.7), -x, -y);
        CHECK(v.sign == w.sign);
        CHECK(v.sign == m.sign);
        CHECK(std::fabs(v.log_abs - w.log_abs) <= 1e-12 * std::max(1.0, std::fabs(v.log_abs)));
        CHECK(std::fabs(v.log_abs - m.log_abs) <= 1e-12 * std::max(1.0, std::fabs(v.log_abs)));
      }
}

TEST_CASE("diagonal and domain handling") {
  CHECK(potential_kernel(KernelKind::Convolution, P(0.0, 0.3), 1.0, 1.0).is_infinite());
  CHECK(potential_kernel(KernelKind::Convolution, P(0.0, 0.5), 1.0, 1.0).is_infinite());
  CHECK(potential_kernel(KernelKind::Dunkl, P(0.0, 0.3), -1.0, -1.0).is_infinite());
  CHECK(potential_kernel(KernelKind::Dunkl, P(0.0, 0.3), 1.0, -1.0).is_finite());
  CHECK(potential_kernel(KernelKind::Convolution, P(0.0, 0.7), 1.0, 1.0).is_finite());
  CHECK_THROWS_AS(potential_kernel(KernelKind::Convolution, P(0.0, 1.0), -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(potential_kernel(KernelKind::HermiteType, P(0.0, 1.0), 0.0, 1.0), DomainError);
}

TEST_CASE("|K_D| <= C K(|x|,|y|) and K_D ~ K for x, y > 0") {
  const std::vector<double> g = log_grid(0.05, 4.0, 7);
  for (double a : {0.0, 1.5}) {
    double worst_abs = -INFINITY, lo = INFINITY, hi = -INFINITY, tlo = INFINITY, thi = -INFINITY;
    for (double x : g)
      for (double y : g) {
        if (std::fabs(x - y) < 1e-3 * (x + y)) continue;
        const double k = K(KernelKind::Convolution, a, 0.7, x, y);
        const double same = K(KernelKind::Dunkl, a, 0.7, x, y), opp = K(KernelKind::Dunkl, a, 0.7, x, -y);
        worst_abs = std::max({worst_abs, same - k, opp - k});
        lo = std::min(lo, same - k);
        hi = std::max(hi, same - k);
        const double aux = K(KernelKind::DunklAux, a, 0.7, x, y);
        tlo = std::min(tlo, opp - aux);
        thi = std::max(thi, opp - aux);
      }
    CHECK(worst_abs <= std::log(10.0));
    CHECK(std::exp(hi - lo) <= 10.0);
    CHECK(std::exp(thi - tlo) <= 10.0);
  }
}

TEST_CASE("convolution envelope shapes") {
  // (0, 2), x + y <= 1: 1 + (x+y)^{2sigma-2alpha-2}.
  const EnvelopeShape a = conv_envelope_shape(P(0.0, 2.0), 0.2, 0.3);
  CHECK(a.base.log_abs == doctest::Approx(std::log(1.0 + 0.25)).epsilon(1e-14));
  CHECK_FALSE(a.has_exponential);
  // sigma = 1/2, x + y > 1: (x+y)^{-2alpha-1} (1 + log+(1/(|x-y|(x+y)))).
  const EnvelopeShape b = conv_envelope_shape(P(0.5, 0.5), 1.0, 1.1);
  CHECK(b.has_exponential);
  CHECK(b.decay == doctest::Approx(0.1 * 2.1));
  CHECK(b.base.log_abs == doctest::Approx(-2.0 * std::log(2.1) + std::log(1.0 + std::log(1.0 / 0.21))).epsilon(1e-12));
  CHECK(conv_envelope_shape(P(0.0, 0.3), 0.4, 0.4).base.is_infinite());
  // sigma = alpha + 1 adds log(1/(x+y)).
  const EnvelopeShape c = conv_envelope_shape(P(0.0, 1.0), 0.1, 0.2);
  CHECK(c.base.log_abs == doctest::Approx(std::log(std::log(1.0 / 0.3) + 1.0)).epsilon(1e-12));
}

TEST_CASE("Dunkl and oscillator envelope shapes") {
  const EnvelopeShape b1 = dunkl_envelope_shape(P(0.5, 0.3), 1e-3, -1e-3);
  CHECK(b1.base.is_finite());
  CHECK(b1.base.log_abs == doctest::Approx((2.0 * 0.3 - 3.0) * std::log(2e-3)).epsilon(1e-12));
  const EnvelopeShape b2 = dunkl_envelope_shape(P(0.5, 0.7), 3.0, -2.0);
  CHECK(b2.decay == doctest::Approx(5.0 * 1.0));
  CHECK(hermite_osc_envelope_shape(0.7, 3.0, -2.0).decay == doctest::Approx(5.0 * 5.0));
  CHECK_THROWS_AS(dunkl_envelope_shape(P(-0.5, 0.7), 1.0, 2.0), DomainError);

  const EnvelopeShape anti = hermite_osc_envelope_shape(0.8, 2.0, -2.0);
  CHECK(anti.base.log_abs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(anti.decay == doctest::Approx(16.0));
  CHECK(hermite_osc_envelope_shape(0.3, 1.0, 1.0).base.is_infinite());
  const EnvelopeShape mid = hermite_osc_envelope_shape(0.5, 5.001, 5.0);
  CHECK(mid.base.log_abs == doctest::Approx(std::log(1.0 + std::log(1.0 / (0.001 * 10.001)))).epsilon(1e-9));

  // For x, y > 0 the alpha = -1/2 convolution shape and the oscillator shape
  // are comparable (sigma < 1/2).
  double lo = INFINITY, hi = -INFINITY;
  for (double x : log_grid(0.01, 10.0, 15))
    for (double y : log_grid(0.013, 9.0, 15)) {
      const double r = conv_envelope_shape(P(-0.5, 0.3), x, y).base.log_abs - hermite_osc_envelope_shape(0.3, x, y).base.log_abs;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  CHECK(std::exp(hi - lo) <= 4.0);
}

TEST_CASE("J/E decomposition") {
  const Params p = P(0.3, 0.8);
  const double x = 2.0, y = 1.5;
  const JEDecomposition d = exp_je_decomposition(KernelKind::Convolution, p, x, y);
  const SignedLogValue want = SignedLogValue::from_log(-kJELowerDefault.c_exp * 3.5 * 3.5) +
                              scale_log(e_integral(0.8 - 1.5, kJELowerDefault.c_E * 0.25, kJELowerDefault.c_E * 3.5 * 3.5),
                                        (-0.3 - 0.5) * std::log(3.0));
  CHECK(d.lower.log_abs == doctest::Approx(want.log_abs).epsilon(1e-13));
  const JEDecomposition aux = exp_je_decomposition(KernelKind::DunklAux, p, x, y);
  const SignedLogValue want_aux = SignedLogValue::from_log(-kJEUpperDefault.c_exp * 3.5 * 3.5) +
                                  scale_log(e_integral(0.8 - 0.5, kJEUpperDefault.c_E * 0.25, kJEUpperDefault.c_E * 3.5 * 3.5),
                                            (-0.3 - 1.5) * std::log(3.0));
  CHECK(aux.upper.log_abs == doctest::Approx(want_aux.log_abs).epsilon(1e-13));
  CHECK_THROWS_AS(exp_je_decomposition(KernelKind::Dunkl, p, x, y), DomainError);
  CHECK_THROWS_AS(exp_je_decomposition(KernelKind::Convolution, p, x, y, {1.0, 0.5, 0.5, 1.0}), DomainError);
}

TEST_CASE("J/E decomposition sandwiches the kernel at 100 random points") {
  // With the default constants the measured band over these parameters is
  // about 28.
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (KernelKind kind : {KernelKind::Convolution, KernelKind::DunklAux}) {
    for (double a : {-0.75, 0.0, 1.5}) {
      for (double s : {0.3, 1.0, 2.5}) {
        double worst = -INFINITY;
        for (int i = 0; i < 100; ++i) {
          const double x = std::pow(10.0, -2.0 + 3.0 * u(rng)), y = std::pow(10.0, -2.0 + 3.0 * u(rng));
          if (std::fabs(x - y) < 1e-3 * (x + y)) continue;
          const double k = K(kind, a, s, x, y);
          const JEDecomposition d = exp_je_decomposition(kind, P(a, s), x, y);
          worst = std::max({worst, d.lower.log_abs - k, k - d.upper.log_abs});
        }
        CHECK(std::exp(worst) <= 50.0);
      }
    }
  }
}

TEST_CASE("calibrate_envelope examples") {
  CalibrationDomain small;
  small.grid = GridSpec::parse("log:0.01:1:12");
  small.region = PlaneRegion::Small;
  small.diagonal_gap = 1e-4;
  const RatioReport r = calibrate_envelope(KernelKind::Convolution, P(0.0, 0.3), small, EnvelopeSelector::Convolution);
  CHECK(std::isfinite(r.fitted.C_ratio));
  CHECK(r.fitted.C_ratio >= 1.0);
  CHECK(r.min_ratio <= r.max_ratio);

  CalibrationDomain large;
  large.grid = GridSpec::parse("log:0.05:10:12");
  large.region = PlaneRegion::Large;
  const RatioReport l = calibrate_envelope(KernelKind::Convolution, P(0.5, 0.7), large, EnvelopeSelector::Convolution);
  CHECK(l.fitted.c_lower >= l.fitted.c_upper);
  CHECK(l.fitted.c_upper > 0.0);

  CalibrationDomain one;
  one.grid = GridSpec::parse("log:0.3:0.3:1");
  one.opposite_sign = true;
  const RatioReport o = calibrate_envelope(KernelKind::Dunkl, P(0.5, 0.7), one, EnvelopeSelector::Dunkl);
  CHECK(o.points == 1);
  CHECK(o.min_ratio == o.max_ratio);

  CalibrationDomain diag;
  diag.grid = GridSpec::parse("log:0.1:1:5");
  CHECK_THROWS_AS(calibrate_envelope(KernelKind::Convolution, P(0.0, 0.3), diag, EnvelopeSelector::Convolution), DomainError);
  CHECK_THROWS_AS(calibrate_envelope(KernelKind::Dunkl, P(-0.75, 0.7), one, EnvelopeSelector::Dunkl), DomainError);
}

TEST_CASE("calibration is deterministic") {
  CalibrationDomain d;
  d.grid = GridSpec::parse("log:0.02:3:10");
  d.diagonal_gap = 1e-3;
  const RatioReport a = calibrate_envelope(KernelKind::Convolution, P(1.0, 0.6), d, EnvelopeSelector::Convolution);
  const RatioReport b = calibrate_envelope(KernelKind::Convolution, P(1.0, 0.6), d, EnvelopeSelector::Convolution);
  CHECK(a.log_max_ratio == b.log_max_ratio);
  CHECK(a.log_min_ratio == b.log_min_ratio);
  CHECK(a.fitted.C_ratio == b.fitted.C_ratio);
}

TEST_CASE("logarithmic growth at sigma = alpha + 1 near the origin") {
  // Along x = y/2 -> 0 with sigma = alpha + 1, K grows like log(1/(x+y)).
  std::vector<double> logs, ks;
  for (double S : {1e-2, 1e-3, 1e-4, 1e-5}) {
    logs.push_back(std::log(1.0 / S));
    ks.push_back(std::exp(K(KernelKind::Convolution, 0.0, 1.0, S / 3.0, 2.0 * S / 3.0)));
  }
  for (std::size_t i = 1; i < ks.size(); ++i) {
    const double slope = (ks[i] - ks[i - 1]) / (logs[i] - logs[i - 1]);
    CHECK(slope > 0.0);
    CHECK(slope < 10.0);
  }
}
