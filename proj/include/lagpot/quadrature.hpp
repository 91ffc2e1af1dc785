#pragma once

// Adaptive quadrature for integrands supplied in log form.
//
// The integrand is a callable s -> SignedLogValue. The routine locates the
// bulk of the integrand by sampling, cuts both infinite tails once the
// integrand has fallen `drop` nats below its maximum, and integrates
// sign * exp(L - Lmax) by globally adaptive 21-point Gauss-Kronrod.

#include "lagpot/signed_log.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace lagpot {

struct QuadratureConfig {
  double rel_tol = 1e-11;
  int max_panels = 3000;
  /// Tails are cut once the integrand is this many nats below its peak.
  double drop = 46.0;
  /// Beyond |s| = s_limit an undecayed tail is extrapolated as an exponential,
  /// or declared divergent if it does not decay.
  double s_limit = 700.0;
  double max_panel_width = 2.0;
  /// Initial panel width beyond the sampled core, refined adaptively.
  double tail_panel_width = 8.0;
  /// Nats below the peak after which a linear log tail is summed exactly.
  double linear_tail_drop = 25.0;
  /// Decay rate (per unit s) below which a tail counts as divergent.
  double min_tail_slope = 1e-3;

  QuadratureConfig tightened(double factor = 0.01) const {
    QuadratureConfig c = *this;
    c.rel_tol = std::max(rel_tol * factor, 1e-14);
    c.max_panels = max_panels * 2;
    c.drop = drop + 10.0;
    return c;
  }
};

struct LogIntegral {
  SignedLogValue value;
  /// Error estimate divided by |value|.
  double achieved_rel_tol = 0.0;
  bool divergent = false;
  int evaluations = 0;
};

namespace detail {

struct GkRule {
  double x[21];
  double wk[21];
  double wg[21];  // zero on non-Gauss nodes
};

inline const GkRule& gk21() {
  static const GkRule rule = [] {
    GkRule r{};
    const auto a = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto w = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto gw = boost::math::quadrature::gauss<double, 10>::weights();
    r.x[10] = 0.0;
    r.wk[10] = w[0];
    r.wg[10] = 0.0;
    for (int i = 1; i <= 10; ++i) {
      r.x[10 - i] = -a[i];
      r.x[10 + i] = a[i];
      r.wk[10 - i] = r.wk[10 + i] = w[i];
      const double g = (i % 2 == 1) ? gw[(i - 1) / 2] : 0.0;
      r.wg[10 - i] = r.wg[10 + i] = g;
    }
    return r;
  }();
  return rule;
}

struct Panel {
  double lo, hi, kronrod, error, abs_sum;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

/// Integrates exp-form integrand f over (a, b); either end may be infinite.
/// `anchors` are interior points used as starting samples and breakpoints
/// (places where the integrand changes character).
template <class F>
LogIntegral integrate_log_domain(F&& f, double a, double b, std::vector<double> anchors,
                                 const QuadratureConfig& cfg = {}) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  LogIntegral out;
  if (!(a < b)) return out;

  std::vector<std::pair<double, SignedLogValue>> samples;
  bool blown = false;
  auto eval = [&](double s) {
    SignedLogValue v = f(s);
    ++out.evaluations;
    if (std::isnan(v.log_abs)) v = SignedLogValue::zero();
    if (v.is_infinite()) blown = true;
    samples.emplace_back(s, v);
    return v;
  };
  auto finite_div = [&] {
    out.value = SignedLogValue::infinity();
    out.divergent = true;
    out.achieved_rel_tol = 0.0;
    return out;
  };

  // Core sample set.
  std::vector<double> core;
  for (double s : anchors)
    if (s > a && s < b && std::isfinite(s)) core.push_back(s);
  if (std::isfinite(a)) core.push_back(a + std::min(0.25, 0.5 * (std::isfinite(b) ? b - a : 1.0)));
  if (std::isfinite(b)) core.push_back(b - std::min(0.25, 0.5 * (std::isfinite(a) ? b - a : 1.0)));
  if (core.empty()) core.push_back(0.0);
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());

  double lmax = -kInf;
  auto track = [&](const SignedLogValue& v) {
    if (v.sign != 0) lmax = std::max(lmax, v.log_abs);
  };
  for (std::size_t i = 0; i < core.size(); ++i) {
    track(eval(core[i]));
    if (i + 1 < core.size()) {
      const double gap = core[i + 1] - core[i];
      const int n = std::min(400, static_cast<int>(std::ceil(gap / 0.5)));
      for (int j = 1; j < n; ++j) track(eval(core[i] + gap * j / n));
    }
  }
  if (std::isfinite(a)) {
    const double gap = core.front() - a;
    const int n = std::min(400, static_cast<int>(std::ceil(gap / 0.5)));
    for (int j = 1; j < n; ++j) track(eval(a + gap * j / n));
  }
  if (std::isfinite(b)) {
    const double gap = b - core.back();
    const int n = std::min(400, static_cast<int>(std::ceil(gap / 0.5)));
    for (int j = 1; j < n; ++j) track(eval(core.back() + gap * j / n));
  }
  if (blown) return finite_div();

  // Walk out along infinite ends. Returns the reached point and any
  // exponential tail contribution beyond it (relative to nothing; absolute log).
  SignedLogValue tail_sum = SignedLogValue::zero();
  auto walk = [&](double start, double dir, double& reached) -> bool {
    double s = start;
    SignedLogValue prev = f(s);
    ++out.evaluations;
    double h = 0.25;
    int below = 0;
    double last_slope = -1.0;
    while (true) {
      s += dir * h;
      const SignedLogValue v = eval(s);
      if (blown) return false;
      track(v);
      const bool small = v.sign == 0 || v.log_abs < lmax - cfg.drop;
      const bool decreasing = v.sign == 0 || prev.sign == 0 ? v.sign == 0 : v.log_abs <= prev.log_abs;
      below = (small && decreasing) ? below + 1 : 0;
      if (below >= 2) break;
      // A tail that is linear in log form is summed in closed form once it is
      // far enough below the peak.
      if (v.sign != 0 && prev.sign != 0 && v.sign == prev.sign && v.log_abs < lmax - cfg.linear_tail_drop) {
        const double slope = (prev.log_abs - v.log_abs) / h;
        if (slope > 0.05 && std::fabs(slope - last_slope) < 1e-3 * slope) {
          tail_sum = tail_sum + SignedLogValue::from_log(v.log_abs - std::log(slope), v.sign);
          break;
        }
        last_slope = slope;
      } else {
        last_slope = -1.0;
      }
      if (std::fabs(s) > cfg.s_limit) {
        if (v.sign == 0 || prev.sign == 0) break;
        const double slope = (prev.log_abs - v.log_abs) / h;
        if (!(slope > cfg.min_tail_slope)) return false;
        tail_sum = tail_sum + SignedLogValue::from_log(v.log_abs - std::log(slope), v.sign);
        break;
      }
      prev = v;
      h = std::min(h * 1.25, 8.0);
    }
    reached = s;
    return true;
  };

  double lo = a, hi = b;
  if (!std::isfinite(a)) {
    if (!walk(core.front(), -1.0, lo)) return finite_div();
  }
  if (!std::isfinite(b)) {
    if (!walk(core.back(), 1.0, hi)) return finite_div();
  }

  // Refine the location of the largest sample by golden section.
  std::sort(samples.begin(), samples.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<double> breaks = {lo, hi};
  if (core.front() - 4.0 > lo) breaks.push_back(core.front() - 4.0);
  if (core.back() + 4.0 < hi) breaks.push_back(core.back() + 4.0);
  for (double s : anchors)
    if (s > lo && s < hi && std::isfinite(s)) breaks.push_back(s);
  if (lmax > -kInf) {
    std::size_t best = 0;
    double best_log = -kInf;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const SignedLogValue& v = samples[i].second;
      if (v.sign != 0 && v.log_abs > best_log) {
        best_log = v.log_abs;
        best = i;
      }
    }
    double l = best > 0 ? samples[best - 1].first : samples[best].first;
    double r = best + 1 < samples.size() ? samples[best + 1].first : samples[best].first;
    l = std::max(l, lo);
    r = std::min(r, hi);
    auto val = [&](double s) {
      const SignedLogValue v = f(s);
      ++out.evaluations;
      return v.sign == 0 ? -kInf : v.log_abs;
    };
    const double g = 0.61803398874989485;
    double c = r - g * (r - l), d = l + g * (r - l);
    double fc = val(c), fd = val(d);
    for (int it = 0; it < 40 && r - l > 1e-4; ++it) {
      if (fc > fd) {
        r = d; d = c; fd = fc; c = r - g * (r - l); fc = val(c);
      } else {
        l = c; c = d; fc = fd; d = l + g * (r - l); fd = val(d);
      }
    }
    const double peak = 0.5 * (l + r);
    if (peak > lo && peak < hi) breaks.push_back(peak);
    lmax = std::max({lmax, fc, fd});
  }
  if (lmax == -kInf && tail_sum.is_zero()) return out;
  if (lmax == -kInf) lmax = tail_sum.log_abs;
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto& rule = detail::gk21();
  bool blown_gk = false;
  double seen_max = lmax;
  auto integrate_panel = [&](double l, double r) {
    const double half = 0.5 * (r - l), mid = 0.5 * (r + l);
    double k = 0.0, gsum = 0.0, abs_sum = 0.0;
    for (int i = 0; i < 21; ++i) {
      const SignedLogValue v = f(mid + half * rule.x[i]);
      ++out.evaluations;
      if (v.is_infinite()) blown_gk = true;
      if (v.sign != 0 && v.log_abs > seen_max) seen_max = v.log_abs;
      const double y = v.sign == 0 || std::isnan(v.log_abs) ? 0.0 : v.sign * std::exp(v.log_abs - lmax);
      k += rule.wk[i] * y;
      gsum += rule.wg[i] * y;
      abs_sum += rule.wk[i] * std::fabs(y);
    }
    k *= half;
    gsum *= half;
    abs_sum *= std::fabs(half);
    const double err = std::fabs(k - gsum) + 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    return detail::Panel{l, r, k, err, abs_sum};
  };

  // Panels can reveal values far above the sampled peak; then the scale is
  // raised and the panel stage repeated.
  std::priority_queue<detail::Panel> heap;
  double tail_scaled = 0.0;
  for (int attempt = 0;; ++attempt) {
    heap = {};
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double l = breaks[i], r = breaks[i + 1];
      const bool outside = r <= core.front() - 4.0 || l >= core.back() + 4.0;
      const double width = outside ? cfg.tail_panel_width : cfg.max_panel_width;
      const int n = std::max(1, static_cast<int>(std::ceil((r - l) / width)));
      for (int j = 0; j < n; ++j) {
        const detail::Panel p = integrate_panel(l + (r - l) * j / n, l + (r - l) * (j + 1) / n);
        total += p.kronrod;
        total_err += p.error;
        heap.push(p);
      }
    }
    if (blown_gk) return finite_div();
    // The tail contribution enters at its own magnitude relative to lmax.
    tail_scaled = tail_sum.is_zero() ? 0.0 : tail_sum.sign * std::exp(tail_sum.log_abs - lmax);
    // Log values of huge magnitude carry absolute rounding noise, which bounds
    // the attainable relative accuracy.
    const double target_tol = std::max(cfg.rel_tol, 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(lmax));
    while (!heap.empty() && static_cast<int>(heap.size()) < cfg.max_panels && seen_max <= lmax + 200.0 &&
           total_err > target_tol * std::fabs(total + tail_scaled)) {
      const detail::Panel worst = heap.top();
      const double m = 0.5 * (worst.lo + worst.hi);
      if (!(m > worst.lo && m < worst.hi)) break;
      heap.pop();
      const detail::Panel p1 = integrate_panel(worst.lo, m);
      const detail::Panel p2 = integrate_panel(m, worst.hi);
      total += p1.kronrod + p2.kronrod - worst.kronrod;
      total_err += p1.error + p2.error - worst.error;
      heap.push(p1);
      heap.push(p2);
      if (blown_gk) return finite_div();
    }

    if (seen_max <= lmax + 200.0 || attempt >= 4) break;
    lmax = seen_max;
  }
  // Recompute the sums from the panels to shed accumulated rounding.
  double total = 0.0, total_err = 0.0;
  for (auto h = heap; !h.empty(); h.pop()) {
    total += h.top().kronrod;
    total_err += h.top().error;
  }
  total += tail_scaled;
  out.value = scale_log(SignedLogValue::from_real(total), lmax);
  out.achieved_rel_tol = total == 0.0 ? 0.0 : total_err / std::fabs(total);
  return out;
}

}  // namespace lagpot
