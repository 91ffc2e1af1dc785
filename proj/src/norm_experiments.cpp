#include "lagpot/norm_experiments.hpp"

#include "lagpot/errors.hpp"
#include "lagpot/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lagpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = 2.71828182845904523536;

using Interval = std::pair<double, double>;

LogIntegral divergent_result() {
  LogIntegral r;
  r.value = SignedLogValue::infinity();
  r.divergent = true;
  return r;
}

// Accumulates signed pieces and their absolute error estimates.
struct Accumulator {
  SignedLogValue total = SignedLogValue::zero();
  SignedLogValue abs_error = SignedLogValue::zero();
  int evaluations = 0;
  bool divergent = false;

  void add(const LogIntegral& r) {
    evaluations += r.evaluations;
    if (r.divergent) {
      divergent = true;
      return;
    }
    total += r.value;
    if (!r.value.is_zero()) abs_error += scale_log(r.value.abs(), std::log(std::max(r.achieved_rel_tol, 1e-300)));
  }

  LogIntegral result() const {
    if (divergent) {
      LogIntegral d = divergent_result();
      d.evaluations = evaluations;
      return d;
    }
    LogIntegral r;
    r.value = total;
    r.evaluations = evaluations;
    r.achieved_rel_tol = total.is_zero() ? 0.0 : std::exp(abs_error.log_abs - total.log_abs);
    return r;
  }
};

bool is_dunkl(KernelKind k) { return k == KernelKind::Dunkl; }

// Sets of y where the split kernel row at x is active, inside the kernel's
// coordinate domain.
std::vector<Interval> split_support(const SplitKernel& split, double x) {
  const bool real_line = is_dunkl(split.kind);
  const double lo = real_line ? -kInf : 0.0;
  switch (split.part) {
    case SplitPart::Full: return {{lo, kInf}};
    case SplitPart::Local:
      if (std::fabs(x) > 2.0) return {};
      return {{real_line ? -2.0 : 0.0, 2.0}};
    case SplitPart::Global:
      if (std::fabs(x) > 2.0) return {{lo, kInf}};
      if (real_line) return {{-kInf, -2.0}, {2.0, kInf}};
      return {{2.0, kInf}};
  }
  return {};
}

std::vector<Interval> intersect(const std::vector<Interval>& a, double lo, double hi) {
  std::vector<Interval> out;
  for (const auto& iv : a) {
    const double l = std::max(iv.first, lo), h = std::min(iv.second, hi);
    if (l < h) out.push_back({l, h});
  }
  return out;
}

double scale_anchor(double v) { return -std::log1p(2.0 * std::fabs(v)); }

}  // namespace

bool SplitKernel::active(double x, double y) const {
  const bool local = std::fabs(x) <= 2.0 && std::fabs(y) <= 2.0;
  switch (part) {
    case SplitPart::Full: return true;
    case SplitPart::Local: return local;
    case SplitPart::Global: return !local;
  }
  return true;
}

LogIntegral SplitKernel::evaluate(double x, double y, double diff, const QuadratureConfig& quad) const {
  if (!active(x, y)) return {};
  return potential_kernel_diff(kind, params, x, y, diff, quad);
}

Measure natural_measure(KernelKind kind) {
  switch (kind) {
    case KernelKind::Convolution:
    case KernelKind::DunklAux: return Measure::Mu;
    case KernelKind::HermiteType: return Measure::Lebesgue;
    case KernelKind::Dunkl: return Measure::W;
  }
  return Measure::Mu;
}

double log_density(Measure m, double alpha, double y) {
  switch (m) {
    case Measure::Lebesgue: return 0.0;
    case Measure::Mu:
    case Measure::W: {
      const double ay = std::fabs(y);
      if (ay == 0.0) return 2.0 * alpha + 1.0 > 0 ? -kInf : (2.0 * alpha + 1.0 == 0 ? 0.0 : kInf);
      return (2.0 * alpha + 1.0) * std::log(ay);
    }
  }
  return 0.0;
}

LogIntegral integrate_with_singularities(const std::function<SignedLogValue(double, double)>& g, double a, double b,
                                         std::vector<double> special, double x, const QuadratureConfig& quad) {
  if (!(a < b)) return {};
  std::vector<double> pts = {a, b};
  for (double s : special)
    if (s > a && s < b && std::isfinite(s)) pts.push_back(s);
  if (!std::isfinite(a) && !std::isfinite(b) && pts.size() == 2) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Accumulator acc;
  // One piece: y = base + dir * e^v for v in (-inf, vmax).
  auto piece = [&](double base, double dir, double vmax) {
    auto f = [&](double v) {
      const double d = std::exp(v);
      const double y = base + dir * d;
      // base - x is exact when the two are close, so diff keeps full relative accuracy.
      const double diff = std::isfinite(x) ? (base - x) + dir * d : y - x;
      return scale_log(g(y, diff), v);
    };
    std::vector<double> anchors;
    if (std::isfinite(vmax)) {
      anchors = {vmax - 1.0, vmax - 4.0};
    } else {
      anchors = {0.0, std::log1p(std::fabs(base))};
    }
    if (base == x) {
      anchors.push_back(scale_anchor(x));
      anchors.push_back(2.0 * scale_anchor(x));
    } else if (std::isfinite(x)) {
      // Distance scale of the diagonal, inside or just outside this piece.
      const double lx = std::log(std::fabs(x - base));
      if (lx < vmax) anchors.push_back(lx);
    }
    acc.add(integrate_log_domain(f, -kInf, vmax, anchors, quad));
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double l = pts[i], r = pts[i + 1];
    if (std::isfinite(l) && std::isfinite(r)) {
      const double half = 0.5 * (r - l);
      piece(l, 1.0, std::log(half));
      piece(r, -1.0, std::log(half));
    } else if (std::isfinite(l)) {
      piece(l, 1.0, kInf);
    } else {
      piece(r, -1.0, kInf);
    }
    if (acc.divergent) break;
  }
  return acc.result();
}

LogIntegral row_norm(const SplitKernel& split, double x, double p, const QuadratureConfig& quad) {
  if (!(p >= 1.0)) throw DomainError("row norm needs 1 <= p <= inf");
  const std::vector<Interval> support = split_support(split, x);
  if (support.empty()) return {};
  const Measure m = natural_measure(split.kind);
  const double alpha = split.params.alpha;

  if (std::isinf(p)) {
    // Supremum over y.
    bool touches_diag = false;
    for (const auto& iv : support)
      if (x >= iv.first && x <= iv.second) touches_diag = true;
    if (touches_diag && (split.params.sigma < 0.5 || nearly_equal(split.params.sigma, 0.5))) return divergent_result();
    auto sup_on = [&](int n) {
      double best = -kInf;
      std::vector<double> ys;
      const double top = std::max(10.0, 3.0 * std::fabs(x));
      for (int i = 0; i < n; ++i) {
        const double y = std::exp(std::log(1e-3) + (std::log(top) - std::log(1e-3)) * i / (n - 1));
        ys.push_back(y);
        if (is_dunkl(split.kind)) ys.push_back(-y);
      }
      if (x != 0.0) {
        ys.push_back(x);
        for (int j = 1; j <= 30; ++j) {
          ys.push_back(x * (1.0 + std::ldexp(1.0, -j)));
          ys.push_back(x * (1.0 - std::ldexp(1.0, -j)));
        }
      }
      for (double y : ys) {
        bool inside = false;
        for (const auto& iv : support)
          if (y >= iv.first && y <= iv.second) inside = true;
        if (!inside) continue;
        const SignedLogValue k = split.evaluate(x, y, y - x, quad).value;
        if (!k.is_zero()) best = std::max(best, k.log_abs);
      }
      return best;
    };
    double prev = sup_on(100);
    int stable = 0;
    for (int n = 200; n <= 3200 && stable < 2; n *= 2) {
      const double cur = sup_on(n);
      stable = std::fabs(cur - prev) < std::log(1.01) ? stable + 1 : 0;
      prev = cur;
    }
    LogIntegral r;
    r.value = SignedLogValue::from_log(prev);
    r.achieved_rel_tol = 0.01;
    return r;
  }

  auto g = [&](double y, double diff) {
    const SignedLogValue k = split.evaluate(x, y, diff, quad).value;
    if (k.is_zero()) return k;
    if (k.is_infinite()) return SignedLogValue::infinity();
    return SignedLogValue::from_log(p * k.log_abs + log_density(m, alpha, y));
  };
  Accumulator acc;
  for (const auto& iv : support) {
    acc.add(integrate_with_singularities(g, iv.first, iv.second, {0.0, x, -x, 2.0, -2.0}, x, quad));
    if (acc.divergent) break;
  }
  LogIntegral r = acc.result();
  if (!r.divergent && !r.value.is_zero()) {
    r.value = SignedLogValue::from_log(r.value.log_abs / p);
    r.achieved_rel_tol /= p;
  }
  return r;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& log_values) {
  if (xs.size() != log_values.size() || xs.size() < 2) throw DomainError("slope fit needs two or more points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += log_values[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (log_values[i] - my);
  }
  return sxy / sxx;
}

OperatorValue apply_operator_at(const SplitKernel& split, const TestFunction& f, double x, Measure m,
                                const QuadratureConfig& kernel_quad, const QuadratureConfig& outer_quad) {
  OperatorValue out;
  out.x = x;
  const double alpha = split.params.alpha;
  const auto support = intersect(split_support(split, x), f.lo, f.hi);
  std::vector<double> special = f.breakpoints;
  special.insert(special.end(), {0.0, x, -x, 2.0, -2.0});
  auto g = [&](double y, double diff) {
    const SignedLogValue fy = f.value(y);
    if (fy.is_zero()) return fy;
    const SignedLogValue k = split.evaluate(x, y, diff, kernel_quad).value;
    return scale_log(k * fy, log_density(m, alpha, y));
  };
  Accumulator acc;
  for (const auto& iv : support) {
    acc.add(integrate_with_singularities(g, iv.first, iv.second, special, x, outer_quad));
    if (acc.divergent) break;
  }
  const LogIntegral r = acc.result();
  out.value = r.value;
  out.divergent = r.divergent;
  out.achieved_rel_tol = r.achieved_rel_tol;
  return out;
}

std::vector<OperatorValue> apply_operator(const SplitKernel& split, const TestFunction& f,
                                          const std::vector<double>& xs, Measure m,
                                          const QuadratureConfig& kernel_quad, const QuadratureConfig& outer_quad) {
  std::vector<OperatorValue> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = apply_operator_at(split, f, xs[i], m, kernel_quad, outer_quad); });
  return out;
}

LogIntegral lp_norm(const TestFunction& f, double p, Measure m, double alpha, const QuadratureConfig& quad) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("lp_norm needs 1 <= p < inf");
  auto g = [&](double y, double) {
    const SignedLogValue fy = f.value(y);
    if (fy.is_zero()) return fy;
    return SignedLogValue::from_log(p * fy.log_abs + log_density(m, alpha, y));
  };
  std::vector<double> special = f.breakpoints;
  special.push_back(0.0);
  LogIntegral r = integrate_with_singularities(g, f.lo, f.hi, special, kInf, quad);
  if (!r.divergent && !r.value.is_zero()) {
    r.value = SignedLogValue::from_log(r.value.log_abs / p);
    r.achieved_rel_tol /= p;
  }
  return r;
}

LogIntegral operator_lq_norm(const SplitKernel& split, const TestFunction& f, double q, Measure m, double x_lo,
                             double x_hi, const std::vector<double>& x_special, const QuadratureConfig& kernel_quad,
                             const QuadratureConfig& mid_quad, const QuadratureConfig& outer_quad) {
  if (!(q >= 1.0) || std::isinf(q)) throw DomainError("operator norm needs 1 <= q < inf");
  const double alpha = split.params.alpha;
  auto g = [&](double x, double) {
    const OperatorValue v = apply_operator_at(split, f, x, m, kernel_quad, mid_quad);
    if (v.divergent) return SignedLogValue::infinity();
    if (v.value.is_zero()) return v.value;
    return SignedLogValue::from_log(q * v.value.log_abs + log_density(m, alpha, x));
  };
  bool smooth_window = x_lo > 0.0 && std::isfinite(x_hi);
  for (double s : x_special)
    if (s > x_lo && s < x_hi) smooth_window = false;
  LogIntegral r;
  if (smooth_window) {
    // No interior singularities: integrate in u = log x.
    auto h = [&](double u) { return scale_log(g(std::exp(u), 0.0), u); };
    r = integrate_log_domain(h, std::log(x_lo), std::log(x_hi), {}, outer_quad);
  } else {
    r = integrate_with_singularities(g, x_lo, x_hi, x_special, kInf, outer_quad);
  }
  if (!r.divergent && !r.value.is_zero()) {
    r.value = SignedLogValue::from_log(r.value.log_abs / q);
    r.achieved_rel_tol /= q;
  }
  return r;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::LogEdge: return "log_edge";
    case Family::BumpAtN: return "bump_at_n";
    case Family::EdgePower: return "edge_power";
    case Family::LogLogEdge: return "log_log_edge";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  if (text == "log_edge") return Family::LogEdge;
  if (text == "bump_at_n") return Family::BumpAtN;
  if (text == "edge_power") return Family::EdgePower;
  if (text == "log_log_edge") return Family::LogLogEdge;
  throw DomainError("unknown family '" + text + "' (expected log_edge, bump_at_n, edge_power, log_log_edge)");
}

TestFunction counterexample_family(Family family, const FamilyParams& fp) {
  const Params p = Params::make(fp.params.alpha, fp.params.sigma);
  const double a1 = p.alpha + 1.0;
  TestFunction f;
  f.name = to_string(family);
  switch (family) {
    case Family::LogEdge: {
      if (!(p.sigma <= a1)) throw DomainError("log_edge needs sigma <= alpha+1");
      if (!(fp.inv_p >= 0.0) || !(fp.inv_p + p.sigma / a1 <= 1.0))
        throw DomainError("log_edge needs 1/p + sigma/(alpha+1) <= 1 (so that q >= 1)");
      const double e1 = -2.0 * a1 * fp.inv_p, e2 = -fp.inv_p - p.sigma / a1;
      f.lo = kE;
      f.hi = kInf;
      f.value = [e1, e2](double y) {
        if (!(y > kE)) return SignedLogValue::zero();
        const double ly = std::log(y);
        return SignedLogValue::from_log(e1 * ly + e2 * std::log(ly));
      };
      break;
    }
    case Family::BumpAtN: {
      if (!(fp.n >= 2.0)) throw DomainError("bump_at_n needs n >= 2");
      const double n = fp.n;
      f.lo = n;
      f.hi = n + 1.0 / n;
      f.value = [lo = f.lo, hi = f.hi](double y) {
        return (y > lo && y < hi) ? SignedLogValue::from_log(0.0) : SignedLogValue::zero();
      };
      break;
    }
    case Family::EdgePower: {
      if (!(p.sigma < 0.5)) throw DomainError("edge_power needs sigma < 1/2");
      const double room = fp.inv_p - 2.0 * p.sigma - fp.inv_q;
      if (!(fp.epsilon > 0.0) || !(fp.epsilon < room))
        throw DomainError("edge_power needs 0 < epsilon < 1/p - 2 sigma - 1/q");
      const double A = -fp.inv_p + fp.epsilon;
      f.lo = 2.0;
      f.hi = 3.0;
      f.value = [A](double y) {
        if (!(y > 2.0 && y < 3.0)) return SignedLogValue::zero();
        return SignedLogValue::from_log(A * std::log(3.0 - y));
      };
      break;
    }
    case Family::LogLogEdge: {
      if (!(p.sigma < 0.5)) throw DomainError("log_log_edge needs sigma < 1/2");
      const double s = p.sigma;
      f.lo = 2.0;
      f.hi = 3.0;
      f.value = [s](double y) {
        if (!(y > 2.0 && y < 3.0)) return SignedLogValue::zero();
        const double d = 3.0 - y;
        return SignedLogValue::from_log(-2.0 * s * std::log(d) - std::log(std::log(2.0 / d)));
      };
      break;
    }
  }
  return f;
}

LogIntegral log_edge_norm_certificate(const Params& params, double inv_p, const QuadratureConfig& quad) {
  if (!(inv_p > 0.0)) throw DomainError("the log_edge norm certificate needs p < inf");
  const double kappa = params.sigma / (inv_p * (params.alpha + 1.0));
  // y = exp(exp(w)): |f|^p y^{2alpha+1} dy = (log y)^{-1-kappa} dy / y = exp(-kappa w) dw
  auto f = [kappa](double w) { return SignedLogValue::from_log(-kappa * w); };
  return integrate_log_domain(f, 0.0, kInf, {0.0, 1.0 / kappa}, quad);
}

PartialNorms log_edge_partial_norms(const Params& params, double inv_p, double L0, int doublings,
                                    const QuadratureConfig& kernel_quad, const QuadratureConfig& mid_quad,
                                    const QuadratureConfig& outer_quad) {
  if (!(L0 > 1.0)) throw DomainError("log_edge windows need L0 > 1");
  const double inv_q = inv_p + params.sigma / (params.alpha + 1.0);
  FamilyParams fp;
  fp.params = params;
  fp.inv_p = inv_p;
  fp.inv_q = inv_q;
  const TestFunction f = counterexample_family(Family::LogEdge, fp);
  const SplitKernel split{KernelKind::Convolution, params, SplitPart::Global};
  PartialNorms out;
  SignedLogValue running = SignedLogValue::zero();
  double lo = kE;
  for (int k = 0; k <= doublings; ++k) {
    const double L = L0 * std::ldexp(1.0, k);
    const double hi = std::exp(L);
    const LogIntegral inc =
        operator_lq_norm(split, f, 1.0 / inv_q, Measure::Mu, lo, hi, {kE}, kernel_quad, mid_quad, outer_quad);
    // operator_lq_norm returns the q-th root; undo it.
    running += SignedLogValue::from_log(inc.value.log_abs / inv_q);
    out.window_log_upper.push_back(L);
    out.partial.push_back(running.to_real());
    lo = hi;
  }
  int streak = 0;
  for (std::size_t i = 1; i < out.partial.size(); ++i) {
    streak = out.partial[i] > 1.1 * out.partial[i - 1] ? streak + 1 : 0;
    if (streak >= 3) out.growing = true;
  }
  return out;
}

double ball_measure(double alpha, double x, double r) {
  if (!(x > 1.0) || !(r > 0.0)) throw DomainError("ball measure needs x > 1, r > 0");
  const double lo = std::max(1.0, x - r), hi = x + r;
  const double e = 2.0 * alpha + 2.0;
  // (hi^e - lo^e) / e, computed as lo^e expm1(e log(hi/lo)) / e
  return std::exp(e * std::log(lo)) * std::expm1(e * std::log(hi / lo)) / e;
}

std::vector<OperatorValue> hardy_operator(const Params& params, const TestFunction& f, const std::vector<double>& xs,
                                          const QuadratureConfig& quad) {
  if (!(params.alpha >= -0.5)) throw DomainError("the Hardy-type operator needs alpha >= -1/2");
  if (!(params.sigma < 0.5)) throw DomainError("the Hardy-type operator needs sigma < 1/2");
  for (double x : xs)
    if (!(x > 1.0)) throw DomainError("the Hardy-type operator is defined for x > 1");
  const double a = params.alpha, s = params.sigma;
  std::vector<OperatorValue> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    auto g = [&](double y, double diff) {
      const SignedLogValue fy = f.value(y);
      if (fy.is_zero()) return fy;
      const double lk = (-2.0 * a - 1.0) * std::log(x + y) + (2.0 * s - 1.0) * std::log(std::fabs(diff)) +
                        (2.0 * a + 1.0) * std::log(y);
      return scale_log(fy, lk);
    };
    std::vector<double> special = f.breakpoints;
    special.push_back(x);
    const LogIntegral r = integrate_with_singularities(g, std::max(1.0, f.lo), f.hi, special, x, quad);
    out[i] = {x, r.value, r.divergent, r.achieved_rel_tol};
  });
  return out;
}

OperatorValue dunkl_apply(const Params& params, const TestFunction& f, double x, const QuadratureConfig& kernel_quad,
                          const QuadratureConfig& outer_quad) {
  const SplitKernel split{KernelKind::Dunkl, params, SplitPart::Full};
  return apply_operator_at(split, f, x, Measure::W, kernel_quad, outer_quad);
}

OperatorValue dunkl_folded(const Params& params, const TestFunction& f, double x, int s,
                           const QuadratureConfig& kernel_quad, const QuadratureConfig& outer_quad) {
  if (!(x > 0.0)) throw DomainError("the folded Dunkl operator is evaluated at x > 0");
  if (s != 1 && s != -1) throw DomainError("fold sign must be +1 or -1");
  Accumulator acc;
  for (int branch : {1, -1}) {
    // I_branch(f_{s * branch})(x) = int_0^inf K_D(x, branch y) f(s branch y) dmu(y)
    const double fs = s * branch;
    auto g = [&](double y, double diff) {
      const SignedLogValue fy = f.value(fs * y);
      if (fy.is_zero()) return fy;
      const double yk = branch * y;
      const double dk = branch > 0 ? diff : yk - x;
      const SignedLogValue k = potential_kernel_diff(KernelKind::Dunkl, params, x, yk, dk, kernel_quad).value;
      return scale_log(k * fy, log_density(Measure::Mu, params.alpha, y));
    };
    double lo = fs > 0 ? f.lo : -f.hi;
    double hi = fs > 0 ? f.hi : -f.lo;
    lo = std::max(lo, 0.0);
    if (!(lo < hi)) continue;
    std::vector<double> special;
    for (double b : f.breakpoints) special.push_back(fs * b);
    special.push_back(x);
    acc.add(integrate_with_singularities(g, lo, hi, special, branch > 0 ? x : kInf, outer_quad));
  }
  const LogIntegral r = acc.result();
  return {s > 0 ? x : -x, r.value, r.divergent, r.achieved_rel_tol};
}

NegativityReport negativity_scan(const Params& params, double box, int n, const QuadratureConfig& quad,
                                 bool enforce_alpha) {
  Params::make(params.alpha, params.sigma);
  if (enforce_alpha && !(params.alpha < -0.5)) throw DomainError("the negativity scan needs alpha < -1/2");
  if (!(box > 0.0) || n < 2) throw DomainError("the negativity scan needs box > 0 and n >= 2");
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = -box + (i + 0.5) * 2.0 * box / n;
  std::vector<std::array<double, 2>> pts;
  for (double x : axis)
    for (double y : axis) pts.push_back({x, y});
  const int m = 4 * n;
  for (int k = 1; k <= m; ++k) {
    const double x = box * k / m;
    pts.push_back({x, -x});
  }
  std::vector<SignedLogValue> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = potential_kernel(KernelKind::Dunkl, params, pts[i][0], pts[i][1], quad);
  });
  NegativityReport rep;
  rep.scanned = pts.size();
  const QuadratureConfig tight = quad.tightened();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (vals[i].sign >= 0) continue;
    const bool anti = i >= static_cast<std::size_t>(n) * n;
    if (anti) rep.min_antidiagonal = std::min(rep.min_antidiagonal, std::fabs(pts[i][0]));
    const SignedLogValue again = potential_kernel(KernelKind::Dunkl, params, pts[i][0], pts[i][1], tight);
    rep.hits.push_back({pts[i][0], pts[i][1], vals[i].log_abs, again.sign < 0});
  }
  return rep;
}

}  // namespace lagpot
