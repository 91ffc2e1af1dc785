#include "suites.hpp"

#include "lagpot/errors.hpp"
#include "lagpot/norm_experiments.hpp"
#include "lagpot/parallel.hpp"
#include "lagpot/potential_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lagpot::suites {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string join(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += fmt(v);
  }
  return out;
}

Check check_at_most(std::string name, double measured, double bound, std::string note = {}) {
  return {std::move(name), measured, bound, 0.0, measured <= bound, std::move(note)};
}

Check check_near(std::string name, double measured, double expected, double tol, std::string note = {}) {
  return {std::move(name), measured, expected, tol, std::fabs(measured - expected) <= tol, std::move(note)};
}

Check check_true(std::string name, bool ok, std::string note = {}) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok, std::move(note)};
}

double rel_diff(SignedLogValue a, SignedLogValue b) {
  if (a.sign != b.sign) return kInf;
  if (a.is_zero()) return 0.0;
  return std::fabs(std::expm1(a.log_abs - b.log_abs));
}

Row row_of(std::string id, std::string params, const LogIntegral& r) {
  return {std::move(id), std::move(params), r.value, r.achieved_rel_tol, r.divergent};
}

QuadratureConfig config(double rel_tol, double drop = 46.0) {
  QuadratureConfig q;
  q.rel_tol = rel_tol;
  q.drop = drop;
  q.linear_tail_drop = std::min(q.linear_tail_drop, drop / 2.0);
  return q;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SuiteResult spectral_suite() {
  SuiteResult res{"spectral", {}, {}};
  struct Case {
    double alpha, sigma, x;
  };
  std::vector<Case> cases;
  for (double a : {-0.75, -0.5, 0.0, 1.5})
    for (double s : {0.3, 1.0, 2.0})
      for (double x : {0.1, 0.5, 1.0, 2.0}) cases.push_back({a, s, x});
  std::vector<OperatorValue> vals(cases.size());
  TestFunction ground{"ground_state", [](double y) { return SignedLogValue::from_log(-0.5 * y * y); }, 0.0, kInf, {}};
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const SplitKernel k{KernelKind::Convolution, Params::make(c.alpha, c.sigma), SplitPart::Full};
    vals[i] = apply_operator_at(k, ground, c.x, Measure::Mu, config(1e-10), config(1e-9));
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const double exact = -c.sigma * std::log(2.0 * c.alpha + 2.0) - 0.5 * c.x * c.x;
    const double err = rel_diff(vals[i].value, SignedLogValue::from_log(exact));
    worst = std::max(worst, err);
    res.rows.push_back({"spectral", join({{"alpha", c.alpha}, {"sigma", c.sigma}, {"x", c.x}, {"exact_log", exact}}),
                        vals[i].value, vals[i].achieved_rel_tol, vals[i].divergent});
  }
  res.checks.push_back(check_at_most("ground-state identity, max relative error", worst, 1e-6));
  return res;
}

SuiteResult dunkl_links_suite(std::uint64_t seed) {
  SuiteResult res{"dunkl_links", {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  struct Case {
    double sigma, x, y;
  };
  std::vector<Case> cases;
  for (double s : {0.3, 0.7, 1.5})
    for (int i = 0; i < 50; ++i) {
      double x = u(rng), y = u(rng);
      while (x == 0.0) x = u(rng);
      while (y == 0.0) y = u(rng);
      cases.push_back({s, x, y});
    }
  std::vector<std::array<double, 2>> errs(cases.size());
  const QuadratureConfig q = config(1e-11);
  parallel_for(cases.size(), [&](std::size_t i) {
    const Case& c = cases[i];
    const Params hm = Params::make(-0.5, c.sigma), hp = Params::make(0.5, c.sigma);
    const SignedLogValue kd = potential_kernel(KernelKind::Dunkl, hm, c.x, c.y, q);
    const SignedLogValue kd_neg = potential_kernel(KernelKind::Dunkl, hm, -c.x, c.y, q);
    const SignedLogValue km = potential_kernel(KernelKind::Convolution, hm, c.x, c.y, q);
    const SignedLogValue kp = potential_kernel(KernelKind::Convolution, hp, c.x, c.y, q);
    const SignedLogValue lhs1 = scale_log(kd, std::log(2.0));
    const SignedLogValue rhs1 = km + scale_log(kp, std::log(c.x * c.y));
    errs[i] = {rel_diff(lhs1, rhs1), rel_diff(km, kd + kd_neg)};
  });
  double worst1 = 0.0, worst2 = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    worst1 = std::max(worst1, errs[i][0]);
    worst2 = std::max(worst2, errs[i][1]);
    const std::string p = join({{"sigma", cases[i].sigma}, {"x", cases[i].x}, {"y", cases[i].y}});
    res.rows.push_back({"dunkl_vs_conv", p, SignedLogValue::from_real(errs[i][0]), 0.0, false});
    res.rows.push_back({"dunkl_even_part", p, SignedLogValue::from_real(errs[i][1]), 0.0, false});
  }
  res.checks.push_back(check_at_most("2 K_D^{-1/2} = K^{-1/2} + xy K^{1/2}, max relative error", worst1, 1e-7));
  res.checks.push_back(check_at_most("K^{-1/2}(x,y) = K_D(x,y) + K_D(-x,y), max relative error", worst2, 1e-7));
  return res;
}

SuiteResult row_norm_suite() {
  SuiteResult res{"row_norm", {}, {}};
  struct Slope {
    KernelKind kind;
    double alpha, sigma, p;
  };
  const std::vector<Slope> slopes = {
      {KernelKind::Convolution, 0.5, 0.3, 1.2},  {KernelKind::Convolution, 0.0, 0.7, 2.0},
      {KernelKind::Convolution, -0.5, 0.4, 1.5}, {KernelKind::HermiteType, 1.0, 0.3, 2.0},
      {KernelKind::HermiteType, 0.5, 0.7, 3.0},  {KernelKind::HermiteType, -0.75, 0.4, 1.5},
  };
  const std::vector<double> xs = {8.0, 16.0, 32.0, 64.0};
  const QuadratureConfig q = config(1e-9);
  std::vector<LogIntegral> vals(slopes.size() * xs.size());
  parallel_for(vals.size(), [&](std::size_t i) {
    const Slope& s = slopes[i / xs.size()];
    const SplitKernel k{s.kind, Params::make(s.alpha, s.sigma), SplitPart::Global};
    vals[i] = row_norm(k, xs[i % xs.size()], s.p, q);
  });
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    const Slope& s = slopes[j];
    std::vector<double> logs;
    bool finite = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const LogIntegral& r = vals[j * xs.size() + i];
      finite = finite && !r.divergent && r.value.is_finite();
      logs.push_back(r.value.log_abs);
      res.rows.push_back(row_of("row_norm_" + to_string(s.kind),
                                join({{"alpha", s.alpha}, {"sigma", s.sigma}, {"p", s.p}, {"x", xs[i]}}), r));
    }
    const double expected = s.kind == KernelKind::Convolution ? -2.0 * s.sigma + 2.0 * s.alpha * (1.0 / s.p - 1.0)
                                                               : -2.0 * s.sigma + 1.0 - 1.0 / s.p;
    const double slope = finite ? fit_loglog_slope(xs, logs) : kInf;
    res.checks.push_back(check_near("row-norm slope " + to_string(s.kind) + " " +
                                        join({{"alpha", s.alpha}, {"sigma", s.sigma}, {"p", s.p}}),
                                    slope, expected, 0.05));
  }
  struct Div {
    KernelKind kind;
    double alpha, sigma, p, x;
    const char* why;
  };
  const std::vector<Div> divs = {
      {KernelKind::Convolution, 0.5, 0.2, 2.0, 5.0, "p >= 1/(1-2sigma)"},
      {KernelKind::HermiteType, 1.0, 0.2, 2.0, 5.0, "1/p <= 1-2sigma"},
      {KernelKind::HermiteType, -0.9, 0.7, 4.0, 5.0, "1/p <= -alpha-1/2"},
  };
  for (const Div& d : divs) {
    const SplitKernel k{d.kind, Params::make(d.alpha, d.sigma), SplitPart::Global};
    const LogIntegral r = row_norm(k, d.x, d.p, q);
    res.rows.push_back(row_of("row_norm_divergent_" + to_string(d.kind),
                              join({{"alpha", d.alpha}, {"sigma", d.sigma}, {"p", d.p}, {"x", d.x}}), r));
    res.checks.push_back(check_true("divergent row norm " + to_string(d.kind) + " " +
                                        join({{"alpha", d.alpha}, {"sigma", d.sigma}, {"p", d.p}, {"x", d.x}}),
                                    r.divergent, d.why));
  }
  return res;
}

SuiteResult bump_suite() {
  SuiteResult res{"bump", {}, {}};
  const double alpha = -0.75, sigma = 0.1, inv_p = 0.9, inv_q = 0.2;
  const Params params = Params::make(alpha, sigma);
  const std::vector<double> ns = {8.0, 16.0, 32.0, 64.0};
  std::vector<double> log_ratio(ns.size());
  std::vector<LogIntegral> num(ns.size()), den(ns.size());
  // Outer accuracy only needs to resolve the fitted exponent.
  const QuadratureConfig kq = config(1e-7, 30.0), mq = config(1e-5, 30.0);
  QuadratureConfig oq = config(1e-3, 14.0);
  oq.max_panel_width = 4.0;
  parallel_for(ns.size(), [&](std::size_t i) {
    FamilyParams fp;
    fp.params = params;
    fp.inv_p = inv_p;
    fp.inv_q = inv_q;
    fp.n = ns[i];
    const TestFunction f = counterexample_family(Family::BumpAtN, fp);
    den[i] = lp_norm(f, 1.0 / inv_p, Measure::Mu, alpha);
    num[i] = operator_lq_norm({KernelKind::Convolution, params, SplitPart::Global}, f, 1.0 / inv_q, Measure::Mu, 2.0,
                              kInf, {f.lo, f.hi}, kq, mq, oq);
  });
  bool finite = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    finite = finite && !num[i].divergent && !den[i].divergent;
    log_ratio[i] = num[i].value.log_abs - den[i].value.log_abs;
    const std::string p = join({{"alpha", alpha}, {"sigma", sigma}, {"inv_p", inv_p}, {"inv_q", inv_q}, {"n", ns[i]}});
    res.rows.push_back(row_of("bump_lp_norm", p, den[i]));
    res.rows.push_back(row_of("bump_operator_lq_norm", p, num[i]));
    res.rows.push_back({"bump_ratio", p, SignedLogValue::from_log(log_ratio[i]), num[i].achieved_rel_tol, false});
  }
  const double expected = -2.0 * sigma - 2.0 * alpha * (inv_p - inv_q);
  res.checks.push_back(check_near("bump ratio exponent", finite ? fit_loglog_slope(ns, log_ratio) : kInf, expected, 0.05));
  std::vector<double> log_den;
  for (const auto& d : den) log_den.push_back(d.value.log_abs);
  res.checks.push_back(
      check_near("bump L^p norm exponent", fit_loglog_slope(ns, log_den), 2.0 * alpha * inv_p, 0.05));
  return res;
}

SuiteResult log_edge_suite() {
  SuiteResult res{"log_edge", {}, {}};
  const double alpha = 0.0, sigma = 0.25, inv_p = 0.5, L0 = 1.5;
  const Params params = Params::make(alpha, sigma);
  const LogIntegral cert = log_edge_norm_certificate(params, inv_p, config(1e-12));
  const double kappa = sigma / (inv_p * (alpha + 1.0));
  res.rows.push_back(row_of("log_edge_norm_p_power", join({{"alpha", alpha}, {"sigma", sigma}, {"inv_p", inv_p}}), cert));
  res.checks.push_back(check_true("log_edge ||f||_p finite", !cert.divergent && cert.value.is_finite()));
  res.checks.push_back(check_at_most("log_edge ||f||_p^p vs 1/kappa, relative error",
                                     rel_diff(cert.value, SignedLogValue::from_real(1.0 / kappa)), 1e-8));
  const QuadratureConfig kq = config(1e-7, 30.0), mq = config(1e-5, 30.0);
  QuadratureConfig oq = config(1e-3, 14.0);
  oq.max_panel_width = 4.0;
  const PartialNorms pn = log_edge_partial_norms(params, inv_p, L0, 3, kq, mq, oq);
  for (std::size_t i = 0; i < pn.partial.size(); ++i)
    res.rows.push_back({"log_edge_partial_q_power",
                        join({{"alpha", alpha}, {"sigma", sigma}, {"inv_p", inv_p}, {"log_x_upper", pn.window_log_upper[i]}}),
                        SignedLogValue::from_real(pn.partial[i]), oq.rel_tol, false});
  res.checks.push_back(check_true("log_edge partial ||I f||_q^q grows >10% per doubling (3 in a row)", pn.growing));
  return res;
}

SuiteResult negativity_suite() {
  SuiteResult res{"negativity", {}, {}};
  const QuadratureConfig q = config(1e-9);
  struct Case {
    double alpha, sigma;
    bool control;
  };
  for (const Case& c : {Case{-0.75, 1.0, false}, Case{-0.9, 0.5, false}, Case{-0.4, 1.0, true}}) {
    const NegativityReport rep = negativity_scan(Params::make(c.alpha, c.sigma), 20.0, 40, q, !c.control);
    const std::string p = join({{"alpha", c.alpha}, {"sigma", c.sigma}, {"box", 20.0}});
    bool opposite = true, reverified = true;
    for (const auto& h : rep.hits) {
      opposite = opposite && h.x * h.y < 0.0;
      reverified = reverified && h.reverified;
      res.rows.push_back({"negativity_hit", p + ";x=" + fmt(h.x) + ";y=" + fmt(h.y),
                          SignedLogValue::from_log(h.log_abs, -1), q.rel_tol, false});
    }
    res.rows.push_back({"negativity_min_antidiagonal", p, SignedLogValue::from_real(rep.min_antidiagonal), 0.0, false});
    if (c.control) {
      res.checks.push_back(check_true("control " + p + ": no negative values", rep.hits.empty()));
    } else {
      res.checks.push_back(check_true(p + ": negative values found", !rep.hits.empty()));
      res.checks.push_back(check_true(p + ": all hits have xy < 0", opposite));
      res.checks.push_back(check_true(p + ": all hits re-verified at tighter accuracy", reverified));
    }
  }
  return res;
}

SuiteResult hardy_suite() {
  SuiteResult res{"hardy", {}, {}};
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    double lo = kInf, hi = 0.0, klo = kInf, khi = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double x = 1.0 + std::pow(10.0, -2.0 + 4.0 * i / 24.0);
      for (int j = 0; j < 25; ++j) {
        const double r = std::pow(10.0, -2.0 + 4.0 * j / 24.0);
        const double ratio = ball_measure(alpha, x, r) / (r * std::pow(x + r, 2.0 * alpha + 1.0));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        // Kernel (x+y)^{-2a-1}|x-y|^{2s-1} against |x-y|^{2s} / mu(B(x,|x-y|)) at y = x + r.
        const double y = x + r;
        const double kr = ball_measure(alpha, x, r) / (r * std::pow(x + y, 2.0 * alpha + 1.0));
        klo = std::min(klo, kr);
        khi = std::max(khi, kr);
      }
    }
    const double C = std::max(hi, 1.0 / lo), Ck = std::max(khi, 1.0 / klo);
    // Small r gives 2^{-2alpha}, large r gives 1/(2alpha+2); allow a factor 4 on top.
    const double band = 4.0 * std::max({std::pow(2.0, std::fabs(2.0 * alpha + 1.0)), 2.0 * alpha + 2.0,
                                        1.0 / (2.0 * alpha + 2.0)});
    res.rows.push_back({"ball_measure_band", join({{"alpha", alpha}}), SignedLogValue::from_real(C), 0.0, false});
    res.rows.push_back({"hardy_kernel_band", join({{"alpha", alpha}}), SignedLogValue::from_real(Ck), 0.0, false});
    res.checks.push_back(check_at_most("ball measure comparability band, alpha=" + fmt(alpha), C, band));
    res.checks.push_back(check_at_most("Hardy kernel comparability band, alpha=" + fmt(alpha), Ck, band));
  }
  const Params params = Params::make(0.5, 0.3);
  TestFunction f{"indicator_1_2",
                 [](double y) { return (y > 1.0 && y < 2.0) ? SignedLogValue::from_log(0.0) : SignedLogValue::zero(); },
                 1.0, 2.0, {}};
  const std::vector<double> xs = {64.0, 128.0, 256.0, 512.0};
  const auto vals = hardy_operator(params, f, xs, config(1e-10));
  std::vector<double> logs;
  for (const auto& v : vals) {
    logs.push_back(v.value.log_abs);
    res.rows.push_back({"hardy_indicator", join({{"alpha", 0.5}, {"sigma", 0.3}, {"x", v.x}}), v.value,
                        v.achieved_rel_tol, v.divergent});
  }
  res.checks.push_back(check_near("Hardy operator decay exponent", fit_loglog_slope(xs, logs),
                                  -2.0 * params.alpha - 1.0 + 2.0 * params.sigma - 1.0, 0.05));
  return res;
}

SuiteResult folding_suite() {
  SuiteResult res{"folding", {}, {}};
  // Smooth bump supported on (-0.5, 1.5), not symmetric.
  TestFunction f{"smooth_bump",
                 [](double y) {
                   if (!(y > -0.5 && y < 1.5)) return SignedLogValue::zero();
                   const double w = (y + 0.5) * (1.5 - y);
                   return SignedLogValue::from_real(w * w * w * (1.0 + 0.5 * y));
                 },
                 -0.5, 1.5, {}};
  const QuadratureConfig kq = config(1e-11), oq = config(1e-10);
  double worst = 0.0;
  for (double alpha : {-0.75, 0.3}) {
    const Params params = Params::make(alpha, 0.7);
    for (double x : {0.4, 1.2, 3.0}) {
      for (int s : {1, -1}) {
        const OperatorValue direct = dunkl_apply(params, f, s * x, kq, oq);
        const OperatorValue folded = dunkl_folded(params, f, x, s, kq, oq);
        const double err = rel_diff(direct.value, folded.value);
        worst = std::max(worst, err);
        const std::string p = join({{"alpha", alpha}, {"sigma", 0.7}, {"x", s * x}});
        res.rows.push_back({"folding_direct", p, direct.value, direct.achieved_rel_tol, direct.divergent});
        res.rows.push_back({"folding_folded", p, folded.value, folded.achieved_rel_tol, folded.divergent});
      }
    }
  }
  res.checks.push_back(check_at_most("Dunkl folding identity, max relative error", worst, 1e-7));
  return res;
}

std::vector<std::string> suite_names() {
  return {"spectral", "dunkl_links", "row_norm", "bump", "log_edge", "negativity", "hardy", "folding"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "spectral") return spectral_suite();
  if (name == "dunkl_links") return dunkl_links_suite(seed);
  if (name == "row_norm") return row_norm_suite();
  if (name == "bump") return bump_suite();
  if (name == "log_edge") return log_edge_suite();
  if (name == "negativity") return negativity_suite();
  if (name == "hardy") return hardy_suite();
  if (name == "folding") return folding_suite();
  throw DomainError("unknown suite '" + name +
                    "' (expected spectral, dunkl_links, row_norm, bump, log_edge, negativity, hardy, folding)");
}

}  // namespace lagpot::suites
