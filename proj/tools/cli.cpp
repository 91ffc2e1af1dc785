#include "cli.hpp"

#include "suites.hpp"

#include "lagpot/errors.hpp"
#include "lagpot/lp_lq_regions.hpp"
#include "lagpot/parallel.hpp"
#include "lagpot/potential_kernels.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <boost/version.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace lagpot::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

// RunConfig: everything a subcommand reads. Strings for alpha/sigma/p/q keep
// rational inputs exact for the region commands.
struct RunConfig {
  std::string subcommand;
  std::string kind = "conv";
  std::string alpha = "0";
  std::string sigma = "1";
  std::string grid;
  std::vector<double> xs, ys;
  std::string p, q, inv_p, inv_q;
  double tol = 1e-11;
  std::uint64_t seed = suites::kDefaultSeed;
  std::string out;
  std::string format;
  // envelope-check
  double ceiling = 100.0;
  double exponent_shift = 0.0;
  std::string envelope;
  std::string region = "all";
  bool opposite_sign = false;
  double gap = 0.0;
  double max_sum = std::numeric_limits<double>::infinity();
  // region / figure
  std::string setting = "conv";
  int resolution = 50;
  // experiments
  std::vector<std::string> suites;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no infinities; they travel as strings.
ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

double parse_real(const std::string& text, const char* what) {
  try {
    return to_double(parse_rational(text));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
}

Rational parse_exact(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
}

// 1/p from --p (or --inv-p); "inf" maps to 0.
Rational reciprocal_exponent(const std::string& direct, const std::string& inverse, const char* name) {
  if (!direct.empty() && !inverse.empty())
    throw UsageError(std::string("give either --") + name + " or --inv-" + name + ", not both");
  if (!inverse.empty()) return parse_exact(inverse, name);
  if (direct.empty()) throw UsageError(std::string("missing --") + name + " (or --inv-" + name + ")");
  if (direct == "inf" || direct == "infinity") return Rational(0);
  const Rational v = parse_exact(direct, name);
  if (v < 1) throw DomainError(std::string(name) + " must satisfy " + name + " >= 1");
  return Rational(1) / v;
}

ordered_json meta_of(const RunConfig& c) {
  ordered_json m;
  m["tool"] = "lagpot";
  m["version"] = kVersion;
  m["boost"] = BOOST_LIB_VERSION;
  m["subcommand"] = c.subcommand;
  return m;
}

class Sink {
public:
  Sink(const RunConfig& c, std::ostream& fallback) : fallback_(fallback) {
    if (!c.out.empty()) {
      file_.open(c.out, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + c.out + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_json(const RunConfig& c, std::ostream& out, ordered_json meta, ordered_json data) {
  ordered_json j;
  j["meta"] = std::move(meta);
  j["data"] = std::move(data);
  Sink sink(c, out);
  sink.stream() << j.dump(2) << '\n';
}

std::string format_or(const RunConfig& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

QuadratureConfig quad_of(const RunConfig& c) {
  if (!(c.tol > 0.0) || !(c.tol < 1.0)) throw DomainError("--tol must lie in (0, 1)");
  QuadratureConfig q;
  q.rel_tol = c.tol;
  return q;
}

// ---- eval --------------------------------------------------------------------

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const KernelKind kind = parse_kernel_kind(c.kind);
  const Params params = Params::make(parse_real(c.alpha, "alpha"), parse_real(c.sigma, "sigma"));
  const QuadratureConfig quad = quad_of(c);
  std::vector<double> gx = c.xs, gy = c.ys;
  if (!c.grid.empty()) {
    const std::vector<double> g = GridSpec::parse(c.grid).points();
    if (gx.empty()) gx = g;
    if (gy.empty()) gy = g;
  }
  if (gx.empty() || gy.empty()) throw UsageError("eval needs --grid or both --x and --y");
  const bool half_line = kind == KernelKind::Convolution || kind == KernelKind::HermiteType;
  for (const auto* axis : {&gx, &gy})
    for (double v : *axis) {
      if (!std::isfinite(v)) throw DomainError("grid points must be finite");
      if (half_line && !(v > 0.0)) throw DomainError(to_string(kind) + " kernel needs x, y > 0");
    }

  std::vector<std::array<double, 2>> pts;
  for (double x : gx)
    for (double y : gy) pts.push_back({x, y});
  std::vector<LogIntegral> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = potential_kernel_detailed(kind, params, pts[i][0], pts[i][1], quad);
  });

  if (format_or(c, "csv") == "csv") {
    Sink sink(c, out);
    std::ostream& os = sink.stream();
    os << "x,y,sign,log_abs,achieved_tol\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << num(pts[i][0]) << ',' << num(pts[i][1]) << ',' << vals[i].value.sign << ',' << num(vals[i].value.log_abs)
         << ',' << num(vals[i].achieved_rel_tol) << '\n';
    return kExitPass;
  }
  ordered_json meta = meta_of(c);
  meta["config"] = {{"kind", to_string(kind)}, {"alpha", params.alpha}, {"sigma", params.sigma},
                    {"grid", c.grid},          {"tol", c.tol}};
  meta["units"] = {{"log_abs", "natural log of |K(x,y)|"}, {"achieved_tol", "relative"}};
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < pts.size(); ++i)
    rows.push_back({{"x", pts[i][0]},
                    {"y", pts[i][1]},
                    {"sign", vals[i].value.sign},
                    {"log_abs", jnum(vals[i].value.log_abs)},
                    {"achieved_tol", jnum(vals[i].achieved_rel_tol)},
                    {"divergent", vals[i].divergent}});
  emit_json(c, out, std::move(meta), std::move(rows));
  return kExitPass;
}

// ---- envelope-check ------------------------------------------------------------

EnvelopeSelector selector_of(const RunConfig& c, KernelKind kind, const Params& params) {
  if (!c.envelope.empty()) {
    if (c.envelope == "conv") return EnvelopeSelector::Convolution;
    if (c.envelope == "dunkl") return EnvelopeSelector::Dunkl;
    if (c.envelope == "hermite_osc") return EnvelopeSelector::HermiteOscillator;
    throw UsageError("--envelope must be conv, dunkl or hermite_osc");
  }
  switch (kind) {
    case KernelKind::Convolution: return EnvelopeSelector::Convolution;
    case KernelKind::Dunkl:
      return params.alpha == -0.5 ? EnvelopeSelector::HermiteOscillator : EnvelopeSelector::Dunkl;
    default: throw DomainError("no two-sided envelope is implemented for kind " + to_string(kind));
  }
}

PlaneRegion plane_region_of(const std::string& s) {
  if (s == "all") return PlaneRegion::All;
  if (s == "small") return PlaneRegion::Small;
  if (s == "large") return PlaneRegion::Large;
  throw UsageError("--region must be all, small or large");
}

int cmd_envelope_check(const RunConfig& c, std::ostream& out) {
  const KernelKind kind = parse_kernel_kind(c.kind);
  const Params params = Params::make(parse_real(c.alpha, "alpha"), parse_real(c.sigma, "sigma"));
  const EnvelopeSelector selector = selector_of(c, kind, params);
  if (selector == EnvelopeSelector::Dunkl) Params::make_dunkl_envelope(params.alpha, params.sigma);
  const QuadratureConfig quad = quad_of(c);
  if (!(c.ceiling >= 1.0)) throw DomainError("--ceiling must be >= 1");
  if (!(c.gap >= 0.0)) throw DomainError("--gap must be >= 0");
  CalibrationDomain dom;
  dom.grid = GridSpec::parse(c.grid.empty() ? "log:0.01:1:50" : c.grid);
  dom.region = plane_region_of(c.region);
  dom.opposite_sign = c.opposite_sign;
  dom.diagonal_gap = c.gap;
  dom.max_sum = c.max_sum;
  if (domain_points(dom).empty()) throw DomainError("the grid has no points after the region filters");

  const RatioReport rep = calibrate_envelope(kind, params, dom, selector, quad, c.exponent_shift);
  const bool pass = rep.fitted.C_ratio <= c.ceiling;

  if (format_or(c, "json") == "csv") {
    Sink sink(c, out);
    std::ostream& os = sink.stream();
    os << "C_ratio,c_lower,c_upper,min_ratio,max_ratio,argmin_x,argmin_y,argmax_x,argmax_y,points,skipped,"
          "ceiling,pass\n";
    os << num(rep.fitted.C_ratio) << ',' << num(rep.fitted.c_lower) << ',' << num(rep.fitted.c_upper) << ','
       << num(rep.min_ratio) << ',' << num(rep.max_ratio) << ',' << num(rep.argmin[0]) << ',' << num(rep.argmin[1])
       << ',' << num(rep.argmax[0]) << ',' << num(rep.argmax[1]) << ',' << rep.points << ',' << rep.skipped << ','
       << num(c.ceiling) << ',' << (pass ? "true" : "false") << '\n';
  } else {
    ordered_json meta = meta_of(c);
    meta["config"] = {{"kind", to_string(kind)},
                      {"alpha", params.alpha},
                      {"sigma", params.sigma},
                      {"grid", dom.grid.to_string()},
                      {"region", c.region},
                      {"opposite_sign", c.opposite_sign},
                      {"gap", c.gap},
                      {"max_sum", jnum(c.max_sum)},
                      {"exponent_shift", c.exponent_shift},
                      {"ceiling", c.ceiling},
                      {"tol", c.tol}};
    ordered_json data;
    data["C_ratio"] = jnum(rep.fitted.C_ratio);
    data["c_lower"] = jnum(rep.fitted.c_lower);
    data["c_upper"] = jnum(rep.fitted.c_upper);
    data["min_ratio"] = jnum(rep.min_ratio);
    data["max_ratio"] = jnum(rep.max_ratio);
    data["log_min_ratio"] = jnum(rep.log_min_ratio);
    data["log_max_ratio"] = jnum(rep.log_max_ratio);
    data["argmin"] = {rep.argmin[0], rep.argmin[1]};
    data["argmax"] = {rep.argmax[0], rep.argmax[1]};
    data["points"] = rep.points;
    data["skipped"] = rep.skipped;
    data["pass"] = pass;
    emit_json(c, out, std::move(meta), std::move(data));
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

// ---- region ----------------------------------------------------------------------

int cmd_region(const RunConfig& c, std::ostream& out) {
  const Rational alpha = parse_exact(c.alpha, "alpha");
  const Rational sigma = parse_exact(c.sigma, "sigma");
  const RegionPoint<Rational> pt{reciprocal_exponent(c.p, c.inv_p, "p"), reciprocal_exponent(c.q, c.inv_q, "q")};
  Verdict v;
  if (c.setting == "local_conv") v = bounded_local_conv(alpha, sigma, pt);
  else if (c.setting == "global_conv") v = bounded_global_conv(alpha, sigma, pt);
  else if (c.setting == "local_hermite") v = bounded_local_hermite(alpha, sigma, pt);
  else v = bounded_in(parse_setting(c.setting), alpha, sigma, pt);

  if (format_or(c, "json") == "csv") {
    Sink sink(c, out);
    sink.stream() << "setting,alpha,sigma,inv_p,inv_q,bounded,rule,binding_constraint\n"
                  << csv_field(c.setting) << ',' << to_string(alpha) << ',' << to_string(sigma) << ','
                  << to_string(pt.inv_p) << ',' << to_string(pt.inv_q) << ',' << (v.bounded ? "true" : "false")
                  << ',' << csv_field(v.rule) << ',' << csv_field(v.binding_constraint) << '\n';
    return kExitPass;
  }
  ordered_json meta = meta_of(c);
  meta["config"] = {{"setting", c.setting},        {"alpha", to_string(alpha)},    {"sigma", to_string(sigma)},
                    {"inv_p", to_string(pt.inv_p)}, {"inv_q", to_string(pt.inv_q)}};
  emit_json(c, out, std::move(meta),
            {{"bounded", v.bounded}, {"rule", v.rule}, {"binding_constraint", v.binding_constraint}});
  return kExitPass;
}

// ---- figure ----------------------------------------------------------------------

int cmd_figure(const RunConfig& c, std::ostream& out) {
  if (c.resolution < 1 || c.resolution > 2000) throw DomainError("--resolution must lie in [1, 2000]");
  const FigureData fig = figure_data(parse_setting(c.setting), parse_exact(c.alpha, "alpha"),
                                     parse_exact(c.sigma, "sigma"), c.resolution);
  if (format_or(c, "csv") == "csv") {
    Sink sink(c, out);
    sink.stream() << figure_csv(fig);
    return kExitPass;
  }
  ordered_json meta = meta_of(c);
  meta["config"] = {{"setting", c.setting}, {"alpha", c.alpha}, {"sigma", c.sigma}, {"resolution", c.resolution}};
  emit_json(c, out, std::move(meta), ordered_json::parse(figure_json(fig)));
  return kExitPass;
}

// ---- experiments -----------------------------------------------------------------

int cmd_experiments(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  for (const auto& s : c.suites) {
    if (s == "all") {
      for (const auto& n : suites::suite_names()) names.push_back(n);
    } else {
      names.push_back(s);
    }
  }
  if (names.empty()) throw UsageError("experiments needs --suite (a suite name or 'all')");
  const auto known = suites::suite_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw DomainError("unknown suite '" + n + "'");

  std::vector<suites::SuiteResult> results;
  for (const auto& n : names) results.push_back(suites::run_suite(n, c.seed));
  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass();

  if (format_or(c, "csv") == "csv") {
    Sink sink(c, out);
    std::ostream& os = sink.stream();
    os << "suite,experiment_id,params,value_log,sign,achieved_tol,divergent\n";
    for (const auto& r : results)
      for (const auto& row : r.rows)
        os << r.suite << ',' << csv_field(row.experiment_id) << ',' << csv_field(row.params) << ','
           << num(row.value.log_abs) << ',' << row.value.sign << ',' << num(row.achieved_tol) << ','
           << (row.divergent ? "true" : "false") << '\n';
  } else {
    ordered_json meta = meta_of(c);
    meta["config"] = {{"suites", names}, {"seed", c.seed}};
    ordered_json data;
    data["pass"] = pass;
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
      ordered_json s;
      s["suite"] = r.suite;
      s["pass"] = r.pass();
      ordered_json checks = ordered_json::array();
      for (const auto& ch : r.checks)
        checks.push_back({{"name", ch.name},
                          {"measured", jnum(ch.measured)},
                          {"expected", jnum(ch.expected)},
                          {"tolerance", jnum(ch.tolerance)},
                          {"pass", ch.pass},
                          {"note", ch.note}});
      s["checks"] = checks;
      ordered_json rows = ordered_json::array();
      for (const auto& row : r.rows)
        rows.push_back({{"experiment_id", row.experiment_id},
                        {"params", row.params},
                        {"value_log", jnum(row.value.log_abs)},
                        {"sign", row.value.sign},
                        {"achieved_tol", jnum(row.achieved_tol)},
                        {"divergent", row.divergent}});
      s["rows"] = rows;
      arr.push_back(std::move(s));
    }
    data["suites"] = arr;
    emit_json(c, out, std::move(meta), std::move(data));
  }
  for (const auto& r : results)
    for (const auto& ch : r.checks)
      if (!ch.pass) err << "check failed [" << r.suite << "]: " << ch.name << '\n';
  return pass ? kExitPass : kExitVerificationFailure;
}

void add_kernel_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kind", c.kind, "kernel kind: conv, hermite, dunkl, dunkl_aux")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "type parameter, alpha > -1")->capture_default_str();
  sub->add_option("--sigma", c.sigma, "potential order, sigma > 0")->capture_default_str();
  sub->add_option("--grid", c.grid, "axis grid log:lo:hi:n or lin:lo:hi:n, used for x and y");
  sub->add_option("--tol", c.tol, "relative quadrature tolerance")->capture_default_str();
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "write output to this file instead of stdout");
  sub->add_option("--format", c.format, "csv or json");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Laguerre and Dunkl-Laguerre potential kernels: evaluation, envelopes, Lp-Lq regions, experiments"};
  app.require_subcommand(1);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a potential kernel on a grid or at points");
  add_kernel_options(eval, c);
  eval->add_option("--x", c.xs, "x values (overrides the grid on the x axis)");
  eval->add_option("--y", c.ys, "y values (overrides the grid on the y axis)");
  add_output_options(eval, c);

  CLI::App* env = app.add_subcommand("envelope-check", "calibrate a two-sided envelope on a grid");
  add_kernel_options(env, c);
  env->add_option("--ceiling", c.ceiling, "largest acceptable C_ratio")->capture_default_str();
  env->add_option("--exponent-shift", c.exponent_shift, "perturb the envelope exponent (negative control)");
  env->add_option("--envelope", c.envelope, "conv, dunkl or hermite_osc (default from --kind)");
  env->add_option("--region", c.region, "all, small (|x|+|y| <= 1) or large")->capture_default_str();
  env->add_flag("--opposite-sign", c.opposite_sign, "use (x, -y)");
  env->add_option("--gap", c.gap, "drop points with |x-y| < gap (|x|+|y|)");
  env->add_option("--max-sum", c.max_sum, "drop points with |x|+|y| > max-sum");
  add_output_options(env, c);

  CLI::App* region = app.add_subcommand("region", "classify (1/p, 1/q) for a setting");
  region->add_option("--setting", c.setting, "conv, hermite_type, dunkl, local_conv, global_conv, local_hermite")
      ->capture_default_str();
  region->add_option("--alpha", c.alpha, "type parameter (decimal or fraction)")->capture_default_str();
  region->add_option("--sigma", c.sigma, "potential order (decimal or fraction)")->capture_default_str();
  region->add_option("--p", c.p, "exponent p in [1, inf]");
  region->add_option("--q", c.q, "exponent q in [1, inf]");
  region->add_option("--inv-p", c.inv_p, "1/p in [0, 1]");
  region->add_option("--inv-q", c.inv_q, "1/q in [0, 1]");
  add_output_options(region, c);

  CLI::App* figure = app.add_subcommand("figure", "boundary polygon and membership samples of a region");
  figure->add_option("--setting", c.setting, "conv, hermite_type or dunkl")->capture_default_str();
  figure->add_option("--alpha", c.alpha, "type parameter")->capture_default_str();
  figure->add_option("--sigma", c.sigma, "potential order")->capture_default_str();
  figure->add_option("--resolution", c.resolution, "membership samples per axis")->capture_default_str();
  add_output_options(figure, c);

  CLI::App* exps = app.add_subcommand("experiments", "run experiment suites");
  exps->add_option("--suite", c.suites, "suite name (repeatable) or all");
  exps->add_option("--seed", c.seed, "RNG seed for randomized suites")->capture_default_str();
  add_output_options(exps, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    if (eval->parsed()) return cmd_eval(c, out);
    if (env->parsed()) return cmd_envelope_check(c, out);
    if (region->parsed()) return cmd_region(c, out);
    if (figure->parsed()) return cmd_figure(c, out);
    if (exps->parsed()) return cmd_experiments(c, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lagpot::cli
