#pragma once

// L^p - L^q boundedness regions of the potential operators, as predicates on
// (1/p, 1/q) in [0,1]^2 (0 encodes p = inf or q = inf).
//
// Everything is templated on the scalar so that rational inputs are decided
// exactly on the boundary lines; Rational is the default exact type and
// double is accepted for quick sweeps.

#include "lagpot/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lagpot {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-0.75", "1/3", "2.5e-1" exactly.
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);
inline double to_double(double v) { return v; }
std::string to_string(const Rational& r);

template <class S>
struct RegionPoint {
  S inv_p{};
  S inv_q{};
};

struct Verdict {
  bool bounded = false;
  /// Which characterization decided: conv, hermite_type, dunkl, local_conv,
  /// global_conv or local_hermite, plus its alpha case.
  std::string rule;
  /// The inequality (or excluded point) that decided the verdict. For bounded
  /// points, the constraint with the least slack.
  std::string binding_constraint;
};

template <class S>
struct DerivedExponents {
  S delta;  // max(-1/2, alpha) + 1
  S eta;    // max(1/2, -alpha)
};

/// One linear constraint a x + b y + c >= 0 (or > 0) in (x, y) = (1/p, 1/q).
template <class S>
struct Constraint {
  S a, b, c;
  bool strict;
  std::string text;

  S slack(const RegionPoint<S>& pt) const { return a * pt.inv_p + b * pt.inv_q + c; }
  bool holds(const RegionPoint<S>& pt) const {
    const S v = slack(pt);
    return strict ? v > 0 : v >= 0;
  }
  bool on_line(const RegionPoint<S>& pt) const { return slack(pt) == 0; }
};

template <class S>
struct RegionSpec {
  std::string rule;
  std::vector<Constraint<S>> constraints;
  std::vector<RegionPoint<S>> excluded;
  std::vector<std::string> excluded_text;
};

enum class Setting { Conv, HermiteType, Dunkl };

std::string to_string(Setting s);
/// Accepts conv, hermite_type (or hermite), dunkl.
Setting parse_setting(const std::string& text);

namespace region_detail {

template <class S>
S half() {
  return S(1) / S(2);
}
template <class S>
S quarter() {
  return S(1) / S(4);
}

template <class S>
void check_params(const S& alpha, const S& sigma) {
  if (!(alpha > S(-1))) throw DomainError("alpha must satisfy alpha > -1");
  if (!(sigma > S(0))) throw DomainError("sigma must satisfy sigma > 0");
}

template <class S>
void check_point(const RegionPoint<S>& pt) {
  if (pt.inv_p < S(0) || pt.inv_p > S(1) || pt.inv_q < S(0) || pt.inv_q > S(1))
    throw DomainError("(1/p, 1/q) must lie in [0,1]^2");
}

// 1/q >= 1/p - w   <=>  -x + y + w >= 0
template <class S>
Constraint<S> lower_line(const S& w, std::string text) {
  return {S(-1), S(1), w, false, std::move(text)};
}
// 1/q < 1/p + w    <=>   x - y + w > 0
template <class S>
Constraint<S> upper_line(const S& w, std::string text) {
  return {S(1), S(-1), w, true, std::move(text)};
}

template <class S>
Verdict evaluate(const RegionSpec<S>& spec, const RegionPoint<S>& pt) {
  check_point(pt);
  Verdict v;
  v.rule = spec.rule;
  for (const auto& c : spec.constraints) {
    if (!c.holds(pt)) {
      v.bounded = false;
      v.binding_constraint = c.text;
      return v;
    }
  }
  for (std::size_t i = 0; i < spec.excluded.size(); ++i) {
    if (spec.excluded[i].inv_p == pt.inv_p && spec.excluded[i].inv_q == pt.inv_q) {
      v.bounded = false;
      v.binding_constraint = spec.excluded_text[i];
      return v;
    }
  }
  v.bounded = true;
  const Constraint<S>* best = nullptr;
  S best_slack{};
  for (const auto& c : spec.constraints) {
    const S s = c.slack(pt);
    if (!best || s < best_slack) {
      best = &c;
      best_slack = s;
    }
  }
  v.binding_constraint = best ? best->text : "no constraint";
  return v;
}

}  // namespace region_detail

template <class S>
DerivedExponents<S> derived_exponents(const S& alpha) {
  const S h = region_detail::half<S>();
  return {(alpha > -h ? alpha : S(-h)) + S(1), (-alpha > h ? S(-alpha) : h)};
}

template <class S>
RegionSpec<S> conv_region(const S& alpha, const S& sigma) {
  using namespace region_detail;
  check_params(alpha, sigma);
  RegionSpec<S> r;
  const S w = sigma / (alpha + S(1));
  if (alpha >= -half<S>()) {
    r.rule = "conv, alpha >= -1/2";
    r.constraints = {lower_line(w, "1/q >= 1/p - sigma/(alpha+1)"), upper_line(w, "1/q < 1/p + sigma/(alpha+1)")};
    r.excluded = {{w, S(0)}, {S(1), S(1) - w}};
    r.excluded_text = {"excluded corner (sigma/(alpha+1), 0)", "excluded corner (1, 1-sigma/(alpha+1))"};
  } else {
    r.rule = "conv, alpha < -1/2";
    r.constraints = {lower_line(S(-sigma / alpha), "1/q >= 1/p + sigma/alpha"),
                     upper_line(w, "1/q < 1/p + sigma/(alpha+1)")};
  }
  return r;
}

template <class S>
RegionSpec<S> dunkl_region(const S& alpha, const S& sigma) {
  RegionSpec<S> r = conv_region(alpha, sigma);
  r.rule = "dunkl" + r.rule.substr(4);
  return r;
}

template <class S>
RegionSpec<S> hermite_type_region(const S& alpha, const S& sigma) {
  using namespace region_detail;
  check_params(alpha, sigma);
  RegionSpec<S> r;
  const S w = S(2) * sigma;
  if (alpha >= -half<S>()) {
    r.rule = "hermite_type, alpha >= -1/2";
    r.constraints = {lower_line(w, "1/q >= 1/p - 2sigma"), upper_line(w, "1/q < 1/p + 2sigma")};
    r.excluded = {{w, S(0)}, {S(1), S(1) - w}};
    r.excluded_text = {"excluded corner (2sigma, 0)", "excluded corner (1, 1-2sigma)"};
  } else {
    r.rule = "hermite_type, alpha < -1/2";
    // Dom first so that points outside the domain report it.
    r.constraints = {{S(-1), S(0), (S(2) * alpha + S(3)) / S(2), true, "Dom restriction 1/p < (2alpha+3)/2"},
                     lower_line(w, "1/q >= 1/p - 2sigma"), upper_line(w, "1/q < 1/p + 2sigma"),
                     {S(0), S(1), alpha + half<S>(), true, "1/q > -alpha-1/2"}};
  }
  return r;
}

template <class S>
RegionSpec<S> local_conv_region(const S& alpha, const S& sigma) {
  using namespace region_detail;
  check_params(alpha, sigma);
  const S w = sigma / derived_exponents(alpha).delta;
  RegionSpec<S> r;
  r.rule = "local_conv";
  r.constraints = {lower_line(w, "1/q >= 1/p - sigma/delta")};
  r.excluded = {{w, S(0)}, {S(1), S(1) - w}};
  r.excluded_text = {"excluded corner (sigma/delta, 0)", "excluded corner (1, 1-sigma/delta)"};
  return r;
}

template <class S>
RegionSpec<S> global_conv_region(const S& alpha, const S& sigma) {
  using namespace region_detail;
  check_params(alpha, sigma);
  const S eta = derived_exponents(alpha).eta;
  RegionSpec<S> r;
  r.rule = "global_conv";
  r.constraints = {lower_line(S(sigma / eta), "1/q >= 1/p - sigma/eta"),
                   upper_line(S(sigma / (alpha + S(1))), "1/q < 1/p + sigma/(alpha+1)")};
  if (sigma <= eta && eta == half<S>()) {
    r.excluded = {{S(2) * sigma, S(0)}, {S(1), S(1) - S(2) * sigma}};
    r.excluded_text = {"excluded corner (2sigma, 0)", "excluded corner (1, 1-2sigma)"};
  }
  return r;
}

template <class S>
RegionSpec<S> local_hermite_region(const S& alpha, const S& sigma) {
  using namespace region_detail;
  check_params(alpha, sigma);
  const S w = S(2) * sigma;
  RegionSpec<S> r;
  if (alpha >= -half<S>()) {
    r.rule = "local_hermite, alpha >= -1/2";
    r.constraints = {lower_line(w, "1/q >= 1/p - 2sigma")};
    r.excluded = {{w, S(0)}, {S(1), S(1) - w}};
    r.excluded_text = {"excluded corner (2sigma, 0)", "excluded corner (1, 1-2sigma)"};
  } else {
    r.rule = "local_hermite, alpha < -1/2";
    r.constraints = {{S(-1), S(0), (S(2) * alpha + S(3)) / S(2), true, "Dom restriction 1/p < (2alpha+3)/2"},
                     lower_line(w, "1/q >= 1/p - 2sigma"),
                     {S(0), S(1), alpha + half<S>(), true, "1/q > -alpha-1/2"}};
  }
  return r;
}

template <class S>
RegionSpec<S> setting_region(Setting setting, const S& alpha, const S& sigma) {
  switch (setting) {
    case Setting::Conv: return conv_region(alpha, sigma);
    case Setting::HermiteType: return hermite_type_region(alpha, sigma);
    case Setting::Dunkl: return dunkl_region(alpha, sigma);
  }
  throw DomainError("unknown setting");
}

template <class S>
Verdict bounded_conv(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(conv_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_dunkl(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(dunkl_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_hermite_type(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(hermite_type_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_local_conv(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(local_conv_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_global_conv(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(global_conv_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_local_hermite(const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(local_hermite_region(alpha, sigma), pt);
}
template <class S>
Verdict bounded_in(Setting setting, const S& alpha, const S& sigma, const RegionPoint<S>& pt) {
  return region_detail::evaluate(setting_region(setting, alpha, sigma), pt);
}

/// Shape label of the Hermite-type region for alpha < -1/2, sigma < 1/2:
///   b1  sigma >= alpha+1 and sigma > -alpha/2-1/4
///   b2  -alpha/2-1/4 < sigma < alpha+1
///   b3  alpha+1 <= sigma <= -alpha/2-1/4
///   b4  sigma < alpha+1 and sigma <= -alpha/2-1/4
/// Empty outside that parameter range.
template <class S>
std::optional<std::string> hermite_shape_label(const S& alpha, const S& sigma) {
  using namespace region_detail;
  if (!(alpha < -half<S>()) || !(sigma < half<S>())) return std::nullopt;
  const S a1 = alpha + S(1);
  const S m = -alpha / S(2) - quarter<S>();
  if (sigma >= a1 && sigma > m) return "b1";
  if (m < sigma && sigma < a1) return "b2";
  if (a1 <= sigma && sigma <= m) return "b3";
  if (sigma < a1 && sigma <= m) return "b4";
  return std::nullopt;
}

/// Every label whose defining inequalities hold; used to check that exactly
/// one fires.
template <class S>
std::vector<std::string> hermite_shape_labels_firing(const S& alpha, const S& sigma) {
  const S a1 = alpha + S(1);
  const S m = -alpha / S(2) - region_detail::quarter<S>();
  std::vector<std::string> out;
  if (sigma >= a1 && sigma > m) out.push_back("b1");
  if (m < sigma && sigma < a1) out.push_back("b2");
  if (a1 <= sigma && sigma <= m) out.push_back("b3");
  if (sigma < a1 && sigma <= m) out.push_back("b4");
  return out;
}

// ---- figure data ------------------------------------------------------------

struct FigureSegment {
  int id = 0;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool closed_start = true;
  bool closed_end = true;
  /// "open" for edges on a strict inequality, "closed" otherwise.
  bool closed = true;
  std::string label;
};

struct FigureSample {
  double inv_p, inv_q;
  bool bounded;
};

struct FigureData {
  Setting setting = Setting::Conv;
  std::string alpha, sigma;
  std::string rule;
  /// b1-b4 for the Hermite-type setting with alpha < -1/2, sigma < 1/2;
  /// otherwise "alpha >= -1/2" or "alpha < -1/2".
  std::string shape_label;
  std::vector<std::array<double, 2>> vertices;
  std::vector<FigureSegment> segments;
  std::vector<std::array<double, 2>> excluded_points;
  std::vector<FigureSample> samples;
};

/// Boundary polygon of the bounded region with open/closed flags, plus a
/// resolution x resolution membership sample. Exact arithmetic throughout;
/// doubles only in the output.
FigureData figure_data(Setting setting, const Rational& alpha, const Rational& sigma, int resolution);

/// CSV columns: segment_id,x0,y0,x1,y1,closed_start,closed_end,label
std::string figure_csv(const FigureData& fig);
std::string figure_json(const FigureData& fig);

}  // namespace lagpot
