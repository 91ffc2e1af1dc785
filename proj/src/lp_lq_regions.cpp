#include "lagpot/lp_lq_regions.hpp"

#include "json.hpp"

#include <regex>
#include <sstream>

namespace lagpot {

namespace {

using Pt = RegionPoint<Rational>;

bool same(const Pt& a, const Pt& b) { return a.inv_p == b.inv_p && a.inv_q == b.inv_q; }

// Sutherland-Hodgman against the closed half-plane slack >= 0.
std::vector<Pt> clip(const std::vector<Pt>& poly, const Constraint<Rational>& c) {
  std::vector<Pt> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % n];
    const Rational sp = c.slack(p), sq = c.slack(q);
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      const Rational t = sp / (sp - sq);
      out.push_back({p.inv_p + t * (q.inv_p - p.inv_p), p.inv_q + t * (q.inv_q - p.inv_q)});
    }
    if (n == 1) break;
  }
  std::vector<Pt> dedup;
  for (const auto& p : out)
    if (dedup.empty() || !same(dedup.back(), p)) dedup.push_back(p);
  while (dedup.size() > 1 && same(dedup.front(), dedup.back())) dedup.pop_back();
  return dedup;
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  const Rational cross = (b.inv_p - a.inv_p) * (p.inv_q - a.inv_q) - (b.inv_q - a.inv_q) * (p.inv_p - a.inv_p);
  if (cross != 0) return false;
  const Rational dot = (p.inv_p - a.inv_p) * (b.inv_p - a.inv_p) + (p.inv_q - a.inv_q) * (b.inv_q - a.inv_q);
  const Rational len = (b.inv_p - a.inv_p) * (b.inv_p - a.inv_p) + (b.inv_q - a.inv_q) * (b.inv_q - a.inv_q);
  return dot > 0 && dot < len;
}

std::string square_side(const Pt& a, const Pt& b) {
  if (a.inv_p == 0 && b.inv_p == 0) return "square side 1/p = 0";
  if (a.inv_p == 1 && b.inv_p == 1) return "square side 1/p = 1";
  if (a.inv_q == 0 && b.inv_q == 0) return "square side 1/q = 0";
  if (a.inv_q == 1 && b.inv_q == 1) return "square side 1/q = 1";
  return "";
}

}  // namespace

namespace {

// cpp_int reads a leading 0 as an octal prefix; keep the sign, drop the zeros.
std::string decimal_digits(std::string s) {
  std::string sign;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') sign = "-";
    s.erase(0, 1);
  }
  const auto first = s.find_first_not_of('0');
  return first == std::string::npos ? "0" : sign + s.substr(first);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex dec(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    const boost::multiprecision::cpp_int num(decimal_digits(m[1].str())), den(decimal_digits(m[2].str()));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (std::regex_match(text, m, dec) && (m[2].length() > 0 || m[3].length() > 0)) {
    boost::multiprecision::cpp_int num(decimal_digits(m[2].str() + m[3].str()));
    long exp10 = -static_cast<long>(m[3].length());
    if (m[4].matched) exp10 += std::stol(m[4].str());
    if (exp10 > 400 || exp10 < -400) throw DomainError("exponent out of range in '" + text + "'");
    boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                      static_cast<unsigned>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    return m[1].str() == "-" ? Rational(-r) : r;
  }
  throw DomainError("not a number: '" + text + "'");
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(Setting s) {
  switch (s) {
    case Setting::Conv: return "conv";
    case Setting::HermiteType: return "hermite_type";
    case Setting::Dunkl: return "dunkl";
  }
  return "?";
}

Setting parse_setting(const std::string& text) {
  if (text == "conv") return Setting::Conv;
  if (text == "hermite_type" || text == "hermite") return Setting::HermiteType;
  if (text == "dunkl") return Setting::Dunkl;
  throw DomainError("unknown setting '" + text + "' (expected conv, hermite_type, dunkl)");
}

FigureData figure_data(Setting setting, const Rational& alpha, const Rational& sigma, int resolution) {
  if (resolution < 2) throw DomainError("figure resolution must be >= 2");
  const RegionSpec<Rational> spec = setting_region(setting, alpha, sigma);
  FigureData fig;
  fig.setting = setting;
  fig.alpha = to_string(alpha);
  fig.sigma = to_string(sigma);
  fig.rule = spec.rule;
  const auto label = setting == Setting::HermiteType ? hermite_shape_label(alpha, sigma) : std::nullopt;
  fig.shape_label = label ? *label : (alpha >= Rational(-1, 2) ? "alpha >= -1/2" : "alpha < -1/2");

  std::vector<Pt> poly = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (const auto& c : spec.constraints) poly = clip(poly, c);

  // Excluded points inside an edge become vertices so that they can carry flags.
  for (const auto& ex : spec.excluded) {
    if (poly.size() < 2) break;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pt a = poly[i], b = poly[(i + 1) % poly.size()];
      if (on_segment(a, b, ex)) {
        poly.insert(poly.begin() + static_cast<long>(i) + 1, ex);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < spec.excluded.size(); ++i) {
    const Pt& ex = spec.excluded[i];
    if (ex.inv_p >= 0 && ex.inv_p <= 1 && ex.inv_q >= 0 && ex.inv_q <= 1)
      fig.excluded_points.push_back({to_double(ex.inv_p), to_double(ex.inv_q)});
  }

  auto in_region = [&](const Pt& p) { return region_detail::evaluate(spec, p).bounded; };
  for (const auto& p : poly) fig.vertices.push_back({to_double(p.inv_p), to_double(p.inv_q)});
  const std::size_t edges = poly.size() < 2 ? 0 : (poly.size() == 2 ? 1 : poly.size());
  for (std::size_t i = 0; i < edges; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % poly.size()];
    FigureSegment s;
    s.id = static_cast<int>(i);
    s.x0 = to_double(a.inv_p);
    s.y0 = to_double(a.inv_q);
    s.x1 = to_double(b.inv_p);
    s.y1 = to_double(b.inv_q);
    s.closed_start = in_region(a);
    s.closed_end = in_region(b);
    s.label = square_side(a, b);
    for (const auto& c : spec.constraints) {
      if (c.on_line(a) && c.on_line(b)) {
        s.label = c.text;
        if (c.strict) {
          s.closed = false;
          break;
        }
      }
    }
    s.label += s.closed ? " (closed)" : " (open)";
    fig.segments.push_back(s);
  }

  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Pt p{Rational(i, resolution - 1), Rational(j, resolution - 1)};
      fig.samples.push_back({to_double(p.inv_p), to_double(p.inv_q), in_region(p)});
    }
  }
  return fig;
}

std::string figure_csv(const FigureData& fig) {
  std::ostringstream os;
  os.precision(17);
  os << "segment_id,x0,y0,x1,y1,closed_start,closed_end,label\n";
  for (const auto& s : fig.segments) {
    os << s.id << ',' << s.x0 << ',' << s.y0 << ',' << s.x1 << ',' << s.y1 << ',' << (s.closed_start ? 1 : 0) << ','
       << (s.closed_end ? 1 : 0) << ",\"" << s.label << "\"\n";
  }
  return os.str();
}

std::string figure_json(const FigureData& fig) {
  nlohmann::json j;
  j["setting"] = to_string(fig.setting);
  j["alpha"] = fig.alpha;
  j["sigma"] = fig.sigma;
  j["rule"] = fig.rule;
  j["shape_label"] = fig.shape_label;
  j["vertices"] = fig.vertices;
  j["excluded_points"] = fig.excluded_points;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : fig.segments)
    segs.push_back({{"segment_id", s.id},
                    {"x0", s.x0},
                    {"y0", s.y0},
                    {"x1", s.x1},
                    {"y1", s.y1},
                    {"closed_start", s.closed_start},
                    {"closed_end", s.closed_end},
                    {"closed", s.closed},
                    {"label", s.label}});
  j["segments"] = segs;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : fig.samples) samples.push_back({s.inv_p, s.inv_q, s.bounded});
  j["samples"] = samples;
  return j.dump();
}

}  // namespace lagpot
