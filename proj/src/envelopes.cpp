#include "lagpot/envelopes.hpp"

#include "lagpot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lagpot {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EnvelopeConstants EnvelopeConstants::make(double C_ratio, double c_lower, double c_upper) {
  if (!(C_ratio >= 1.0)) throw DomainError("C_ratio must be >= 1");
  if (!(c_upper > 0.0)) throw DomainError("c_upper must be > 0");
  if (!(c_lower >= c_upper)) throw DomainError("c_lower must be >= c_upper");
  return {C_ratio, c_lower, c_upper};
}

EnvelopeBounds EnvelopeShape::bounds(const EnvelopeConstants& k) const {
  const double logc = std::log(k.C_ratio);
  const double zl = has_exponential ? k.c_lower * decay : 0.0;
  const double zu = has_exponential ? k.c_upper * decay : 0.0;
  return {scale_log(base, -logc - zl), scale_log(base, logc - zu)};
}

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                             : lo + f * (hi - lo));
  }
  out.back() = hi;
  out.front() = lo;
  return out;
}

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || (parts[0] != "log" && parts[0] != "lin"))
    throw DomainError("grid must look like log:lo:hi:n or lin:lo:hi:n (got '" + text + "')");
  GridSpec g;
  g.log_spaced = parts[0] == "log";
  try {
    g.lo = std::stod(parts[1]);
    g.hi = std::stod(parts[2]);
    g.n = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw DomainError("grid bounds and count must be numbers (got '" + text + "')");
  }
  if (g.n < 1) throw DomainError("grid count must be >= 1");
  if (!(g.lo <= g.hi)) throw DomainError("grid needs lo <= hi");
  if (g.log_spaced && !(g.lo > 0.0)) throw DomainError("log grid needs lo > 0");
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << (log_spaced ? "log:" : "lin:") << lo << ':' << hi << ':' << n;
  return os.str();
}

std::vector<double> calibration_c_grid() {
  std::vector<double> c(25);
  for (int i = 0; i < 25; ++i) c[i] = std::exp(std::log(1e-3) + i * (std::log(10.0) - std::log(1e-3)) / 24.0);
  c.front() = 1e-3;
  c.back() = 10.0;
  return c;
}

RatioReport calibrate_samples(const std::vector<CalibrationSample>& samples, const GridSpec& grid) {
  RatioReport rep;
  rep.grid = grid;
  struct Item {
    double log_ratio;  // log X - log Y
    double z;
  };
  std::vector<Item> items;
  items.reserve(samples.size());
  double lmin = kInf, lmax = -kInf;
  for (const auto& s : samples) {
    const SignedLogValue& x = s.value;
    const SignedLogValue& y = s.shape.base;
    const bool both_inf = x.is_infinite() && y.is_infinite();
    const bool both_zero = x.is_zero() && y.is_zero();
    if (both_inf || both_zero) {
      ++rep.skipped;
      continue;
    }
    if (x.sign * y.sign < 0) throw DomainError("kernel and envelope have opposite signs");
    double lr;
    if (x.is_zero() || y.is_infinite()) lr = -kInf;
    else if (y.is_zero() || x.is_infinite()) lr = kInf;
    else lr = x.log_abs - y.log_abs;
    const double z = s.shape.has_exponential ? s.shape.decay : 0.0;
    items.push_back({lr, z});
    if (lr < lmin) {
      lmin = lr;
      rep.argmin = s.point;
    }
    if (lr > lmax) {
      lmax = lr;
      rep.argmax = s.point;
    }
  }
  rep.points = items.size();
  if (items.empty()) return rep;
  rep.log_min_ratio = lmin;
  rep.log_max_ratio = lmax;
  rep.min_ratio = std::exp(lmin);
  rep.max_ratio = std::exp(lmax);

  auto c_up = [&](double c) {
    double m = -kInf;
    for (const auto& it : items) m = std::max(m, it.log_ratio + c * it.z);
    return m;
  };
  auto c_lo = [&](double c) {
    double m = -kInf;
    for (const auto& it : items) m = std::max(m, -it.log_ratio - c * it.z);
    return m;
  };
  const bool any_exp = std::any_of(items.begin(), items.end(), [](const Item& i) { return i.z > 0.0; });
  if (!any_exp) {
    const double logc = std::max(lmax, -lmin);
    rep.fitted = {std::exp(std::max(0.0, logc)), 1.0, 1.0};
    return rep;
  }
  const std::vector<double> cs = calibration_c_grid();
  const double star = std::max(c_lo(cs.back()), c_up(cs.front()));
  const double slack = 1e-12 * std::max(1.0, std::fabs(star));
  std::size_t iu = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (c_up(cs[i]) <= star + slack) iu = i;
  std::size_t il = cs.size() - 1;
  for (std::size_t i = cs.size(); i-- > iu;)
    if (c_lo(cs[i]) <= star + slack) il = i;
  const double logc = std::max({0.0, c_up(cs[iu]), c_lo(cs[il])});
  rep.fitted = {std::exp(logc), cs[il], cs[iu]};
  return rep;
}

bool sandwich_holds(const std::vector<CalibrationSample>& samples, const EnvelopeConstants& k, double slack) {
  for (const auto& s : samples) {
    if (s.value.is_infinite() && s.shape.base.is_infinite()) continue;
    if (s.value.is_zero() && s.shape.base.is_zero()) continue;
    const EnvelopeBounds b = s.shape.bounds(k);
    const double lx = s.value.log_abs;
    if (s.value.sign <= 0 || b.upper.sign <= 0) return false;
    if (lx < b.lower.log_abs - slack || lx > b.upper.log_abs + slack) return false;
  }
  return true;
}

}  // namespace lagpot
