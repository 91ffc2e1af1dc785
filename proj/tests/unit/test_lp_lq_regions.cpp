#include "doctest.h"

#include "lagpot/lp_lq_regions.hpp"

#include <algorithm>
#include <random>

using namespace lagpot;

namespace {

using R = Rational;
using Pt = RegionPoint<R>;

R q(const char* s) { return parse_rational(s); }

// Rationals with small denominators land on boundary lines often.
struct RationalSource {
  std::mt19937_64 rng{0x5EED};
  R in(int lo_num, int hi_num, int den) {
    std::uniform_int_distribution<int> d(lo_num, hi_num);
    return R(d(rng), den);
  }
  R unit() {
    std::uniform_int_distribution<int> den(1, 12);
    const int n = den(rng);
    std::uniform_int_distribution<int> num(0, n);
    return R(num(rng), n);
  }
  R alpha() {
    std::uniform_int_distribution<int> den(1, 12);
    const int n = den(rng);
    std::uniform_int_distribution<int> num(-n + 1, 3 * n);
    return R(num(rng), n);
  }
  R sigma() {
    std::uniform_int_distribution<int> den(1, 12);
    const int n = den(rng);
    std::uniform_int_distribution<int> num(1, 3 * n);
    return R(num(rng), n);
  }
};

bool is_corner(const RegionSpec<R>& spec, const Pt& p) {
  return std::any_of(spec.excluded.begin(), spec.excluded.end(),
                     [&](const Pt& e) { return e.inv_p == p.inv_p && e.inv_q == p.inv_q; });
}

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(q("1/3") == R(1, 3));
  CHECK(q("-0.75") == R(-3, 4));
  CHECK(q("2.5e-1") == R(1, 4));
  CHECK(q("3") == R(3));
  CHECK_THROWS(q("abc"));
  CHECK_THROWS(q("1/0"));
}

TEST_CASE("convolution examples") {
  const Verdict a = bounded_conv(q("0"), q("0.5"), Pt{q("1"), q("0.5")});
  CHECK_FALSE(a.bounded);
  CHECK(a.binding_constraint == "excluded corner (1, 1-sigma/(alpha+1))");
  CHECK(bounded_conv(q("-0.75"), q("0.1"), Pt{q("0.5"), q("0.5")}).bounded);
  CHECK(bounded_conv(q("0"), q("2"), Pt{q("0"), q("1")}).bounded);
  CHECK_THROWS_AS(bounded_conv(q("0"), q("1"), Pt{q("1.5"), q("0")}), DomainError);
  CHECK_THROWS_AS(bounded_conv(q("-1"), q("1"), Pt{q("0.5"), q("0.5")}), DomainError);
}

TEST_CASE("hermite-type examples") {
  const Verdict dom = bounded_hermite_type(q("-0.75"), q("0.2"), Pt{q("0.9"), q("0.3")});
  CHECK_FALSE(dom.bounded);
  CHECK(dom.binding_constraint.find("Dom") != std::string::npos);
  CHECK(bounded_hermite_type(q("-0.75"), q("0.2"), Pt{q("0.5"), q("0.3")}).bounded);
  const Verdict corner = bounded_hermite_type(q("0"), q("0.25"), Pt{q("0.5"), q("0")});
  CHECK_FALSE(corner.bounded);
  CHECK(corner.binding_constraint == "excluded corner (2sigma, 0)");
  // Just at 1/q = -alpha-1/2: strict, so unbounded.
  CHECK_FALSE(bounded_hermite_type(q("-0.75"), q("0.2"), Pt{q("0.3"), q("0.25")}).bounded);
}

TEST_CASE("dunkl examples") {
  CHECK(bounded_dunkl(q("-0.5"), q("0.3"), Pt{q("0.6"), q("0.3")}).bounded);
  CHECK_FALSE(bounded_dunkl(q("1"), q("0.5"), Pt{q("0.25"), q("0")}).bounded);
  RationalSource src;
  for (int i = 0; i < 1000; ++i) {
    const R a = src.alpha(), s = src.sigma();
    const Pt p{src.unit(), src.unit()};
    CHECK(bounded_dunkl(a, s, p).bounded == bounded_conv(a, s, p).bounded);
  }
}

TEST_CASE("local and global examples") {
  const Verdict l = bounded_local_conv(q("1"), q("0.4"), Pt{q("0.2"), q("0")});
  CHECK_FALSE(l.bounded);
  CHECK(l.binding_constraint == "excluded corner (sigma/delta, 0)");
  CHECK(bounded_global_conv(q("-0.8"), q("0.3"), Pt{q("0.9"), q("0.6")}).bounded);
  const auto e = derived_exponents(q("-0.8"));
  CHECK(e.delta == q("0.5"));
  CHECK(e.eta == q("0.8"));
}

TEST_CASE("local hermite examples") {
  CHECK_FALSE(bounded_local_hermite(q("0"), q("0.25"), Pt{q("0.5"), q("0")}).bounded);
  CHECK_FALSE(bounded_local_hermite(q("0"), q("0.25"), Pt{q("1"), q("0.5")}).bounded);
  const Verdict dom = bounded_local_hermite(q("-0.75"), q("0.2"), Pt{q("0.8"), q("0.7")});
  CHECK_FALSE(dom.bounded);
  CHECK(dom.binding_constraint.find("Dom") != std::string::npos);
  CHECK(bounded_local_hermite(q("-0.75"), q("0.2"), Pt{q("0.5"), q("0.3")}).bounded);
}

TEST_CASE("convolution = local and global on 1000 rational tuples") {
  RationalSource src;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const R a = src.alpha(), s = src.sigma();
    const Pt p{src.unit(), src.unit()};
    const bool both = bounded_local_conv(a, s, p).bounded && bounded_global_conv(a, s, p).bounded;
    if (bounded_conv(a, s, p).bounded != both) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("duality symmetry for alpha >= -1/2") {
  RationalSource src;
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    R a = src.alpha();
    if (a < q("-0.5")) continue;
    const R s = src.sigma();
    const Pt p{src.unit(), src.unit()};
    const Pt dual{R(1) - p.inv_q, R(1) - p.inv_p};
    for (Setting st : {Setting::Conv, Setting::Dunkl, Setting::HermiteType}) {
      const RegionSpec<R> spec = setting_region(st, a, s);
      if (is_corner(spec, p) || is_corner(spec, dual)) continue;
      CHECK(bounded_in(st, a, s, p).bounded == bounded_in(st, a, s, dual).bounded);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("monotone in sigma within each case") {
  RationalSource src;
  for (int i = 0; i < 1000; ++i) {
    const R a = src.alpha(), s = src.sigma(), s2 = s + src.sigma();
    const Pt p{src.unit(), src.unit()};
    for (Setting st : {Setting::Conv, Setting::Dunkl, Setting::HermiteType}) {
      if (!bounded_in(st, a, s, p).bounded) continue;
      // The moving corners are the one thing a larger sigma can hit.
      if (is_corner(setting_region(st, a, s2), p)) continue;
      CHECK(bounded_in(st, a, s2, p).bounded);
    }
  }
}

TEST_CASE("excluded corners lie on the closure of the region") {
  for (const char* a : {"-0.5", "0", "1"}) {
    for (const char* s : {"0.1", "0.25", "0.4"}) {
      const RegionSpec<R> spec = conv_region(q(a), q(s));
      for (const Pt& c : spec.excluded) {
        // Nudge towards the square's interior along the boundary line; the
        // nudged point is bounded.
        const R h(1, 1000000);
        const R dp = c.inv_p == R(1) ? R(-h) : R(h);
        const R dq = c.inv_q == R(0) ? R(h) : R(-h);
        const Pt inside{R(c.inv_p + dp), c.inv_q};
        const Pt along{R(c.inv_p + dp), R(c.inv_q + dq)};
        CHECK((bounded_conv(q(a), q(s), inside).bounded || bounded_conv(q(a), q(s), along).bounded));
      }
    }
  }
}

TEST_CASE("shape labels fire exactly once") {
  CHECK(hermite_shape_label(q("-0.75"), q("0.3")) == std::optional<std::string>("b1"));
  CHECK(hermite_shape_label(q("-0.6"), q("0.35")) == std::optional<std::string>("b2"));
  CHECK(hermite_shape_label(q("-0.9"), q("0.15")) == std::optional<std::string>("b3"));
  CHECK(hermite_shape_label(q("-0.6"), q("0.05")) == std::optional<std::string>("b4"));
  CHECK_FALSE(hermite_shape_label(q("-0.4"), q("0.3")).has_value());
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<int> den(2, 40);
  for (int i = 0; i < 1000; ++i) {
    const int n = den(rng);
    std::uniform_int_distribution<int> an(-n + 1, -(n / 2) - 1 + (n % 2 == 0 ? 0 : 1));
    R a(an(rng), n);
    if (!(a < q("-0.5"))) a = q("-0.75");
    std::uniform_int_distribution<int> sn(1, n);
    R s(sn(rng), 2 * n);
    if (!(s < q("0.5"))) s = q("0.25");
    CHECK(hermite_shape_labels_firing(a, s).size() == 1);
  }
}

TEST_CASE("figure data for conv alpha = 0 sigma = 1/2") {
  const FigureData f = figure_data(Setting::Conv, q("0"), q("1/2"), 11);
  const std::vector<std::array<double, 2>> want = {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.5}, {1.0, 1.0}, {0.5, 1.0}, {0.0, 0.5}};
  CHECK(f.vertices == want);
  CHECK(f.segments.size() == 6);
  CHECK(f.excluded_points.size() == 2);
  int open = 0;
  for (const auto& s : f.segments) open += s.closed ? 0 : 1;
  CHECK(open == 1);
  CHECK(f.samples.size() == 121);
  for (const auto& s : f.samples) {
    const Pt p{parse_rational(std::to_string(s.inv_p)), parse_rational(std::to_string(s.inv_q))};
    CHECK(s.bounded == bounded_conv(q("0"), q("1/2"), p).bounded);
  }
  const std::string csv = figure_csv(f);
  CHECK(csv.rfind("segment_id,x0,y0,x1,y1,closed_start,closed_end,label", 0) == 0);
}

TEST_CASE("figure data for sigma >= alpha + 1 is the square minus two corners") {
  const FigureData f = figure_data(Setting::Conv, q("0"), q("1"), 5);
  const std::vector<std::array<double, 2>> want = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  CHECK(f.vertices == want);
  CHECK(f.excluded_points.size() == 2);
}

TEST_CASE("figure shape label for the hermite setting") {
  CHECK(figure_data(Setting::HermiteType, q("-0.75"), q("0.3"), 3).shape_label == "b1");
  CHECK(figure_data(Setting::HermiteType, q("0"), q("0.3"), 3).shape_label == "alpha >= -1/2");
}

TEST_CASE("double scalars agree with rationals off the boundary lines") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a_d(-0.95, 2.0), s_d(0.05, 2.0), u_d(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = a_d(rng), s = s_d(rng);
    const RegionPoint<double> p{u_d(rng), u_d(rng)};
    const Pt pr{parse_rational(std::to_string(p.inv_p)), parse_rational(std::to_string(p.inv_q))};
    const R ar = parse_rational(std::to_string(a)), sr = parse_rational(std::to_string(s));
    const RegionPoint<double> pd{to_double(pr.inv_p), to_double(pr.inv_q)};
    CHECK(bounded_conv(to_double(ar), to_double(sr), pd).bounded == bounded_conv(ar, sr, pr).bounded);
  }
}
