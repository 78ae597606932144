#include "qtree/proximity.hpp"
#include "qtree/ring_oracle.hpp"

#include "support.hpp"

#include <set>

using namespace qtree;
using namespace qtree::testing;

namespace {

const Step kInf = Step::infinity();
Step st(long v) { return Step(Rational(v)); }
Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// {beta_a} together with beta'
FamilySet all_betas() { return {Family::fiber(Point(), {}, {kInf}).with_a_parameter()}; }
FamilySet betas_without_prime() { return {Family::fiber(Point(), {st(0)}, {kInf}).with_a_parameter()}; }

// the blow-up of D followed by the blow-up of [inf]
FamilySet model_points() { return {Family::fiber(Point(), {kInf}, {}), Family::fiber(at("[inf]"), {}, {})}; }

Point beta(const Rational& a) { return Point::from_path({fiber_coordinate(Step(a)), kInf}); }

}  // namespace

TEST_CASE("point membership") {
  CHECK(in_point(rf("y^2/(x+2*y)"), at("[-1/2, inf]")));
  CHECK_FALSE(in_point(rf("y/x"), at("[inf, inf]")));
  CHECK(position(at("[inf, inf]"), rf("y/x")) == Position::pole);
  for (const char* p : {"[]", "[0]", "[inf, 3, -1/2]", "[1, 1, 1, inf]"}) CHECK(in_point(rf("x"), at(p)));
  CHECK_THROWS_AS(in_point(rf("x/(x+a*y)"), Point()), std::invalid_argument);
}

TEST_CASE("membership persists up the tree") {
  std::mt19937_64 rng(kSeed);
  const auto alphabet = steps_of({"-1", "0", "1", "2", "inf"});
  int upward = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Poly num = random_poly(rng, 3, 3);
    const Poly den = random_poly(rng, 3, 3);
    if (num.is_zero() || den.is_zero()) continue;
    const RatFunc f(num, den);
    const Path long_path = random_path(rng, alphabet, 4);
    const Point top = Point::from_path(long_path);
    for (std::size_t l = 0; l < long_path.size(); ++l) {
      if (!in_point(f, top.prefix(l))) continue;
      ++upward;
      for (std::size_t m = l; m <= long_path.size(); ++m) CHECK(in_point(f, top.prefix(m)));
    }
  }
  CHECK(upward > 50);
}

TEST_CASE("family membership examples") {
  auto ans = in_family(rf("y^2/(x+a*y)"), all_betas());
  CHECK(ans.verdict == Verdict::yes);
  CHECK(ans.exceptions.empty());

  ans = in_family(rf("x^2/y"), all_betas());
  CHECK(ans.verdict == Verdict::yes);

  ans = in_family(rf("y/x"), all_betas());
  CHECK(ans.verdict == Verdict::no);
  REQUIRE(ans.witness.has_value());
  CHECK(ans.witness->path() == parse_path("[inf, inf]"));

  ans = in_family(rf("x/y"), betas_without_prime());
  CHECK(ans.verdict == Verdict::yes);

  // beta' is where x/y fails
  ans = in_family(rf("x/y"), all_betas());
  CHECK(ans.verdict == Verdict::no);
  REQUIRE(ans.witness.has_value());
  CHECK(ans.witness->path() == parse_path("[0, inf]"));
}

TEST_CASE("parameter exceptions") {
  // a pole along the fiber only when a = 0
  auto ans = in_family(rf("(x + y)/(a*x + y)"), {Family::singleton(at("[0]"))});
  CHECK(ans.verdict == Verdict::yes_except);
  REQUIRE(ans.exceptions.size() == 1);
  CHECK(ans.exceptions[0].a == 0);
  CHECK(ans.exceptions[0].verdict == "no");
  REQUIRE(ans.exceptions[0].witness.has_value());

  // (x + a y)/y fails at beta_b only for b = a: on the whole family that is a relation, so no
  ans = in_family(rf("y/(x + a*y)"), betas_without_prime());
  CHECK(ans.verdict == Verdict::no);
  REQUIRE(ans.witness.has_value());
  REQUIRE(ans.witness_a.has_value());
  CHECK(ans.witness->path() == beta(*ans.witness_a).path());

  ans = in_family(rf("x/(a*y)"), {Family::singleton(at("[inf]"))});
  CHECK(ans.verdict == Verdict::yes_except);
  REQUIRE(ans.exceptions.size() == 1);
  CHECK(ans.exceptions[0].verdict == "undefined");
}

TEST_CASE("the unit (x + a y)/y on the family") {
  const Family fiber = betas_without_prime().front();
  const ParametricPosition pp = position_parametric(fiber_chart(fiber), rf("(x + a*y)/y"));
  CHECK(pp.generic == Position::unit);
  std::vector<std::string> non_units;
  std::vector<const ParametricCase*> trail;
  for_each_leaf(
      pp,
      [&](const ParametricPosition& node, const std::vector<const ParametricCase*>& conds) {
        if (node.degenerate || node.generic == Position::unit) return;
        std::string text;
        for (const auto* c : conds) text += c->condition + ";";
        non_units.push_back(text + to_string(node.generic));
      },
      trail);
  // t = -1/a is b = a in the a coordinate; t = 0 is beta', excluded here
  for (const auto& s : non_units) CHECK_MESSAGE((s.find("t = -1/a") != std::string::npos || s.find("a = -1/t") != std::string::npos ||
                                                 s.find("t = 0") != std::string::npos), s);
  for (long a : {1L, 2L, -3L, 5L}) {
    const RatFunc f = rf("(x + " + std::to_string(a) + "*y)/y");
    CHECK(position(beta(q(a)), f) == Position::zero);
    for (long b : {1L, 2L, -3L, 5L, 0L, 4L})
      if (b != a) CHECK(position(beta(q(b)), f) == Position::unit);
  }
}

TEST_CASE("generators of the local ring lie in every beta") {
  const FamilySet u = all_betas();
  for (const char* g : {"x", "y", "x^2/y"}) CHECK(in_family(rf(g), u).verdict == Verdict::yes);
  for (long c : {-3L, -1L, 0L, 1L, 2L, 7L}) {
    const RatFunc g = rf("y^2/(x + " + std::to_string(c) + "*y)");
    CHECK(in_family(g, u).verdict == Verdict::yes);
    for (long b : {-3L, -1L, 0L, 1L, 2L, 7L, 11L}) CHECK(in_point(g, beta(q(b))));
    CHECK(in_point(g, at("[0, inf]")));
  }
  const auto ans = in_family(rf("y/x"), u);
  REQUIRE(ans.witness.has_value());
  CHECK_FALSE(in_point(rf("y/x"), *ans.witness));
}

TEST_CASE("chains and siblings") {
  const auto ray = ValuationDescriptor::eventually_periodic({}, {st(0)});
  auto ans = in_family(rf("y/x"), {Family::chain(ray, 1)});
  CHECK(ans.verdict == Verdict::yes);
  CHECK(ans.stabilized);

  ans = in_family(rf("x/y"), {Family::chain(ray, 1)});
  CHECK(ans.verdict == Verdict::no);

  // 1/(1 + y1) at [0], a unit that changes shape at every level
  ans = in_family(rf("x/(x + y)"), {Family::chain(ray, 1)});
  CHECK(ans.verdict == Verdict::yes);
  CHECK(ans.stabilized);

  // beta_1 alone is checked and alpha_1 does not contain y/x^2
  ans = in_family(rf("y/x^2"), {Family::siblings(ray, 1)}, 2);
  CHECK(ans.verdict == Verdict::yes);
  CHECK_FALSE(ans.stabilized);
  CHECK(ans.verified_depth == 2);
  CHECK_FALSE(ans.notes.empty());

  ans = in_family(rf("y/x^2"), {Family::siblings(ray, 1)});
  CHECK(ans.verdict == Verdict::yes);
  CHECK(ans.stabilized);
  ans = in_family(rf("y/x^3"), {Family::siblings(ray, 1)});
  CHECK(ans.verdict == Verdict::no);
  REQUIRE(ans.witness.has_value());
  CHECK(ans.witness->path() == parse_path("[0, 1]"));
}

TEST_CASE("irredundance of the blow-up model") {
  const FamilySet u = model_points();
  for (long b : {0L, 1L, -1L, 2L, 7L}) {
    const Point r = at("[" + std::to_string(b) + "]");
    auto res = irredundance_certificate(u, r, {poly("y - " + std::to_string(b) + "*x")});
    REQUIRE(res.certificate.has_value());
    const auto& lines = res.certificate->uniqueness_domain;
    REQUIRE(lines.size() == 2);
    const std::string expected = b == 0 ? "condition t = 0" : "condition t - " + std::to_string(b) + " = 0";
    const std::string expected_neg = "condition t + " + std::to_string(-b) + " = 0";
    CHECK_MESSAGE((lines[0].find(expected) != std::string::npos || lines[0].find(expected_neg) != std::string::npos), lines[0]);
    CHECK(lines[0].find("contained coordinates {" + std::to_string(b) + "}") != std::string::npos);
    CHECK(lines[1].find("contained coordinates {}") != std::string::npos);

    const Point s = at("[inf, " + std::to_string(b) + "]");
    res = irredundance_certificate(u, s, {poly("x - " + std::to_string(b) + "*y^2")});
    REQUIRE(res.certificate.has_value());
  }
  const Point gamma = at("[inf, inf]");
  const Poly cusp = poly("x^2 - y^3");
  const auto res = irredundance_certificate(u, gamma, {poly("y - x"), cusp});
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->valuation == ValuationDescriptor::first_kind(cusp));
  CHECK(res.obstructions.size() == 1);
  CHECK(strict_transform(cusp, at("[inf]")).to_string(at("[inf]").names()) == "x1^2 - y");
  CHECK(strict_transform(cusp, gamma).to_string(gamma.names()) == "x1 - y1");
}

TEST_CASE("irredundance failures") {
  const FamilySet u = model_points();
  const auto res = irredundance_certificate(u, at("[1]"), {poly("y - 2*x"), poly("y^2 - x*y"), poly("x^2 + 1"), poly("x")});
  CHECK_FALSE(res.certificate.has_value());
  REQUIRE(res.obstructions.size() == 4);
  CHECK(res.obstructions[0].find("misses") != std::string::npos);
  CHECK(res.obstructions[1].find("also contains") != std::string::npos);
  CHECK_THROWS_AS(irredundance_certificate(u, at("[inf]"), {poly("x")}), std::invalid_argument);
}

TEST_CASE("certificates survive direct rechecks") {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 6);
  const FamilySet u = model_points();
  for (long b : {0L, 1L, -1L, 2L, 7L}) {
    const Poly h = poly("y - " + std::to_string(b) + "*x");
    const Point r = at("[" + std::to_string(b) + "]");
    const auto res = irredundance_certificate(u, r, {h});
    REQUIRE(res.certificate.has_value());
    CHECK(first_kind_contains(h, r));
    std::vector<Point> competitors{at("[inf]"), at("[" + std::to_string(b - 1) + "]"), at("[" + std::to_string(b + 1) + "]"), at("[inf, inf]")};
    while (competitors.size() < 25) {
      const Rational t = q(num(rng), den(rng));
      competitors.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? Point().child(Step(t)) : at("[inf]").child(Step(t)));
    }
    for (const auto& c : competitors) {
      if (c == r || !member(u, c)) continue;
      CHECK_FALSE(first_kind_contains(h, c));
    }
  }
}

TEST_CASE("fiber containment with a jump in multiplicity") {
  // y^2 - x^3 is tangent to y = 0 and its branch runs through [0, inf]
  const Family f = Family::fiber(Point(), {}, {kInf});
  const FiberContainment fc = fiber_containment(poly("y^2 - x^3"), f);
  CHECK_FALSE(fc.all_generic_contained);
  CHECK(fc.contained == std::vector<Step>{st(0)});
  CHECK(first_kind_contains(poly("y^2 - x^3"), at("[0, inf]")));
  CHECK_FALSE(first_kind_contains(poly("y^2 - x^3"), at("[0, 0]")));
}

TEST_CASE("semigroup membership") {
  CHECK(semigroup_member({-2, 3}, {{1, 0}, {0, 1}, {-1, 2}, {-2, 3}}));
  CHECK(semigroup_member({0, 0}, {{5, 7}}));
  for (long n = 1; n <= 10; ++n) {
    std::vector<ExponentVector> gens{{1, 0}, {0, 1}};
    for (long k = 1; k <= n; ++k) gens.push_back({-k, k + 1});
    CHECK_FALSE(semigroup_member({-1, 1}, gens));
    CHECK(semigroup_member({-n, n + 1}, gens));
  }
  CHECK(semigroup_member({-2, 4}, {{1, 0}, {0, 1}, {-1, 2}}));
  CHECK(semigroup_member({-1, 3}, {{1, 0}, {0, 1}, {-1, 2}}));
  CHECK_FALSE(semigroup_member({-2, 3}, {{1, 0}, {0, 1}, {-1, 2}}));
}

TEST_CASE("semigroup membership agrees with brute force") {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_int_distribution<long> coord(-3, 4);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<ExponentVector> gens{{1, 0}};
    const int extra = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < extra; ++i) {
      const long b = std::uniform_int_distribution<long>(1, 4)(rng);
      gens.push_back({std::uniform_int_distribution<long>(-b + 1, 3)(rng), b});
    }
    const ExponentVector target{coord(rng), std::uniform_int_distribution<long>(0, 8)(rng)};
    // brute force with at most 8 copies of each generator
    std::set<ExponentVector> sums{{0, 0}};
    for (const auto& g : gens) {
      std::set<ExponentVector> next;
      for (const auto& s : sums)
        for (long k = 0; k <= 8; ++k) next.insert({s.first + k * g.first, s.second + k * g.second});
      sums = std::move(next);
    }
    const bool brute = sums.count(target) > 0;
    // every generator has positive weight under x + 4y, so 8 copies cover small targets
    if (target.first + 4 * target.second <= 8) CHECK(semigroup_member(target, gens) == brute);
    if (brute) CHECK(semigroup_member(target, gens));
  }
}

TEST_CASE("demos") {
  CHECK(demo_names().size() == 7);
  for (const auto& name : demo_names()) {
    const DemoReport report = run_demo(name);
    CHECK(report.name == name);
    CHECK(!report.claims.empty());
    for (const auto& c : report.claims) CHECK_MESSAGE(c.passed, name << ": " << c.claim << " [" << c.detail << "]");
  }
  CHECK_THROWS_AS(run_demo("no-such-demo"), std::invalid_argument);
}
