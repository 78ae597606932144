#include "support.hpp"

#include <doctest.h>

using namespace qtree;
using namespace qtree::testing;

namespace {

// Expression in the names of a point, e.g. "y1/(y1^2 + x)".
RatFunc at_point(const Point& point, std::string_view text) { return rf(text, point.names()); }

}  // namespace

TEST_CASE("children and their parameters") {
  const Point d;
  const Point d0 = d.child(Step(Rational(0)));
  CHECK(d0.first_parameter() == rf("x"));
  CHECK(d0.second_parameter() == rf("y/x"));
  const Point dinf = d.child(Step::infinity());
  CHECK(dinf.first_parameter() == rf("y"));
  CHECK(dinf.second_parameter() == rf("x/y"));
  const Point d00 = d0.child(Step(Rational(0)));
  CHECK(d00.first_parameter() == rf("x"));
  CHECK(d00.second_parameter() == rf("y/x^2"));
  CHECK(d00.level() == 2);
  CHECK(at("[0, inf]").names()[0] == "y1");
  CHECK(at("[0, inf]").names()[1] == "x1");
  CHECK(at("[inf, inf]").names()[0] == "x1");
  CHECK(at("[inf, inf]").names()[1] == "y1");
}

TEST_CASE("express through charts") {
  const RatFunc f = rf("x*y/(y^2 + x^3)");
  const Point d0 = at("[0]");
  CHECK(express(d0, f) == at_point(d0, "y1/(y1^2 + x)"));
  const Point d00 = at("[0, 0]");
  CHECK(express(d00, f) == at_point(d00, "y2/(x*y2^2 + 1)"));
  CHECK(express(Point(), f) == f);
}

TEST_CASE("compare is path prefix order") {
  const Point d;
  for (const auto& path : all_paths(steps_of({"0", "inf"}), 2)) {
    const auto r = compare(d, Point::from_path(path));
    CHECK((r == Relation::below || r == Relation::equal));
  }
  CHECK(compare(at("[0]"), at("[0, inf]")) == Relation::below);
  CHECK(compare(at("[0, inf]"), at("[0]")) == Relation::above);
  CHECK(compare(at("[0]"), at("[inf]")) == Relation::incomparable);
  CHECK(compare(at("[1/2]"), at("[1/2]")) == Relation::equal);
}

TEST_CASE("ord and residues") {
  CHECK(ord(Point(), rf("y^2 + x^3")) == 2);
  CHECK(ord(Point(), rf("y/x")) == 0);
  // x = y1*x2, y = y1^2*x2 at [0, inf]
  const Point p = at("[0, inf]");
  CHECK(p.x_image() == poly("x1*y1", p.names()));
  CHECK(p.y_image() == poly("x1*y1^2", p.names()));
  CHECK(ord(p, rf("x")) == 2);
  CHECK(ord(p, rf("y")) == 3);
  CHECK_THROWS_AS(ord(p, RatFunc()), std::domain_error);

  const VarNames t_names{"t", "", "", ""};
  CHECK(residue(Point(), rf("y/x")).value == rf("t", t_names));
  CHECK(residue(Point(), rf("(y - x)/x")).value == rf("t - 1", t_names));
  CHECK(residue(Point(), rf("x^2/y^2")).value == rf("1/t^2", t_names));
  // x^3/y^2 has order 1 at D, so it lies in the maximal ideal.
  CHECK(residue(Point(), rf("x^3/y^2")).positive_order);
  CHECK(residue(Point(), rf("x + y")).positive_order);
  CHECK_THROWS_WITH_AS(residue(Point(), rf("1/x")), "not in valuation ring", std::domain_error);
}

TEST_CASE("locate") {
  CHECK(locate(rf("(x + 2*y)/y"), rf("y^2/(x + 2*y)")) == at("[-1/2, inf]"));
  CHECK(locate(rf("y/x"), rf("x^2/y")) == at("[0, inf]"));
  CHECK(locate(rf("x"), rf("y")) == Point());
  CHECK(locate(rf("y"), rf("x")) == Point());
  CHECK(locate(rf("x"), rf("y/x - 3")) == at("[3]"));
  CHECK_THROWS_AS(locate(rf("x"), rf("x^2")), ComputationError);
  // Located point: both generators are zeros with independent linear parts.
  const Point beta = at("[-1/2, inf]");
  const RatFunc g1 = express(beta, rf("(x + 2*y)/y"));
  const RatFunc g2 = express(beta, rf("y^2/(x + 2*y)"));
  CHECK(value_at_origin(g1.num()).is_zero());
  CHECK(value_at_origin(g2.num()).is_zero());
  CHECK(order_at_origin(g1.num()) == 1);
  CHECK(order_at_origin(g2.num()) == 1);
  CHECK_FALSE(divides(lowest_form(g1.num()), lowest_form(g2.num())));
}

TEST_CASE("path literals") {
  CHECK(to_string(parse_path("[0, inf, -1/2]")) == "[0, inf, -1/2]");
  CHECK(to_string(parse_path("[]")) == "[]");
  CHECK(to_string(parse_path(" [ 2/4 ,inf ] ")) == "[1/2, inf]");
  CHECK_THROWS(parse_path("[0,"));
  CHECK_THROWS(parse_path("0, 1"));
}

TEST_CASE("inverse substitution identity") {
  std::mt19937_64 rng(kSeed);
  const auto alphabet = steps_of({"-2", "-1", "0", "1", "1/2", "3", "inf"});
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t level = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
    const Point pt = Point::from_path(random_path(rng, alphabet, level));
    CHECK(pt.chart().x_image().is_polynomial());
    CHECK(pt.chart().y_image().is_polynomial());
    if (level <= 5) {
      std::array<std::optional<RatFunc>, kNumVars> images{};
      images[kVarP] = pt.first_parameter();
      images[kVarQ] = pt.second_parameter();
      CHECK(RatFunc(pt.x_image()).compose(images) == rf("x"));
      CHECK(RatFunc(pt.y_image()).compose(images) == rf("y"));
      continue;
    }
    // Deep charts: the symbolic composite is large, so check the identity at
    // random rational points where the parameters are defined.
    for (int sample = 0; sample < 6; ++sample) {
      std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
      Rational x0(num(rng), den(rng)), y0(num(rng), den(rng));
      x0.canonicalize();
      y0.canonicalize();
      const auto at_sample = [&](const RatFunc& f) -> std::optional<Rational> {
        const Rational d = f.den().evaluate(kVarP, x0).evaluate(kVarQ, y0).constant_coeff();
        if (d == 0) return std::nullopt;
        return f.num().evaluate(kVarP, x0).evaluate(kVarQ, y0).constant_coeff() / d;
      };
      const auto p0 = at_sample(pt.first_parameter());
      const auto q0 = at_sample(pt.second_parameter());
      if (!p0 || !q0) continue;
      CHECK(pt.x_image().evaluate(kVarP, *p0).evaluate(kVarQ, *q0).constant_coeff() == x0);
      CHECK(pt.y_image().evaluate(kVarP, *p0).evaluate(kVarQ, *q0).constant_coeff() == y0);
    }
  }
}

TEST_CASE("ord is a valuation") {
  std::mt19937_64 rng(kSeed + 1);
  const auto alphabet = steps_of({"-1", "0", "1", "2", "inf"});
  for (int trial = 0; trial < 40; ++trial) {
    const Point pt = Point::from_path(random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(0, 4)(rng)));
    const Poly f = random_poly(rng, 4, 3);
    const Poly g = random_poly(rng, 4, 3);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(ord(pt, f * g) == ord(pt, f) + ord(pt, g));
    if (!(f + g).is_zero()) CHECK(ord(pt, f + g) >= std::min(ord(pt, f), ord(pt, g)));
  }
}

TEST_CASE("containment agrees with express") {
  std::mt19937_64 rng(kSeed + 2);
  const auto alphabet = steps_of({"-1", "0", "1", "inf"});
  for (int trial = 0; trial < 30; ++trial) {
    const Path path = random_path(rng, alphabet, 5);
    const Point beta = Point::from_path(path);
    const Point alpha = beta.prefix(std::uniform_int_distribution<std::size_t>(0, 4)(rng));
    REQUIRE(compare(alpha, beta) == Relation::below);
    for (const RatFunc& param : {alpha.first_parameter(), alpha.second_parameter()}) {
      const RatFunc e = express(beta, param);
      CHECK_FALSE(value_at_origin(e.den()).is_zero());
    }
  }
}

TEST_CASE("exceptional divisor is the first new parameter") {
  std::mt19937_64 rng(kSeed + 3);
  const auto alphabet = steps_of({"-2", "0", "1", "1/3", "inf"});
  for (int trial = 0; trial < 30; ++trial) {
    const Point alpha = Point::from_path(random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(0, 4)(rng)));
    const Point child = alpha.child(random_step(rng, alphabet));
    const RatFunc e1 = express(child, alpha.first_parameter());
    const RatFunc e2 = express(child, alpha.second_parameter());
    REQUIRE(e1.is_polynomial());
    REQUIRE(e2.is_polynomial());
    const Poly ideal = gcd(e1.num(), e2.num());
    CHECK(ideal == Poly::variable(kVarP));
  }
}

TEST_CASE("residues are multiplicative") {
  std::mt19937_64 rng(kSeed + 4);
  const auto alphabet = steps_of({"-1", "0", "1", "inf"});
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 30; ++trial) {
    const Point pt = Point::from_path(random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(0, 3)(rng)));
    const Poly f1 = random_poly(rng, 3, 3), f2 = random_poly(rng, 3, 3);
    const Poly g1 = random_poly(rng, 3, 3), g2 = random_poly(rng, 3, 3);
    if (f1.is_zero() || f2.is_zero() || g1.is_zero() || g2.is_zero()) continue;
    const RatFunc f = RatFunc(f1, f2), g = RatFunc(g1, g2);
    if (ord(pt, f) != 0 || ord(pt, g) != 0) continue;
    ++checked;
    CHECK(residue(pt, f).value * residue(pt, g).value == residue(pt, f * g).value);
  }
  CHECK(checked == 30);
}
