#include "qtree/proximity.hpp"

#include "oracle.hpp"
#include "support.hpp"

#include <map>

using namespace qtree;
using namespace qtree::testing;

TEST_CASE("proximity examples") {
  for (const auto& s : steps_of({"-3", "0", "1/2", "7", "inf"})) CHECK(is_proximate(Point().child(s), Point()));
  CHECK(is_proximate(at("[0, inf, 0]"), Point()));
  CHECK_FALSE(is_proximate(at("[0, 1]"), Point()));
  CHECK_FALSE(is_proximate(at("[0, inf, 0]"), at("[0]")));
  CHECK_FALSE(is_proximate(Point(), Point()));
  CHECK_FALSE(is_proximate(at("[0]"), at("[0]")));
  const auto rf_form = ray_form(at("[3, inf, 0, 0]"), Point());
  REQUIRE(rf_form.has_value());
  CHECK(rf_form->base_child_step == Step(Rational(3)));
  CHECK(rf_form->extension_count == 3);
}

TEST_CASE("proximity examples against the valuation oracle") {
  CHECK(proximate_by_valuation(at("[0, inf, 0]"), Point()));
  CHECK_FALSE(proximate_by_valuation(at("[0, 1]"), Point()));
  CHECK_FALSE(proximate_by_valuation(at("[0, inf, 0]"), at("[0]")));
  // second parameter of [0, 1] is y/x^2 - 1, of order -1 at D
  CHECK(ord(Point(), at("[0, 1]").second_parameter()) == -1);
  CHECK(ord(at("[0]"), at("[0, inf, 0]").second_parameter()) == -1);
}

TEST_CASE("proximate points") {
  const auto pts = proximate_points(Point(), 2, steps_of({"0", "1", "inf"}));
  std::vector<Point> expected;
  for (const char* p : {"[0]", "[0, inf]", "[1]", "[1, inf]", "[inf]", "[inf, inf]"}) expected.push_back(at(p));
  CHECK(pts == expected);
  for (const auto& p : pts) CHECK(proximate_by_valuation(p, Point()));

  const auto deeper = proximate_points(Point(), 3, steps_of({"0", "inf"}));
  CHECK(std::find(deeper.begin(), deeper.end(), at("[0, inf, 0]")) != deeper.end());
  CHECK(std::find(deeper.begin(), deeper.end(), at("[0, inf, inf]")) == deeper.end());

  const Point alpha = at("[1, inf]");
  const auto children = proximate_points(alpha, alpha.level() + 1, steps_of({"-1", "2", "inf"}));
  CHECK(children == std::vector<Point>{alpha.child(Step(Rational(-1))), alpha.child(Step(Rational(2))),
                                       alpha.child(Step::infinity())});
}

TEST_CASE("proximate ancestors") {
  CHECK(proximate_ancestors(at("[0, inf]")) == std::vector<Point>{at("[0]"), Point()});
  CHECK(proximate_ancestors(at("[0, 5]")) == std::vector<Point>{at("[0]")});
  CHECK(proximate_ancestors(at("[0, inf, 0]")) == std::vector<Point>{at("[0, inf]"), Point()});
  CHECK_THROWS_AS(proximate_ancestors(Point()), std::invalid_argument);
  for (const auto& alpha : {at("[0]"), Point()})
    CHECK(proximate_by_valuation(at("[0, inf]"), alpha));
  CHECK_FALSE(proximate_by_valuation(at("[0, 5]"), Point()));
}

TEST_CASE("strict transforms") {
  const Poly cusp = poly("x^2 - y^3");
  const Point d_inf = at("[inf]");
  CHECK(strict_transform(cusp, d_inf).to_string(d_inf.names()) == "x1^2 - y");
  const Point gamma = at("[inf, inf]");
  CHECK(strict_transform(cusp, gamma).to_string(gamma.names()) == "x1 - y1");
  const Point d3 = at("[3]");
  CHECK(strict_transform(poly("y - 2*x"), d3) == poly("y1 + 1", d3.names()));
  CHECK(factor_multiplicity(apply_step(cusp, ChartStep::from(Step::infinity())), strict_transform(cusp, d_inf)) == 1);
}

TEST_CASE("first kind containment") {
  CHECK(first_kind_contains(poly("x^2 - y^3"), at("[inf, inf]")));
  for (int b = -2; b <= 2; ++b) {
    const Poly line = poly("y") - Poly(Rational(b)) * poly("x");
    for (int c = -2; c <= 2; ++c) CHECK(first_kind_contains(line, Point().child(Step(Rational(c)))) == (b == c));
    CHECK_FALSE(first_kind_contains(line, at("[inf]")));
  }
  CHECK_THROWS_WITH_AS(first_kind_contains(poly("y - x - 1"), Point()), "divisor misses the tree", std::invalid_argument);
  CHECK_THROWS_AS(first_kind_contains(poly("(y - x)^2"), Point()), std::invalid_argument);
}

TEST_CASE("second kind containment") {
  for (const auto& s : steps_of({"-1", "0", "2", "inf"})) CHECK(second_kind_contains(Point(), Point().child(s)));
  CHECK_FALSE(second_kind_contains(Point(), at("[0, 1]")));
  CHECK(second_kind_contains(at("[0]"), Point()));
}

TEST_CASE("ray rule agrees with the valuation oracle up to level 5") {
  // The oracle at alpha only depends on the suffix: alpha's parameters play the
  // role of x, y. Residues are cached per suffix; a sample is recomputed in
  // absolute coordinates below.
  const auto alphabet = steps_of({"-2", "-1", "0", "1", "2", "inf"});
  std::map<Path, bool, decltype(&path_less)> cache(&path_less);
  std::size_t pairs = 0, disagreements = 0;
  for (const auto& path : all_paths(alphabet, 5)) {
    for (std::size_t level = 0; level < path.size(); ++level) {
      const Path suffix(path.begin() + static_cast<std::ptrdiff_t>(level), path.end());
      auto it = cache.find(suffix);
      if (it == cache.end()) it = cache.emplace(suffix, in_order_valuation(Point::from_path(suffix), Point())).first;
      ++pairs;
      if (it->second != is_proximate(path, Path(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(level))))
        ++disagreements;
    }
  }
  CHECK(pairs > 30000);
  CHECK(disagreements == 0);
}

TEST_CASE("ray rule agrees with the oracle in absolute coordinates") {
  std::mt19937_64 rng(kSeed);
  const auto alphabet = steps_of({"-2", "-1", "0", "1", "2", "1/2", "inf"});
  for (int trial = 0; trial < 150; ++trial) {
    const Path path = random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    const Point beta = Point::from_path(path);
    const Point alpha = beta.prefix(std::uniform_int_distribution<std::size_t>(0, path.size() - 1)(rng));
    CHECK_MESSAGE(is_proximate(beta, alpha) == proximate_by_valuation(beta, alpha), beta.to_string(), " vs ",
                  alpha.to_string());
  }
}

TEST_CASE("at most two proximate ancestors") {
  std::size_t visited = 0;
  for_each_point(steps_of({"-1", "0", "1", "inf"}), 6, [&](const Point& gamma) {
    if (gamma.is_root()) return;
    ++visited;
    const auto anc = proximate_ancestors(gamma);
    CHECK(anc.size() <= 2);
    CHECK(anc.front() == gamma.parent());
  });
  CHECK(visited == 5460);
}

namespace {

Poly random_curve(std::mt19937_64& rng) {
  while (true) {
    Poly h = random_poly(rng, 4, 4);
    h = h - Poly(h.constant_coeff());
    if (!h.is_constant()) return h;
  }
}

}  // namespace

TEST_CASE("strict transform is multiplicative") {
  std::mt19937_64 rng(kSeed + 1);
  const auto alphabet = steps_of({"-1", "0", "1", "inf"});
  for (int trial = 0; trial < 40; ++trial) {
    const Point alpha = Point::from_path(random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(0, 4)(rng)));
    const Poly h1 = random_curve(rng), h2 = random_curve(rng);
    CHECK(strict_transform(h1 * h2, alpha) == monic(strict_transform(h1, alpha) * strict_transform(h2, alpha)));
  }
}

TEST_CASE("exceptional multiplicity is the order before each step") {
  std::mt19937_64 rng(kSeed + 2);
  const auto alphabet = steps_of({"-1", "0", "1", "inf"});
  for (int trial = 0; trial < 40; ++trial) {
    const Path path = random_path(rng, alphabet, std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    const Poly h = random_curve(rng);
    Poly cur = h;
    for (const auto& s : path) {
      const ChartStep step = ChartStep::from(s);
      std::vector<unsigned> mult;
      const Poly next = strict_transform_along(cur, std::span<const ChartStep>(&step, 1), mult);
      REQUIRE(mult.size() == 1);
      const Poly total = apply_step(cur, step);
      // the exceptional power drops exactly the order of the previous equation
      // at a point it passes through, and nothing otherwise
      CHECK(mult[0] == (cur.constant_coeff() == 0 ? order_at_origin(cur) : 0U));
      CHECK(monic(total) == monic(Poly::variable(kVarP).pow(mult[0]) * next));
      cur = next;
    }
  }
}

TEST_CASE("first kind containment is monotone") {
  std::mt19937_64 rng(kSeed + 3);
  const auto alphabet = steps_of({"-1", "0", "1", "inf"});
  const std::vector<Poly> curves{poly("x^2 - y^3"), poly("y - x"), poly("y^2 - x^3 - x^2"), poly("x - y^2"),
                                 poly("(y - x)^2 - x^5")};
  for (int trial = 0; trial < 100; ++trial) {
    const Path path = random_path(rng, alphabet, 6);
    const Poly& h = curves[trial % curves.size()];
    bool left = false;
    for (std::size_t level = 0; level <= path.size(); ++level) {
      const bool in = first_kind_contains(h, Point::from_path(Path(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(level))));
      if (left) CHECK_FALSE(in);
      if (!in) left = true;
    }
  }
}
