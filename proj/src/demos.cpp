#include "qtree/proximity.hpp"
#include "qtree/ring_oracle.hpp"
#include "qtree/topology.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qtree {

namespace {

void add(DemoReport& r, std::string claim, bool passed, std::string detail = {}) {
  r.claims.push_back({std::move(claim), passed, std::move(detail)});
}

std::string join(const std::vector<Point>& points) {
  std::string out = "{";
  for (std::size_t i = 0; i < points.size(); ++i) out += (i ? ", " : "") + points[i].to_string();
  return out + "}";
}

Point at(const char* path) { return Point::from_path(parse_path(path)); }

Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string ltos(long v) { return std::to_string(v); }

// The expressed form at `point` matches `expected`, read in the point's own names.
void check_expressed(DemoReport& r, const Point& point, const RatFunc& f, const std::string& expected) {
  const RatFunc got = express(point, f);
  const bool ok = got == parse_expression(expected, point.names());
  add(r, "expressed form at " + point.to_string() + " is " + expected, ok, got.to_string(point.names()));
}

DemoReport example_3_6() {
  DemoReport r{"example-3-6", {}};
  const RatFunc f = parse_expression("x*y/(y^2 + x^3)");
  add(r, "f is undetermined at D", position(Point(), f) == Position::undetermined);
  const Resolution res = resolve(f, 8);
  std::vector<Point> zeros = res.zeros, poles = res.poles;
  std::sort(zeros.begin(), zeros.end());
  std::sort(poles.begin(), poles.end());
  add(r, "distinguished zeros are [0, 0] and [inf]", zeros == std::vector<Point>{at("[0, 0]"), at("[inf]")}, join(zeros));
  add(r, "the distinguished pole is [0, inf]", poles == std::vector<Point>{at("[0, inf]")}, join(poles));
  add(r, "no generic fibers", res.generic.empty());
  check_expressed(r, at("[0]"), f, "y1/(y1^2 + x)");
  check_expressed(r, at("[0, 0]"), f, "y2/(x*y2^2 + 1)");
  check_expressed(r, at("[inf]"), f, "x1/(1 + y*x1^3)");
  check_expressed(r, at("[0, inf]"), f, "1/(y1 + x1)");
  add(r, "f is undetermined at [0]", position(at("[0]"), f) == Position::undetermined);
  add(r, "the zeros are incomparable", compare(at("[0, 0]"), at("[inf]")) == Relation::incomparable);
  add(r, "f is a zero above both zeros", position(at("[0, 0, 5]"), f) == Position::zero && position(at("[inf, -2, inf]"), f) == Position::zero);
  add(r, "f is a pole above the pole", position(at("[0, inf, 3]"), f) == Position::pole);
  return r;
}

DemoReport example_6_3() {
  DemoReport r{"example-6-3", {}};
  const RatFunc r_gen = parse_expression("y^2/x"), s_gen = parse_expression("x^2/y");
  std::size_t failures = 0, r_side = 0, s_side = 0;
  std::string first_failure;
  for (unsigned a = 1; a <= 40; ++a) {
    for (unsigned b = 1; b <= 40; ++b) {
      const Point tau = monomial_path(a, b).terminal;
      const int via_r = ord(tau, r_gen), via_s = ord(tau, s_gen);
      const long lin_r = 2L * b - a, lin_s = 2L * a - b;
      const bool agrees = std::gcd(a, b) != 1 || (via_r == lin_r && via_s == lin_s);
      const bool ok = agrees && (via_r >= 0 || via_s >= 0);
      if (via_r >= 0) ++r_side;
      if (via_s >= 0) ++s_side;
      if (!ok && first_failure.empty()) first_failure = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
      if (!ok) ++failures;
    }
  }
  add(r, "every monomial valuation with 1 <= a, b <= 40 contains y^2/x or x^2/y", failures == 0,
      failures ? "first failure at " + first_failure
               : std::to_string(r_side) + " contain y^2/x, " + std::to_string(s_side) + " contain x^2/y");
  add(r, "R = D[y^2/x] properly contains D", !in_point(r_gen, Point()));
  add(r, "S = D[x^2/y] properly contains D", !in_point(s_gen, Point()));
  return r;
}

DemoReport example_6_5() {
  DemoReport r{"example-6-5", {}};
  const FamilySet u{Family::fiber(Point(), {Step::infinity()}, {}), Family::fiber(at("[inf]"), {}, {})};
  for (long b : {0L, 1L, -1L, 2L, 7L}) {
    const Point rb = Point().child(Step(Rational(b)));
    const Poly h = parse_poly("y - " + ltos(b) + "*x");
    const auto res = irredundance_certificate(u, rb, {h});
    bool unique = false;
    std::string detail;
    if (res.certificate) {
      detail = res.certificate->uniqueness_domain.front();
      unique = detail.find("contained coordinates {" + ltos(b) + "}") != std::string::npos &&
               res.certificate->uniqueness_domain.back().find("contained coordinates {}") != std::string::npos;
    } else if (!res.obstructions.empty()) {
      detail = res.obstructions.front();
    }
    add(r, "y - " + ltos(b) + "x certifies R_" + ltos(b) + " uniquely in its fiber", unique, detail);

    const Point sb = at("[inf]").child(Step(Rational(b)));
    const auto res_s = irredundance_certificate(u, sb, {parse_poly("x - " + ltos(b) + "*y^2")});
    add(r, "x - " + ltos(b) + "y^2 certifies S_" + ltos(b), res_s.certificate.has_value(),
        res_s.certificate ? res_s.certificate->uniqueness_domain.back() : "");
  }
  const Point gamma = at("[inf, inf]");
  const Poly cusp = parse_poly("x^2 - y^3");
  const auto res = irredundance_certificate(u, gamma, {cusp});
  add(r, "x^2 - y^3 certifies [inf, inf]", res.certificate.has_value());
  const std::string s1 = strict_transform(cusp, at("[inf]")).to_string(at("[inf]").names());
  const std::string s2 = strict_transform(cusp, gamma).to_string(gamma.names());
  add(r, "strict transform at [inf] prints x1^2 - y", s1 == "x1^2 - y", s1);
  add(r, "strict transform at [inf, inf] prints x1 - y1", s2 == "x1 - y1", s2);
  return r;
}

DemoReport thm_6_8() {
  DemoReport r{"thm-6-8", {}};
  const auto v = ValuationDescriptor::eventually_periodic({}, {Step(Rational(0))});
  const FamilySet u{Family::siblings(v, 1)};
  const auto limits = patch_limit_points(u);
  add(r, "V is the unique patch limit point", limits == std::vector<ValuationDescriptor>{v},
      limits.empty() ? "none" : limits.front().to_string());
  const auto cert = is_noetherian(u);
  add(r, "the family is not Noetherian", !cert.verdict, cert.reason);
  bool infinite = false;
  try {
    irreducible_components(zariski_closure(u));
  } catch (const InfiniteComponents&) {
    infinite = true;
  }
  add(r, "the closure has infinitely many irreducible components", infinite);
  add(r, "the siblings are pairwise incomparable", pairwise_incomparable(u));

  // C_n is the intersection of beta_1 .. beta_n and alpha_{n+1}, alpha_i having parameters (x, y/x^i).
  const RatFunc inside = parse_expression("y/x^2"), deep = parse_expression("y/x^3"), outside = parse_expression("x^2/y");
  bool inside_ok = true, deep_ok = true, outside_ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Point> pts;
    for (std::size_t i = 1; i <= n; ++i) pts.push_back(u.front().sibling(i));
    pts.push_back(v.point_at(n + 1));
    const auto all_in = [&](const RatFunc& f) { return std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return in_point(f, p); }); };
    inside_ok = inside_ok && all_in(inside);
    deep_ok = deep_ok && !all_in(deep) && !in_point(deep, pts.front()) && in_point(deep, pts.back()) == (n >= 2);
    outside_ok = outside_ok && !all_in(outside);
  }
  add(r, "y/x^2 lies in every C_n, n <= 8", inside_ok);
  add(r, "y/x^3 fails in every C_n at beta_1", deep_ok);
  add(r, "x^2/y lies in no C_n", outside_ok);
  const auto ans = in_family(inside, u);
  add(r, "y/x^2 lies in C", ans.verdict == Verdict::yes && ans.stabilized);
  return r;
}

DemoReport example_6_11() {
  DemoReport r{"example-6-11", {}};
  bool powers = true, excluded = true;
  std::string detail;
  for (long n = 1; n <= 10; ++n) {
    // generators of R_{n+1}: x, y, y^2/x, ..., y^(n+1)/x^n
    std::vector<ExponentVector> gens{{1, 0}, {0, 1}};
    for (long k = 1; k <= n; ++k) gens.push_back({-k, k + 1});
    if (!semigroup_member({-n, n + 1}, gens)) {
      powers = false;
      detail = "y(y/x)^" + ltos(n) + " missing";
    }
    if (semigroup_member({-1, 1}, gens)) {
      excluded = false;
      detail = "y/x found at n = " + ltos(n);
    }
  }
  add(r, "y(y/x)^n lies in R_{n+1} for n <= 10", powers, detail);
  add(r, "y/x lies in no R_n for n <= 11", excluded, detail);
  add(r, "y^3/x^2 = y(y/x)^2 lies in R_3", semigroup_member({-2, 3}, {{1, 0}, {0, 1}, {-1, 2}, {-2, 3}}));
  add(r, "every R_n is dominated by [0]", in_point(parse_expression("y^5/x^4"), at("[0]")) && !in_point(parse_expression("x/y"), at("[0]")));
  return r;
}

Family beta_family(bool with_prime) {
  return Family::fiber(Point(), with_prime ? std::vector<Step>{} : std::vector<Step>{Step(Rational(0))}, {Step::infinity()})
      .with_a_parameter();
}

// beta_b in path form
Point beta_point(const Rational& b) { return Point::from_path({fiber_coordinate(Step(b)), Step::infinity()}); }

DemoReport thm_6_15() {
  DemoReport r{"thm-6-15", {}};
  const FamilySet b_set{beta_family(false)};
  for (const char* g : {"y^2/(x + a*y)", "x^2/y", "x/y", "x", "y"}) {
    const auto ans = in_family(parse_expression(g), b_set);
    add(r, std::string(g) + " lies in B", ans.verdict == Verdict::yes, to_string(ans.verdict));
  }
  const auto bad = in_family(parse_expression("y/x"), b_set);
  add(r, "y/x does not lie in B", bad.verdict == Verdict::no && bad.witness.has_value(),
      bad.witness ? "witness " + bad.witness->to_string() : "");

  const ParametricPosition pp = position_parametric(fiber_chart(b_set.front()), parse_expression("(x + a*y)/y"));
  bool only_at_a = true;
  std::vector<const ParametricCase*> trail;
  for_each_leaf(
      pp,
      [&](const ParametricPosition& node, const std::vector<const ParametricCase*>& conds) {
        if (node.degenerate || node.generic == Position::unit) return;
        // every non-unit leaf must sit on b = a, or on the excluded beta'
        bool explained = false;
        for (const auto* c : conds) {
          const RatFunc target = c->slot == kVarT ? parse_expression("-1/a") : parse_expression("-1/t");
          if (c->value == target || (c->slot == kVarT && c->value == RatFunc(0))) explained = true;
        }
        only_at_a = only_at_a && explained;
      },
      trail);
  add(r, "(x + a y)/y is a unit at beta_b for generic b", pp.generic == Position::unit, to_string(pp.generic));
  add(r, "the unit fails only at b = a", only_at_a);
  bool sampled = true;
  for (long a : {1L, -2L, 3L, 7L}) {
    const RatFunc f = parse_expression("(x + " + ltos(a) + "*y)/y");
    sampled = sampled && position(beta_point(Rational(a)), f) == Position::zero;
    for (const Rational& b : {Rational(1), Rational(-2), Rational(3), Rational(7), ratio(1, 2), ratio(-5, 3)})
      if (b != a) sampled = sampled && position(beta_point(b), f) == Position::unit;
  }
  add(r, "sampled a, b: zero at beta_a, unit at beta_b for b != a", sampled);
  return r;
}

DemoReport thm_6_17() {
  DemoReport r{"thm-6-17", {}};
  const FamilySet c_set{beta_family(true)};
  for (const char* g : {"y^2/(x + a*y)", "x^2/y", "x", "y"}) {
    const auto ans = in_family(parse_expression(g), c_set);
    add(r, std::string(g) + " lies in C", ans.verdict == Verdict::yes, to_string(ans.verdict));
  }
  const auto xy = in_family(parse_expression("x/y"), c_set);
  add(r, "x/y does not lie in C", xy.verdict == Verdict::no, xy.witness ? "witness " + xy.witness->to_string() : "");

  const Point beta_prime = at("[0, inf]"), beta_zero = at("[inf, inf]");
  std::size_t sampled = 0, failures = 0;
  std::string first_failure;
  for (unsigned a = 1; a <= 20; ++a) {
    for (unsigned b = 1; b <= 20; ++b) {
      if (2 * a <= b || 2 * b <= a) continue;  // v does not dominate C
      ++sampled;
      const auto v = ValuationDescriptor::monomial(a, b);
      const Point& target = a > b ? beta_zero : beta_prime;
      if (!val_contains_point(v, target)) {
        ++failures;
        if (first_failure.empty()) first_failure = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
      }
    }
  }
  add(r, "monomial valuations dominating C contain the case's ring", failures == 0,
      std::to_string(sampled) + " sampled" + (first_failure.empty() ? "" : ", first failure " + first_failure));
  add(r, "ord_D contains beta'", val_contains_point(ValuationDescriptor::second_kind(Point()), beta_prime));
  bool branches = true;
  std::string detail;
  for (long a : {1L, -1L, 2L, 3L, -5L}) {
    const Point target = beta_point(Rational(a));
    for (const char* shape : {"(x + A*y)^2 - y^3", "(x + A*y)^3 - y^4"}) {
      std::string text = shape;
      text.replace(text.find('A'), 1, "(" + ltos(a) + ")");
      const auto v = ValuationDescriptor::curve_branch(parse_poly(text));
      if (!val_contains_point(v, target)) {
        branches = false;
        detail = text;
      }
    }
  }
  add(r, "a-branch valuations with v(x + a y) > v(x) = v(y) contain beta_a", branches, detail);
  return r;
}

const std::map<std::string, std::function<DemoReport()>>& registry() {
  static const std::map<std::string, std::function<DemoReport()>> demos{
      {"example-3-6", example_3_6}, {"example-6-3", example_6_3}, {"example-6-5", example_6_5}, {"example-6-11", example_6_11},
      {"thm-6-8", thm_6_8},         {"thm-6-15", thm_6_15},       {"thm-6-17", thm_6_17},
  };
  return demos;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

DemoReport run_demo(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown demo '" + name + "'");
  return it->second();
}

}  // namespace qtree
