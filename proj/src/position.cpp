#include "qtree/position.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qtree {

namespace {

Position tag_from(bool num_vanishes, bool den_vanishes) {
  if (num_vanishes) return den_vanishes ? Position::undetermined : Position::zero;
  return den_vanishes ? Position::pole : Position::unit;
}

const VarNames& parameter_names() {
  static const VarNames names{"p", "q", "a", "t"};
  return names;
}

// Polynomial in (a, t) whose roots are exactly where every (p, q)-coefficient
// of `f` vanishes.
Poly content_pq(const Poly& f) {
  Poly g;
  for (const auto& cp : f.coefficients_in(kVarP)) {
    for (const auto& c : cp.coefficients_in(kVarQ)) {
      if (c.is_zero()) continue;
      g = g.is_zero() ? monic(c) : gcd(g, c);
      if (g.is_constant()) return 1;
    }
  }
  return g.is_zero() ? Poly(1) : g;
}

// Parameter values where the specializations of F and G may acquire a common
// factor through the origin (over-approximated; extra cases are harmless).
std::vector<Poly> coprimality_conditions(const Poly& num, const Poly& den) {
  std::vector<Poly> out;
  for (int slot : {kVarQ, kVarP}) {
    if (!num.depends_on(slot) && !den.depends_on(slot)) continue;
    out.push_back(content_pq(resultant(num, den, slot)));
    out.push_back(content_pq(num.coefficients_in(slot).back()));
    out.push_back(content_pq(den.coefficients_in(slot).back()));
  }
  return out;
}

class Analyzer {
 public:
  ParametricPosition run(const Chart& chart, const RatFunc& f) {
    ParametricPosition out;
    const RatFunc e = chart.express(f);
    if (e.is_zero()) {
      out.degenerate = "vanishes";
      return out;
    }
    const Poly num0 = value_at_origin(e.num());
    const Poly den0 = value_at_origin(e.den());
    out.generic = tag_from(num0.is_zero(), den0.is_zero());
    std::vector<Poly> conditions;
    for (const Poly* c : {&num0, &den0})
      if (!c->is_zero() && !c->is_constant()) conditions.push_back(*c);
    for (const Poly* c : {&e.num(), &e.den()}) conditions.push_back(content_pq(*c));
    if (num0.is_zero() && den0.is_zero()) {
      for (auto& c : coprimality_conditions(e.num(), e.den())) conditions.push_back(std::move(c));
    }
    std::set<std::string> seen;
    for (const auto& c : conditions) {
      if (c.is_constant()) continue;
      split(chart, f, squarefree_part(c), out, seen);
    }
    return out;
  }

 private:
  void add_case(const Chart& chart, const RatFunc& f, int slot, const RatFunc& value, ParametricPosition& out,
                std::set<std::string>& seen) {
    const std::string condition = parameter_names()[slot] + " = " + value.to_string(parameter_names());
    if (!seen.insert(condition).second) return;
    ParametricCase pc{condition, slot, value, {}};
    std::array<std::optional<RatFunc>, kNumVars> images;
    images[slot] = value;
    try {
      const RatFunc g = f.compose(images);
      pc.result = run(chart.substitute(slot, value), g);
    } catch (const std::domain_error&) {
      pc.result.degenerate = "undefined";
    }
    out.cases.push_back(std::move(pc));
  }

  void split(const Chart& chart, const RatFunc& f, const Poly& c, ParametricPosition& out,
             std::set<std::string>& seen) {
    const bool has_a = c.depends_on(kVarA);
    const bool has_t = c.depends_on(kVarT);
    if (!has_a && !has_t) return;
    if (has_a != has_t) {
      const int slot = has_a ? kVarA : kVarT;
      for (const auto& r : rational_roots(c, slot)) add_case(chart, f, slot, RatFunc(r), out, seen);
      return;
    }
    const Poly t_part = content_in(c, kVarA);
    for (const auto& r : rational_roots(t_part, kVarT)) add_case(chart, f, kVarT, RatFunc(r), out, seen);
    const Poly rest = *divide_exact(c, t_part);
    const Poly a_part = content_in(rest, kVarT);
    for (const auto& r : rational_roots(a_part, kVarA)) add_case(chart, f, kVarA, RatFunc(r), out, seen);
    const Poly core = *divide_exact(rest, a_part);
    for (int slot : {kVarA, kVarT}) {
      if (core.degree(slot) != 1) continue;
      const auto coeffs = core.coefficients_in(slot);
      add_case(chart, f, slot, RatFunc(-coeffs[0], coeffs[1]), out, seen);
      return;
    }
    out.unresolved.push_back(core.to_string(parameter_names()) + " = 0");
  }
};

void add_line_roots(const Poly& form, std::set<Step>& steps) {
  const Poly on_line = form.evaluate(kVarP, 1);
  if (on_line.is_constant()) return;
  for (const auto& r : rational_roots(on_line, kVarQ)) steps.insert(Step(r));
}

}  // namespace

std::string to_string(Position position) {
  switch (position) {
    case Position::zero: return "Zero";
    case Position::pole: return "Pole";
    case Position::unit: return "Unit";
    case Position::undetermined: return "Undetermined";
  }
  return "?";
}

Position classify(const RatFunc& expressed) {
  if (expressed.is_zero()) throw std::domain_error("position of zero undefined");
  return tag_from(expressed.num().constant_coeff() == 0, expressed.den().constant_coeff() == 0);
}

Position position(const Point& point, const RatFunc& f) {
  if (f.is_zero()) throw std::domain_error("position of zero undefined");
  if (f.depends_on(kVarA) || f.depends_on(kVarT))
    throw std::invalid_argument("position: substitute a value for the parameter first");
  return classify(express(point, f));
}

ParametricPosition position_parametric(const Chart& chart, const RatFunc& f) {
  if (f.is_zero()) throw std::domain_error("position of zero undefined");
  return Analyzer{}.run(chart, f);
}

ParametricPosition position_parametric(const Point& point, const RatFunc& f) {
  return position_parametric(point.chart(), f);
}

Resolution resolve(const RatFunc& f, int depth_cap) {
  Resolution out;
  const Point root;
  const Position at_root = position(root, f);
  if (at_root == Position::zero) out.zeros.push_back(root);
  if (at_root == Position::pole) out.poles.push_back(root);
  if (at_root != Position::undetermined) return out;

  std::vector<Point> frontier{root};
  while (!frontier.empty()) {
    if (static_cast<int>(frontier.front().level()) >= depth_cap) {
      std::string msg = "resolve: depth cap " + std::to_string(depth_cap) + " reached with undetermined points";
      for (const auto& p : frontier) msg += " " + p.to_string();
      throw ComputationError(msg);
    }
    std::vector<Point> next;
    for (const auto& node : frontier) {
      const RatFunc e = express(node, f);
      const Poly num_low = lowest_form(e.num());
      const Poly den_low = lowest_form(e.den());
      std::set<Step> special{Step::infinity()};
      add_line_roots(num_low, special);
      add_line_roots(den_low, special);
      // A common factor of both forms on the exceptional line without rational
      // roots marks undetermined points outside the representable tree.
      const Poly common = gcd(num_low.evaluate(kVarP, 1), den_low.evaluate(kVarP, 1));
      if (!common.is_constant() && rational_roots(common, kVarQ).size() < squarefree_part(common).degree(kVarQ)) {
        out.diagnostics.push_back("irrational undetermined directions below " + node.to_string() + ": " +
                                  common.to_string(node.names()) + " at " + node.names()[kVarP] + " = 1");
      }
      for (const auto& s : special) {
        Point child = node.child(s);
        switch (position(child, f)) {
          case Position::zero: out.zeros.push_back(child); break;
          case Position::pole: out.poles.push_back(child); break;
          case Position::undetermined: next.push_back(std::move(child)); break;
          case Position::unit: break;
        }
      }
      const auto m = order_at_origin(e.num());
      const auto n = order_at_origin(e.den());
      if (m != n) {
        out.generic.push_back({node, std::vector<Step>(special.begin(), special.end()),
                               m > n ? Position::zero : Position::pole});
      }
      out.depth_used = std::max(out.depth_used, static_cast<int>(node.level()) + 1);
    }
    frontier = std::move(next);
  }
  std::sort(out.zeros.begin(), out.zeros.end());
  std::sort(out.poles.begin(), out.poles.end());
  return out;
}

}  // namespace qtree
