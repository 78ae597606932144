#include "qtree/ring_oracle.hpp"

#include "qtree/proximity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qtree {

namespace {

bool is_member_position(Position p) { return p == Position::zero || p == Position::unit; }

bool is_constant_value(const RatFunc& v) { return !v.depends_on(kVarA) && !v.depends_on(kVarT); }

Rational constant_of(const RatFunc& v) { return v.num().constant_coeff() / v.den().constant_coeff(); }

// Verdict of a parametric analysis, with the fiber coordinate values in
// `excluded` ignored.
struct ParametricVerdict {
  bool generic_fails = false;
  std::map<Rational, std::string> a_exceptions;  // value -> "no" / "undefined"
  std::vector<Rational> t_hints;                  // t values seen on failing trails (at no particular a)
  std::vector<std::string> unresolved;
};

ParametricVerdict judge(const ParametricPosition& pp, const std::vector<Step>& excluded) {
  ParametricVerdict out;
  std::vector<const ParametricCase*> trail;
  for_each_leaf(
      pp,
      [&](const ParametricPosition& node, const std::vector<const ParametricCase*>& conds) {
        for (const auto& u : node.unresolved) out.unresolved.push_back(u);
        std::string failure;
        if (node.degenerate) {
          if (*node.degenerate == "undefined") failure = "undefined";
        } else if (!is_member_position(node.generic)) {
          failure = "no";
        }
        if (failure.empty()) return;
        std::optional<Rational> a_value;
        for (const auto* c : conds) {
          if (!is_constant_value(c->value)) continue;
          const Rational v = constant_of(c->value);
          if (c->slot == kVarT) {
            if (std::find(excluded.begin(), excluded.end(), Step(v)) != excluded.end()) return;
            out.t_hints.push_back(v);
          } else if (!a_value) {
            a_value = v;
          }
        }
        if (a_value) {
          out.a_exceptions.emplace(*a_value, failure);
        } else {
          out.generic_fails = true;
        }
      },
      trail);
  return out;
}

const std::vector<Rational>& sample_values() {
  static const std::vector<Rational> values = [] {
    std::vector<Rational> v;
    for (long n : {1L, 2L, -1L, 3L, -2L, 5L, -3L, 7L, 11L, -5L}) v.emplace_back(n);
    for (auto [n, d] : std::vector<std::pair<long, long>>{{1, 2}, {-1, 3}, {2, 3}, {-3, 2}}) {
      Rational r(n, d);
      r.canonicalize();
      v.push_back(r);
    }
    return v;
  }();
  return values;
}

// Concrete failure of f (with a substituted when given) at a point.
bool fails_at(const RatFunc& f, const std::optional<Rational>& a, const Point& pt) {
  RatFunc g = f;
  if (a) {
    try {
      g = f.evaluate(kVarA, *a);
    } catch (const std::domain_error&) {
      return false;
    }
  }
  if (g.is_zero()) return false;
  return !is_member_position(position(pt, g));
}

struct Witness {
  Point point;
  std::optional<Rational> a;
};

// Grid search over the fiber coordinate (and a, unless pinned).
std::optional<Witness> find_fiber_witness(const RatFunc& f, const Family& fiber, const std::vector<Rational>& t_hints,
                                          std::optional<Rational> pinned_a, const std::map<Rational, std::string>& skip_a) {
  std::vector<std::optional<Rational>> as;
  if (pinned_a) {
    as.push_back(pinned_a);
  } else if (f.depends_on(kVarA)) {
    for (const auto& v : sample_values())
      if (!skip_a.count(v)) as.emplace_back(v);
    as.emplace_back(Rational(0));
  } else {
    as.emplace_back(std::nullopt);
  }
  std::vector<Step> ts;
  for (const auto& v : t_hints) ts.emplace_back(v);
  ts.emplace_back(Rational(0));
  for (const auto& v : sample_values()) ts.emplace_back(v);
  ts.push_back(Step::infinity());
  for (const auto& a : as) {
    std::vector<Step> local = ts;
    if (a) {
      // t-values on the relation curves pass through -1/a and a
      if (*a != 0) local.insert(local.begin(), Step(Rational(-1 / *a)));
      local.insert(local.begin(), Step(*a));
    }
    for (const auto& t : local) {
      if (fiber.is_excluded(t)) continue;
      const Point pt = fiber.fiber_member(t);
      if (fails_at(f, a, pt)) return Witness{pt, a};
    }
  }
  return std::nullopt;
}

struct PartAnswer {
  bool fails = false;
  std::optional<Witness> witness;
  std::map<Rational, std::string> exceptions;
  std::map<Rational, std::optional<Point>> exception_witness;
  bool stabilized = true;
  std::size_t depth = 0;
  std::vector<std::string> notes;
};

void record_exceptions(PartAnswer& out, const ParametricVerdict& v, const std::function<std::optional<Point>(const Rational&)>& find) {
  for (const auto& [a, verdict] : v.a_exceptions) {
    out.exceptions.emplace(a, verdict);
    out.exception_witness.emplace(a, verdict == "no" ? find(a) : std::nullopt);
  }
}

PartAnswer answer_at_point(const RatFunc& f, const Point& pt) {
  PartAnswer out;
  if (!f.depends_on(kVarA)) {
    out.fails = !is_member_position(position(pt, f));
    if (out.fails) out.witness = Witness{pt, std::nullopt};
    return out;
  }
  const ParametricVerdict v = judge(position_parametric(pt, f), {});
  for (const auto& u : v.unresolved) out.notes.push_back("unresolved condition at " + pt.to_string() + ": " + u);
  if (v.generic_fails) {
    out.fails = true;
    for (const auto& a : sample_values()) {
      if (v.a_exceptions.count(a)) continue;
      if (fails_at(f, a, pt)) {
        out.witness = Witness{pt, a};
        break;
      }
    }
    return out;
  }
  record_exceptions(out, v, [&](const Rational& a) -> std::optional<Point> {
    if (fails_at(f, a, pt)) return pt;
    return std::nullopt;
  });
  return out;
}

PartAnswer answer_fiber(const RatFunc& f, const Family& fiber) {
  PartAnswer out;
  const ParametricVerdict v = judge(position_parametric(fiber_chart(fiber), f), fiber.excluded());
  for (const auto& u : v.unresolved) out.notes.push_back("unresolved condition on " + fiber.to_string() + ": " + u);
  if (v.generic_fails) {
    out.fails = true;
    out.witness = find_fiber_witness(f, fiber, v.t_hints, std::nullopt, v.a_exceptions);
    if (!out.witness) out.notes.push_back("no rational witness found on the sample grid for " + fiber.to_string());
    return out;
  }
  record_exceptions(out, v, [&](const Rational& a) -> std::optional<Point> {
    if (auto w = find_fiber_witness(f, fiber, v.t_hints, a, {})) return w->point;
    return std::nullopt;
  });
  // The symbolic chart covers finite coordinates only.
  if (!fiber.is_excluded(Step::infinity())) {
    PartAnswer inf = answer_at_point(f, fiber.fiber_member(Step::infinity()));
    if (inf.fails) return inf;
    for (auto& [a, verdict] : inf.exceptions) {
      out.exceptions.emplace(a, verdict);
      out.exception_witness.emplace(a, inf.exception_witness[a]);
    }
    for (auto& n : inf.notes) out.notes.push_back(std::move(n));
  }
  return out;
}

// Chains and siblings: walk the members, stopping early once the expressed
// denominator has been the same unit for three members in a row.
void merge_exceptions(PartAnswer& out, PartAnswer& here) {
  for (auto& [a, verdict] : here.exceptions) {
    out.exceptions.emplace(a, verdict);
    out.exception_witness.emplace(a, here.exception_witness[a]);
  }
}

// Members beta_1, beta_2, ... each dominating the anchor alpha_i of the same
// index, the anchors forming an ascending chain. Once f lies in some alpha_j
// it lies in every later anchor and so in beta_i for i >= j.
PartAnswer answer_sequence(const RatFunc& f, const std::function<Point(std::size_t)>& member,
                           const std::function<Point(std::size_t)>& anchor, std::size_t depth) {
  PartAnswer out;
  for (std::size_t i = 1; i < depth; ++i) {
    PartAnswer at_anchor = answer_at_point(f, anchor(i));
    if (!at_anchor.fails && at_anchor.exceptions.empty()) {
      out.depth = i;
      return out;
    }
    PartAnswer here = answer_at_point(f, member(i));
    if (here.fails) return here;
    merge_exceptions(out, here);
  }
  out.stabilized = false;
  out.depth = depth;
  return out;
}

std::vector<ChartStep> chart_steps_of(const Family& fiber) {
  std::vector<ChartStep> steps;
  for (const auto& s : fiber.point().path()) steps.push_back(ChartStep::from(s));
  steps.push_back(ChartStep::symbolic(Poly::variable(kVarT)));
  for (const auto& s : fiber.tail()) steps.push_back(ChartStep::from(s));
  return steps;
}

std::string steps_text(const std::vector<Step>& steps) {
  std::string out;
  for (const auto& s : steps) out += (out.empty() ? "" : ", ") + s.to_string();
  return "{" + out + "}";
}

}  // namespace

bool in_point(const RatFunc& f, const Point& alpha) {
  if (f.depends_on(kVarA) || f.depends_on(kVarT)) throw std::invalid_argument("in_point: substitute the parameter first");
  if (f.is_zero()) return true;
  return is_member_position(position(alpha, f));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::yes_except: return "yes_except";
  }
  return "?";
}

Chart fiber_chart(const Family& fiber) {
  Chart c = fiber.point().chart().child(ChartStep::symbolic(Poly::variable(kVarT)));
  for (const auto& s : fiber.tail()) c = c.child(ChartStep::from(s));
  return c;
}

MembershipAnswer in_family(const RatFunc& f, const FamilySet& set, std::size_t chain_depth) {
  if (f.is_zero()) return {};
  MembershipAnswer answer;
  std::map<Rational, ParameterException> exceptions;
  for (const auto& part : set) {
    PartAnswer pa;
    switch (part.kind()) {
      case Family::Kind::singleton: pa = answer_at_point(f, part.point()); break;
      case Family::Kind::fiber: pa = answer_fiber(f, part); break;
      case Family::Kind::chain:
        // every later member dominates the first one
        pa = answer_at_point(f, part.valuation().point_at(part.from_level()));
        break;
      case Family::Kind::siblings:
        pa = answer_sequence(
            f, [&](std::size_t i) { return part.sibling(i); }, [&](std::size_t i) { return part.valuation().point_at(i); },
            chain_depth);
        break;
    }
    for (auto& n : pa.notes) answer.notes.push_back(std::move(n));
    if (pa.fails) {
      answer.verdict = Verdict::no;
      if (pa.witness) {
        answer.witness = pa.witness->point;
        answer.witness_a = pa.witness->a;
      }
      answer.exceptions.clear();
      return answer;
    }
    if (!pa.stabilized) {
      answer.stabilized = false;
      answer.verified_depth = pa.depth;
      answer.notes.push_back(part.to_string() + ": verified to depth " + std::to_string(pa.depth) + " without stabilizing");
    }
    for (const auto& [a, verdict] : pa.exceptions) {
      auto [it, inserted] = exceptions.emplace(a, ParameterException{a, verdict, pa.exception_witness[a]});
      if (!inserted && !it->second.witness) it->second.witness = pa.exception_witness[a];
    }
  }
  for (auto& [a, e] : exceptions) answer.exceptions.push_back(std::move(e));
  answer.verdict = answer.exceptions.empty() ? Verdict::yes : Verdict::yes_except;
  return answer;
}

FiberContainment fiber_containment(const Poly& h, const Family& fiber) {
  FiberContainment out;
  const auto steps = chart_steps_of(fiber);
  const std::size_t symbolic_at = fiber.point().level();
  std::set<Step> special;
  Poly cur = h;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Poly next = apply_step(cur, steps[k]);
    std::uint32_t m = UINT32_MAX;
    for (const auto& t : next.terms()) m = std::min(m, t.exps[kVarP]);
    if (next.is_zero()) m = 0;
    if (k >= symbolic_at && !next.is_zero()) {
      // where the lowest p-coefficient dies, more exceptional factors come off
      const Poly lowest = next.coefficients_in(kVarP)[m];
      const Poly cont = content_in(lowest, kVarQ);
      if (cont.depends_on(kVarT)) {
        const auto roots = rational_roots(cont, kVarT);
        for (const auto& r : roots) special.insert(Step(r));
        if (roots.size() < cont.degree(kVarT)) out.notes.push_back("irrational special coordinates skipped (not tree points)");
      }
    }
    std::vector<Poly::Term> terms;
    for (const auto& t : next.terms()) {
      Poly::Term u = t;
      u.exps[kVarP] -= m;
      terms.push_back(std::move(u));
    }
    cur = Poly::from_terms(std::move(terms));
  }
  out.condition = monic(value_at_origin(cur));
  std::set<Step> to_check = special;
  if (out.condition.is_zero()) {
    out.all_generic_contained = true;
  } else if (out.condition.depends_on(kVarT)) {
    const auto roots = rational_roots(out.condition, kVarT);
    for (const auto& r : roots) to_check.insert(Step(r));
    if (roots.size() < out.condition.degree(kVarT)) out.notes.push_back("condition has irrational roots (not tree points)");
  }
  to_check.insert(Step::infinity());
  for (const auto& t : to_check) {
    if (fiber.is_excluded(t)) continue;
    if (first_kind_contains(h, fiber.fiber_member(t))) out.contained.push_back(t);
  }
  out.special.assign(special.begin(), special.end());
  return out;
}

IrredundanceResult irredundance_certificate(const FamilySet& set, const Point& delta, const std::vector<Poly>& candidates,
                                            std::size_t chain_depth) {
  if (!member(set, delta)) throw std::invalid_argument("irredundance_certificate: " + delta.to_string() + " is not a member");
  IrredundanceResult result;
  for (const auto& h : candidates) {
    const std::string name = h.to_string();
    try {
      if (!first_kind_contains(h, delta)) {
        result.obstructions.push_back(name + ": strict transform misses " + delta.to_string());
        continue;
      }
    } catch (const std::invalid_argument& e) {
      result.obstructions.push_back(name + ": " + e.what());
      continue;
    }
    std::vector<std::string> lines;
    std::string obstruction;
    for (const auto& part : set) {
      switch (part.kind()) {
        case Family::Kind::singleton:
          if (!(part.point() == delta) && first_kind_contains(h, part.point())) obstruction = "also contains " + part.point().to_string();
          lines.push_back(part.to_string() + ": checked directly");
          break;
        case Family::Kind::fiber: {
          const FiberContainment fc = fiber_containment(h, part);
          if (fc.all_generic_contained) {
            obstruction = "contains every generic member of " + part.to_string();
            break;
          }
          for (const auto& t : fc.contained)
            if (!(part.fiber_member(t) == delta)) obstruction = "also contains " + part.fiber_member(t).to_string();
          std::string line = part.to_string() + ": condition " + fc.condition.to_string() + " = 0, contained coordinates " + steps_text(fc.contained);
          if (!fc.special.empty()) line += ", special coordinates checked directly " + steps_text(fc.special);
          for (const auto& n : fc.notes) line += "; " + n;
          lines.push_back(line);
          break;
        }
        case Family::Kind::chain:
        case Family::Kind::siblings: {
          std::vector<Point> members;
          if (part.kind() == Family::Kind::chain) {
            for (std::size_t l = part.from_level(); l <= chain_depth; ++l) members.push_back(part.valuation().point_at(l));
          } else {
            for (std::size_t i = 1; i < chain_depth; ++i) members.push_back(part.sibling(i));
          }
          for (const auto& m : members)
            if (!(m == delta) && first_kind_contains(h, m)) obstruction = "also contains " + m.to_string();
          lines.push_back(part.to_string() + ": checked to level " + std::to_string(chain_depth));
          break;
        }
      }
      if (!obstruction.empty()) break;
    }
    if (!obstruction.empty()) {
      result.obstructions.push_back(name + ": " + obstruction);
      continue;
    }
    result.certificate = IrredundanceCertificate{delta, ValuationDescriptor::first_kind(h), std::move(lines)};
    return result;
  }
  return result;
}

bool semigroup_member(const ExponentVector& target, const std::vector<ExponentVector>& generators) {
  if (target == ExponentVector{0, 0}) return true;
  std::vector<ExponentVector> gens;
  for (const auto& g : generators)
    if (g != ExponentVector{0, 0}) gens.push_back(g);
  if (gens.empty()) return false;
  // A functional positive on every generator bounds the number of summands.
  std::optional<std::pair<long, long>> phi;
  for (long s = 1; s <= 64 && !phi; ++s) {
    for (long w1 = -s; w1 <= s && !phi; ++w1) {
      for (long w2 : {s - std::abs(w1), std::abs(w1) - s}) {
        if (std::all_of(gens.begin(), gens.end(), [&](const ExponentVector& g) { return w1 * g.first + w2 * g.second > 0; })) {
          phi = std::pair{w1, w2};
          break;
        }
      }
    }
  }
  if (!phi) throw std::invalid_argument("semigroup_member: generators do not span a pointed cone");
  auto value = [&](const ExponentVector& v) { return phi->first * v.first + phi->second * v.second; };
  std::set<ExponentVector> dead;
  std::function<bool(const ExponentVector&)> reach = [&](const ExponentVector& v) -> bool {
    if (v == ExponentVector{0, 0}) return true;
    if (value(v) <= 0 || dead.count(v)) return false;
    for (const auto& g : gens)
      if (reach({v.first - g.first, v.second - g.second})) return true;
    dead.insert(v);
    return false;
  };
  return reach(target);
}

bool DemoReport::passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const SubClaim& c) { return c.passed; });
}

}  // namespace qtree
