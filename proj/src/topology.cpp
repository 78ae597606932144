#include "qtree/topology.hpp"

#include "qtree/proximity.hpp"

#include <algorithm>

namespace qtree {

namespace {

template <class T>
void sort_unique(std::vector<T>& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

// V's sequence is alpha <s> inf 0 0 ..., so every point on it is proximate to alpha.
bool is_ray_of(const ValuationDescriptor& v, const Point& alpha) {
  if (v.kind() != ValuationDescriptor::Kind::eventually_periodic) return false;
  const Path& pre = v.prefix();
  if (v.period() != Path{Step(Rational(0))} || pre.size() != alpha.level() + 2) return false;
  return pre.back().is_infinite() && is_prefix(alpha.path(), pre);
}

bool on_path(const ValuationDescriptor& v, const Path& beta) { return v.path_prefix(beta.size()) == beta; }

bool has_divisor(const ClosedSetRepr& c, const Point& alpha) {
  return std::any_of(c.divisor_downsets.begin(), c.divisor_downsets.end(),
                     [&](const ValuationDescriptor& d) { return d.center() == alpha; });
}

// Every member of `inner` lies below some member of `outer`.
bool fiber_covered_by(const Family& inner, const Family& outer) {
  if (&inner == &outer || outer.kind() != Family::Kind::fiber) return false;
  if (!(outer.point() == inner.point()) || !is_prefix(inner.tail(), outer.tail())) return false;
  return std::all_of(outer.excluded().begin(), outer.excluded().end(), [&](const Step& s) { return inner.is_excluded(s); });
}

}  // namespace

std::string to_string(const Generator& g) {
  if (const auto* p = std::get_if<Point>(&g)) return p->to_string();
  return std::get<ValuationDescriptor>(g).to_string();
}

std::vector<ValuationDescriptor> patch_limit_points(const FamilySet& set) {
  std::vector<ValuationDescriptor> out;
  for (const auto& part : set) {
    switch (part.kind()) {
      case Family::Kind::fiber:
        // Prefixes of the base see a single child, so the base is the only candidate.
        if (!q1_downset_count(set, part.point())) out.push_back(ValuationDescriptor::second_kind(part.point()));
        break;
      case Family::Kind::chain:
      case Family::Kind::siblings: out.push_back(part.valuation()); break;
      case Family::Kind::singleton: break;
    }
  }
  sort_unique(out);
  return out;
}

ClosedSetRepr zariski_closure(const FamilySet& set) {
  ClosedSetRepr c;
  c.residual = set;
  for (auto& v : patch_limit_points(set)) {
    if (v.kind() == ValuationDescriptor::Kind::second_kind) {
      c.divisor_downsets.push_back(std::move(v));
    } else {
      c.minimal_downsets.push_back(std::move(v));
    }
  }
  return c;
}

bool closure_member(const ClosedSetRepr& c, const Point& beta) {
  if (downset_member(c.residual, beta)) return true;
  for (const auto& p : c.point_downsets)
    if (is_prefix(beta.path(), p.path())) return true;
  for (const auto& d : c.divisor_downsets)
    if (second_kind_contains(d.center(), beta)) return true;
  for (const auto& v : c.minimal_downsets)
    if (on_path(v, beta.path())) return true;
  return false;
}

std::vector<Generator> irreducible_components(const ClosedSetRepr& c) {
  std::vector<Point> points = c.point_downsets;
  std::vector<ValuationDescriptor> divisors = c.divisor_downsets;
  std::vector<ValuationDescriptor> minimals = c.minimal_downsets;

  for (const auto& part : c.residual) {
    switch (part.kind()) {
      case Family::Kind::singleton: points.push_back(part.point()); break;
      case Family::Kind::chain: minimals.push_back(part.valuation()); break;
      case Family::Kind::siblings: throw InfiniteComponents(part);
      case Family::Kind::fiber: {
        // Ray-tailed members sit inside the divisor's downset; anything else
        // is infinitely many maximal points unless a larger fiber covers it.
        if (part.has_ray_tail() && has_divisor(c, part.point())) break;
        const bool covered = std::any_of(c.residual.begin(), c.residual.end(),
                                         [&](const Family& other) { return fiber_covered_by(part, other); });
        if (!covered) throw InfiniteComponents(part);
        break;
      }
    }
  }
  sort_unique(points);
  sort_unique(divisors);
  sort_unique(minimals);

  std::vector<Generator> out;
  for (const auto& d : divisors) out.emplace_back(d);
  for (const auto& v : minimals) {
    const bool absorbed = std::any_of(divisors.begin(), divisors.end(), [&](const ValuationDescriptor& d) { return is_ray_of(v, d.center()); });
    if (!absorbed) out.emplace_back(v);
  }
  for (const auto& p : points) {
    bool absorbed = std::any_of(points.begin(), points.end(), [&](const Point& q) { return q.level() > p.level() && is_prefix(p.path(), q.path()); });
    absorbed = absorbed || std::any_of(divisors.begin(), divisors.end(), [&](const ValuationDescriptor& d) { return second_kind_contains(d.center(), p); });
    absorbed = absorbed || std::any_of(minimals.begin(), minimals.end(), [&](const ValuationDescriptor& v) { return on_path(v, p.path()); });
    if (!absorbed) out.emplace_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) { return to_string(a) < to_string(b); });
  return out;
}

std::optional<Generator> is_irreducible(const ClosedSetRepr& c) {
  try {
    auto comps = irreducible_components(c);
    if (comps.size() == 1) return comps.front();
  } catch (const InfiniteComponents&) {
  }
  return std::nullopt;
}

NoetherianCertificate is_noetherian(const FamilySet& set) {
  NoetherianCertificate cert;
  for (const auto& part : set) {
    switch (part.kind()) {
      case Family::Kind::singleton: cert.covering.push_back(ValuationDescriptor::second_kind(part.point())); break;
      case Family::Kind::chain: cert.covering.push_back(part.valuation()); break;
      case Family::Kind::fiber:
        if (part.has_ray_tail()) {
          cert.covering.push_back(ValuationDescriptor::second_kind(part.point()));
          break;
        }
        cert.witness = part;
        cert.reason = "fiber members with tail " + to_string(part.tail()) +
                      " are not proximate to the base, and no valuation contains infinitely many of them";
        cert.covering.clear();
        return cert;
      case Family::Kind::siblings:
        cert.witness = part;
        cert.reason = "each sibling is a separate maximal point";
        cert.covering.clear();
        return cert;
    }
  }
  sort_unique(cert.covering);
  cert.verdict = true;
  return cert;
}

}  // namespace qtree
