#include "qtree/family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qtree {

namespace {

// A fixed-length path pattern: each slot is a fixed step or a wildcard with
// finitely many exclusions.
struct Slot {
  std::optional<Step> fixed;
  const std::vector<Step>* excluded = nullptr;
};
using Pattern = std::vector<Slot>;

Pattern pattern_of(const Path& path) {
  Pattern out;
  for (const auto& s : path) out.push_back({s, nullptr});
  return out;
}

Pattern pattern_of(const Family& part) {
  if (part.kind() == Family::Kind::singleton) return pattern_of(part.point().path());
  Pattern out = pattern_of(part.point().path());
  out.push_back({std::nullopt, &part.excluded()});
  for (const auto& s : part.tail()) out.push_back({s, nullptr});
  return out;
}

bool excluded_in(const std::vector<Step>* excluded, const Step& s) {
  return excluded && std::find(excluded->begin(), excluded->end(), s) != excluded->end();
}

bool slots_compatible(const Slot& a, const Slot& b) {
  if (a.fixed && b.fixed) return *a.fixed == *b.fixed;
  if (a.fixed) return !excluded_in(b.excluded, *a.fixed);
  if (b.fixed) return !excluded_in(a.excluded, *b.fixed);
  return true;  // two cofinite sets always meet
}

// Some path of length `len` matches both patterns.
bool compatible(const Pattern& a, const Pattern& b, std::size_t len) {
  if (a.size() < len || b.size() < len) return false;
  for (std::size_t i = 0; i < len; ++i)
    if (!slots_compatible(a[i], b[i])) return false;
  return true;
}

bool pattern_is_finite(const Family& part) {
  return part.kind() == Family::Kind::singleton || part.kind() == Family::Kind::fiber;
}

std::size_t common_prefix(const ValuationDescriptor& v, const ValuationDescriptor& w) {
  std::size_t d = 0;
  while (d < kComparisonDepth && v.step_at(d) == w.step_at(d)) ++d;
  return d;
}

bool on_path(const ValuationDescriptor& v, const Path& beta) { return v.path_prefix(beta.size()) == beta; }

// Some member of p is a proper prefix of some member of q.
bool proper_prefix_between(const Family& p, const Family& q) {
  using K = Family::Kind;
  if (pattern_is_finite(p)) {
    const Pattern pp = pattern_of(p);
    const std::size_t len = pp.size();
    if (pattern_is_finite(q)) {
      const Pattern qp = pattern_of(q);
      return qp.size() > len && compatible(pp, qp, len);
    }
    return compatible(pp, pattern_of(q.valuation().path_prefix(len)), len);
  }
  if (p.kind() == K::chain) {
    const auto& v = p.valuation();
    if (pattern_is_finite(q)) {
      const Pattern qp = pattern_of(q);
      const std::size_t f = p.from_level();
      return f < qp.size() && compatible(pattern_of(v.path_prefix(f)), qp, f);
    }
    return p.from_level() <= common_prefix(v, q.valuation());
  }
  // siblings
  const auto& v = p.valuation();
  if (pattern_is_finite(q)) {
    const Pattern qp = pattern_of(q);
    for (std::size_t i = 1; i + 1 < qp.size(); ++i) {
      Path beta = v.path_prefix(i);
      beta.push_back(p.sibling_step(i));
      if (compatible(pattern_of(beta), qp, i + 1)) return true;
    }
    return false;
  }
  const auto& w = q.valuation();
  const std::size_t d = common_prefix(v, w);
  return d >= 1 && d < kComparisonDepth && w.step_at(d) == p.sibling_step(d);
}

}  // namespace

Family Family::singleton(Point point) {
  Family f;
  f.kind_ = Kind::singleton;
  f.point_ = std::move(point);
  return f;
}

Family Family::fiber(Point base, std::vector<Step> excluded, Path tail) {
  Family f;
  f.kind_ = Kind::fiber;
  f.point_ = std::move(base);
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  f.excluded_ = std::move(excluded);
  f.tail_ = std::move(tail);
  return f;
}

Family Family::chain(ValuationDescriptor v, std::size_t from_level) {
  if (!v.is_minimal()) throw std::invalid_argument("chain needs a minimal valuation");
  Family f;
  f.kind_ = Kind::chain;
  f.valuation_ = std::move(v);
  f.from_ = from_level;
  return f;
}

Family Family::siblings(ValuationDescriptor v, Rational offset) {
  if (!v.is_minimal()) throw std::invalid_argument("siblings need a minimal valuation");
  if (offset == 0) throw std::invalid_argument("sibling offset must be nonzero");
  Family f;
  f.kind_ = Kind::siblings;
  f.valuation_ = std::move(v);
  f.offset_ = std::move(offset);
  return f;
}

Family Family::with_a_parameter(bool on) const {
  Family f = *this;
  f.a_parameter_ = on && kind_ == Kind::fiber;
  return f;
}

std::size_t Family::member_level() const {
  if (kind_ == Kind::singleton) return point_.level();
  if (kind_ == Kind::fiber) return point_.level() + 1 + tail_.size();
  throw std::logic_error("member_level: infinite-depth family");
}

bool Family::is_excluded(const Step& t) const { return excluded_in(&excluded_, t); }

Point Family::fiber_member(const Step& t) const {
  Point pt = point_.child(t);
  for (const auto& s : tail_) pt = pt.child(s);
  return pt;
}

Step Family::sibling_step(std::size_t level) const {
  const Step s = valuation_->step_at(level);
  if (s.is_infinite()) return Step(offset_);
  return Step(Rational(s.value() + offset_));
}

Point Family::sibling(std::size_t level) const { return valuation_->point_at(level).child(sibling_step(level)); }

bool Family::has_ray_tail() const {
  if (kind_ != Kind::fiber) return false;
  if (tail_.empty()) return true;
  if (!tail_.front().is_infinite()) return false;
  return std::all_of(tail_.begin() + 1, tail_.end(), [](const Step& s) { return s == Step(Rational(0)); });
}

std::string Family::to_string() const {
  switch (kind_) {
    case Kind::singleton: return "{" + point_.to_string() + "}";
    case Kind::fiber: {
      std::string ex;
      for (const auto& s : excluded_) ex += (ex.empty() ? "" : ", ") + s.to_string();
      return "fiber(" + point_.to_string() + ", excluded {" + ex + "}, tail " + qtree::to_string(tail_) + ")";
    }
    case Kind::chain: return "chain(" + valuation_->to_string() + ", from " + std::to_string(from_) + ")";
    case Kind::siblings: return "siblings(" + valuation_->to_string() + ", offset " + qtree::to_string(offset_) + ")";
  }
  return "?";
}

Step a_coordinate(const Step& t) {
  if (t.is_infinite()) return Step(Rational(0));
  if (t.value() == 0) return Step::infinity();
  return Step(Rational(-1 / t.value()));
}

// The map is an involution.
Step fiber_coordinate(const Step& a) { return a_coordinate(a); }

bool member(const Family& part, const Path& beta) {
  switch (part.kind()) {
    case Family::Kind::singleton: return part.point().path() == beta;
    case Family::Kind::fiber: {
      const Path& base = part.point().path();
      if (beta.size() != part.member_level() || !is_prefix(base, beta)) return false;
      if (part.is_excluded(beta[base.size()])) return false;
      return std::equal(part.tail().begin(), part.tail().end(), beta.begin() + static_cast<std::ptrdiff_t>(base.size() + 1));
    }
    case Family::Kind::chain: return beta.size() >= part.from_level() && on_path(part.valuation(), beta);
    case Family::Kind::siblings: {
      if (beta.size() < 2) return false;
      const std::size_t i = beta.size() - 1;
      return on_path(part.valuation(), Path(beta.begin(), beta.end() - 1)) && beta.back() == part.sibling_step(i);
    }
  }
  return false;
}

bool member(const FamilySet& set, const Point& beta) {
  return std::any_of(set.begin(), set.end(), [&](const Family& f) { return member(f, beta.path()); });
}

bool downset_member(const Family& part, const Path& beta) {
  switch (part.kind()) {
    case Family::Kind::singleton:
    case Family::Kind::fiber: {
      const Pattern pp = pattern_of(part);
      return beta.size() <= pp.size() && compatible(pattern_of(beta), pp, beta.size());
    }
    case Family::Kind::chain: return on_path(part.valuation(), beta);
    case Family::Kind::siblings: return on_path(part.valuation(), beta) || member(part, beta);
  }
  return false;
}

bool downset_member(const FamilySet& set, const Point& beta) {
  return std::any_of(set.begin(), set.end(), [&](const Family& f) { return downset_member(f, beta.path()); });
}

std::optional<std::size_t> q1_downset_count(const FamilySet& set, const Point& alpha) {
  const Path& a = alpha.path();
  const std::size_t l = a.size();
  std::set<Step> children;
  for (const auto& part : set) {
    switch (part.kind()) {
      case Family::Kind::singleton:
      case Family::Kind::fiber: {
        if (part.kind() == Family::Kind::fiber && part.point().path() == a) return std::nullopt;
        if (l >= part.member_level() || !downset_member(part, a)) break;
        if (l < part.point().level()) {
          children.insert(part.point().path()[l]);
        } else {
          children.insert(part.tail()[l - part.point().level() - 1]);
        }
        break;
      }
      case Family::Kind::chain:
      case Family::Kind::siblings:
        if (!on_path(part.valuation(), a)) break;
        children.insert(part.valuation().step_at(l));
        if (part.kind() == Family::Kind::siblings && l >= 1) children.insert(part.sibling_step(l));
        break;
    }
  }
  return children.size();
}

bool pairwise_incomparable(const FamilySet& set) {
  for (const auto& p : set)
    for (const auto& q : set)
      if (proper_prefix_between(p, q)) return false;
  return true;
}

std::vector<Point> enumerate_members(const FamilySet& set, const std::vector<Step>& alphabet, std::size_t max_level) {
  std::vector<Point> out;
  for (const auto& part : set) {
    switch (part.kind()) {
      case Family::Kind::singleton:
        if (part.point().level() <= max_level) out.push_back(part.point());
        break;
      case Family::Kind::fiber:
        if (part.member_level() > max_level) break;
        for (const auto& t : alphabet)
          if (!part.is_excluded(t)) out.push_back(part.fiber_member(t));
        break;
      case Family::Kind::chain:
        for (std::size_t l = part.from_level(); l <= max_level; ++l) out.push_back(part.valuation().point_at(l));
        break;
      case Family::Kind::siblings:
        for (std::size_t i = 1; i + 1 <= max_level; ++i) out.push_back(part.sibling(i));
        break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qtree
