#include "qtree/point.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qtree {

bool operator<(const Step& lhs, const Step& rhs) {
  if (lhs.is_infinite() || rhs.is_infinite()) return !lhs.is_infinite() && rhs.is_infinite();
  return lhs.value() < rhs.value();
}

std::string Step::to_string() const { return is_infinite() ? "inf" : value().get_str(); }

Step Step::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  return Step(parse_rational(s));
}

std::string to_string(const Path& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ", ";
    out += path[i].to_string();
  }
  return out + "]";
}

Path parse_path(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("path literal must look like [0, inf, -1/2]: '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  Path path;
  if (s.empty()) return path;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty step in path literal '" + std::string(text) + "'");
    path.push_back(Step::parse(item));
  }
  return path;
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

bool path_less(const Path& lhs, const Path& rhs) {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

ChartStep ChartStep::from(const Step& step) {
  if (step.is_infinite()) return {true, Poly{}};
  return {false, Poly(step.value())};
}

Poly apply_step(const Poly& f, const ChartStep& step) {
  const Poly p = Poly::variable(kVarP);
  const Poly q = Poly::variable(kVarQ);
  std::array<std::optional<Poly>, kNumVars> images;
  if (step.infinite) {
    images[kVarP] = p * q;
    images[kVarQ] = p;
  } else {
    images[kVarP] = p;
    images[kVarQ] = p * (q + step.value);
  }
  return f.compose(images);
}

Chart::Chart() : x_(Poly::variable(kVarP)), y_(Poly::variable(kVarQ)) {}

Chart Chart::child(const ChartStep& step) const {
  const RatFunc p(Poly::variable(kVarP));
  const RatFunc q(Poly::variable(kVarQ));
  std::array<std::optional<RatFunc>, kNumVars> images;
  if (step.infinite) {
    images[kVarP] = p * q;
    images[kVarQ] = p;
  } else {
    images[kVarP] = p;
    images[kVarQ] = p * (q + RatFunc(step.value));
  }
  return {x_.compose(images), y_.compose(images)};
}

RatFunc Chart::express(const RatFunc& f) const {
  std::array<std::optional<RatFunc>, kNumVars> images;
  images[kVarP] = x_;
  images[kVarQ] = y_;
  return f.compose(images);
}

Chart Chart::substitute(int slot, const RatFunc& value) const {
  std::array<std::optional<RatFunc>, kNumVars> images;
  images[slot] = value;
  return {x_.compose(images), y_.compose(images)};
}

Point::Point() {
  static const std::shared_ptr<const Node> root = [] {
    auto node = std::make_shared<Node>();
    node->p = Poly::variable(kVarP);
    node->q = Poly::variable(kVarQ);
    node->names = {"x", "y", "a", "t"};
    return node;
  }();
  node_ = root;
}

Point Point::from_path(const Path& path) {
  Point point;
  for (const auto& step : path) point = point.child(step);
  return point;
}

Point Point::child(const Step& step) const {
  const Node& cur = *node_;
  auto next = std::make_shared<Node>();
  next->path = cur.path;
  next->path.push_back(step);
  next->chart = cur.chart.child(ChartStep::from(step));
  next->names = cur.names;
  next->counters = cur.counters;
  next->parent = node_;
  // The new second parameter is a quotient; it inherits the letter of the
  // quotient's numerator and takes the next subscript for that letter.
  const std::string& numerator_name = step.is_infinite() ? cur.names[kVarP] : cur.names[kVarQ];
  const int letter = numerator_name.front() == 'x' ? 0 : 1;
  const std::string fresh = std::string(1, numerator_name.front()) + std::to_string(++next->counters[letter]);
  if (step.is_infinite()) {
    next->p = cur.q;
    next->q = cur.p / cur.q;
    next->names[kVarP] = cur.names[kVarQ];
  } else {
    next->p = cur.p;
    next->q = cur.q / cur.p - RatFunc(step.value());
  }
  next->names[kVarQ] = fresh;
  return Point(std::move(next));
}

Point Point::prefix(std::size_t level) const {
  if (level > this->level()) throw std::out_of_range("prefix level beyond point level");
  std::shared_ptr<const Node> node = node_;
  for (std::size_t l = this->level(); l > level; --l) node = node->parent;
  return Point(std::move(node));
}

Relation compare(const Point& lhs, const Point& rhs) {
  if (lhs.path() == rhs.path()) return Relation::equal;
  if (is_prefix(lhs.path(), rhs.path())) return Relation::below;
  if (is_prefix(rhs.path(), lhs.path())) return Relation::above;
  return Relation::incomparable;
}

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::equal: return "equal";
    case Relation::below: return "below";
    case Relation::above: return "above";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

RatFunc express(const Point& point, const RatFunc& f) {
  if (point.is_root()) return f;
  return point.chart().express(f);
}

int ord(const Point& point, const RatFunc& f) {
  if (f.is_zero()) throw std::domain_error("ord of zero undefined");
  const RatFunc e = express(point, f);
  return static_cast<int>(order_at_origin(e.num())) - static_cast<int>(order_at_origin(e.den()));
}

std::string Residue::to_string() const {
  if (positive_order) return "positive-order";
  static const VarNames names{"t", "y", "a", "s"};
  return value.to_string(names);
}

Residue residue(const Point& point, const RatFunc& f) {
  if (f.is_zero()) return {true, RatFunc{}};
  const RatFunc e = express(point, f);
  const int v = static_cast<int>(order_at_origin(e.num())) - static_cast<int>(order_at_origin(e.den()));
  if (v < 0) throw std::domain_error("not in valuation ring");
  if (v > 0) return {true, RatFunc{}};
  // Lowest forms at (p, q) = (1, t); t is moved into slot 0.
  std::array<std::optional<Poly>, kNumVars> to_t;
  to_t[kVarP] = Poly(1);
  to_t[kVarQ] = Poly::variable(kVarP);
  return {false, RatFunc(lowest_form(e.num()).compose(to_t), lowest_form(e.den()).compose(to_t))};
}

namespace {

enum class Vanishing { unit, pole, zero, undetermined };

struct LocalData {
  Vanishing kind;
  Poly num_lowest;
  Poly den_lowest;
  std::uint32_t num_order = 0;
};

LocalData local_data(const Point& point, const RatFunc& f) {
  const RatFunc e = express(point, f);
  if (e.depends_on(kVarA) || e.depends_on(kVarT))
    throw std::invalid_argument("locate: generators must not involve parameters");
  const bool num_vanishes = e.num().constant_coeff() == 0;
  const bool den_vanishes = e.den().constant_coeff() == 0;
  LocalData d{};
  d.kind = num_vanishes ? (den_vanishes ? Vanishing::undetermined : Vanishing::zero)
                        : (den_vanishes ? Vanishing::pole : Vanishing::unit);
  d.num_lowest = lowest_form(e.num());
  d.den_lowest = lowest_form(e.den());
  d.num_order = order_at_origin(e.num());
  return d;
}

void add_roots_on_exceptional_line(const Poly& form, std::set<Step>& steps) {
  const Poly on_line = form.evaluate(kVarP, 1);
  if (on_line.is_constant()) return;
  for (const auto& r : rational_roots(on_line, kVarQ)) steps.insert(Step(r));
}

}  // namespace

Point locate(const RatFunc& first, const RatFunc& second, int depth_cap) {
  if (first.is_zero() || second.is_zero()) throw std::invalid_argument("locate: zero generator");
  std::vector<Point> frontier{Point{}};
  for (int level = 0; level <= depth_cap && !frontier.empty(); ++level) {
    std::vector<Point> found;
    std::vector<Point> next;
    for (const auto& node : frontier) {
      const LocalData a = local_data(node, first);
      const LocalData b = local_data(node, second);
      auto dead = [](const LocalData& d) {
        return d.kind == Vanishing::unit || d.kind == Vanishing::pole ||
               (d.kind == Vanishing::zero && d.num_order >= 2);
      };
      if (dead(a) || dead(b)) continue;
      if (a.kind == Vanishing::zero && b.kind == Vanishing::zero) {
        const Poly p = Poly::variable(kVarP);
        const Poly q = Poly::variable(kVarQ);
        auto coeff = [](const Poly& form, const Poly& var) {
          for (const auto& t : form.terms())
            if (t.exps == var.leading().exps) return t.coeff;
          return Rational(0);
        };
        const Rational det = coeff(a.num_lowest, p) * coeff(b.num_lowest, q) -
                             coeff(a.num_lowest, q) * coeff(b.num_lowest, p);
        if (det != 0) {
          found.push_back(node);
          continue;
        }
      }
      std::set<Step> steps{Step::infinity()};
      for (const LocalData* d : {&a, &b}) {
        add_roots_on_exceptional_line(d->num_lowest, steps);
        if (d->kind == Vanishing::undetermined) add_roots_on_exceptional_line(d->den_lowest, steps);
      }
      for (const auto& s : steps) next.push_back(node.child(s));
    }
    if (found.size() == 1) return found.front();
    if (found.size() > 1) {
      std::string msg = "locate: ambiguous candidates";
      for (const auto& f : found) msg += " " + f.to_string();
      throw ComputationError(msg);
    }
    frontier = std::move(next);
  }
  throw ComputationError("locate: no point found within depth cap " + std::to_string(depth_cap));
}

}  // namespace qtree
