#pragma once

#include "qtree/ratfunc.hpp"

#include "qtree/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtree {

/// One blow-up chart choice: a rational value b, or infinity.
///
/// From a point with local parameters (p, q), the finite step b moves to the
/// chart p, q/p - b and the infinite step to q, p/q. In both cases the first
/// new parameter is the exceptional divisor of the blow-up.
class Step {
 public:
  Step() = default;
  explicit Step(Rational value) : value_(std::move(value)) {}
  static Step infinity() { return Step(Infinite{}); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: finite.
  const Rational& value() const { return *value_; }

  std::string to_string() const;
  /// Accepts "inf" or a rational literal.
  static Step parse(std::string_view text);

  friend bool operator==(const Step& lhs, const Step& rhs) { return lhs.value_ == rhs.value_; }
  /// Finite steps ascend by value; infinity sorts last.
  friend bool operator<(const Step& lhs, const Step& rhs);

 private:
  struct Infinite {};
  explicit Step(Infinite) : value_(std::nullopt) {}
  std::optional<Rational> value_ = Rational(0);
};

using Path = std::vector<Step>;

/// "[0, inf, -1/2]"; the root prints as "[]".
std::string to_string(const Path& path);
Path parse_path(std::string_view text);
/// True when `prefix` is a (not necessarily proper) prefix of `path`.
bool is_prefix(const Path& prefix, const Path& path);
/// Lexicographic on steps, shorter first on ties.
bool path_less(const Path& lhs, const Path& rhs);

/// A chart step whose finite value may be symbolic (a polynomial in a, t).
struct ChartStep {
  bool infinite = false;
  Poly value;

  static ChartStep from(const Step& step);
  static ChartStep symbolic(Poly value) { return {false, std::move(value)}; }
};

/// Rewrites a polynomial in the current local coordinates (slots 0, 1) into the
/// child's coordinates: f(p, p(q + b)) for a finite step, f(pq, p) for infinity.
Poly apply_step(const Poly& f, const ChartStep& step);

/// Inverse substitution x = X(p, q), y = Y(p, q) of a (possibly symbolic) path.
class Chart {
 public:
  Chart();
  Chart(RatFunc x_image, RatFunc y_image) : x_(std::move(x_image)), y_(std::move(y_image)) {}

  const RatFunc& x_image() const { return x_; }
  const RatFunc& y_image() const { return y_; }

  Chart child(const ChartStep& step) const;
  /// f(X(p, q), Y(p, q)) reduced; slots a and t are carried along.
  RatFunc express(const RatFunc& f) const;
  Chart substitute(int slot, const RatFunc& value) const;

 private:
  RatFunc x_;
  RatFunc y_;
};

/// A point of the quadratic tree: the path of chart choices from the root D,
/// with eagerly computed local parameters and inverse substitution.
class Point {
 public:
  /// The root D with parameters (x, y).
  Point();
  static Point from_path(const Path& path);

  const Path& path() const { return node_->path; }
  std::size_t level() const { return node_->path.size(); }
  bool is_root() const { return node_->path.empty(); }

  /// Local parameters as functions of x and y.
  const RatFunc& first_parameter() const { return node_->p; }
  const RatFunc& second_parameter() const { return node_->q; }
  /// Inverse substitution, polynomial in the local parameters.
  const Chart& chart() const { return node_->chart; }
  const Poly& x_image() const { return node_->chart.x_image().num(); }
  const Poly& y_image() const { return node_->chart.y_image().num(); }

  /// Printing names for (p, q, a, t), e.g. {"x", "y1", "a", "t"}.
  const VarNames& names() const { return node_->names; }

  Point child(const Step& step) const;
  /// Ancestors are shared, so this is a walk up the chain.
  Point prefix(std::size_t level) const;
  /// Precondition: not the root.
  Point parent() const { return prefix(level() - 1); }

  std::string to_string() const { return qtree::to_string(path()); }

  friend bool operator==(const Point& lhs, const Point& rhs) { return lhs.path() == rhs.path(); }
  friend bool operator<(const Point& lhs, const Point& rhs) { return path_less(lhs.path(), rhs.path()); }

 private:
  struct Node {
    Path path;
    RatFunc p;
    RatFunc q;
    Chart chart;
    VarNames names;
    std::array<unsigned, 2> counters{};  // next subscript for letters x and y
    std::shared_ptr<const Node> parent;
  };
  explicit Point(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

enum class Relation { equal, below, above, incomparable };

/// Containment in Q(D) is path-prefix order: `below` means lhs is a proper prefix of rhs.
Relation compare(const Point& lhs, const Point& rhs);
std::string to_string(Relation relation);

/// f rewritten in the point's local parameters.
RatFunc express(const Point& point, const RatFunc& f);

/// Order valuation of the point. Throws std::domain_error on f = 0.
int ord(const Point& point, const RatFunc& f);

/// Residue of f in the residue field Q(t) of the point's order valuation,
/// t being the residue of q/p. `value` is expressed in slot 0.
struct Residue {
  bool positive_order = false;
  RatFunc value;

  std::string to_string() const;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Throws std::domain_error("not in valuation ring") when ord(point, f) < 0.
Residue residue(const Point& point, const RatFunc& f);

/// The point whose maximal ideal is generated by the two given functions,
/// found by descending from D. Throws std::runtime_error when nothing is
/// found within depth_cap levels or the answer is ambiguous.
Point locate(const RatFunc& first, const RatFunc& second, int depth_cap = 16);

}  // namespace qtree
