#pragma once

#include "qtree/point.hpp"

#include <memory>
#include <string>

namespace qtree {

/// Euclidean expansion of the monomial valuation v(x) = a, v(y) = b.
struct MonomialPath {
  Path path;
  Point terminal;
};
MonomialPath monomial_path(unsigned a, unsigned b);

/// The unique child step along which the curve h(x, y) continues from alpha.
/// Throws ComputationError when the tangent directions are not a single
/// rational direction.
Step branch_step(const Poly& h, const Point& alpha);

/// A valuation overring of D that the engine can reason about.
///
/// Minimal descriptors (eventually periodic paths and curve branches) expose
/// their quadratic sequence through step_at(); curve branches expand lazily
/// behind a shared, synchronized cache.
class ValuationDescriptor {
 public:
  enum class Kind { first_kind, second_kind, eventually_periodic, curve_branch };

  static ValuationDescriptor first_kind(Poly h);
  static ValuationDescriptor second_kind(Point center);
  /// Canonicalized: shortest prefix, primitive period. Throws on an empty period.
  static ValuationDescriptor eventually_periodic(Path prefix, Path period);
  static ValuationDescriptor curve_branch(Poly h);
  /// v(x) = a, v(y) = b; always reduces to the second kind of the terminal point.
  static ValuationDescriptor monomial(unsigned a, unsigned b);

  Kind kind() const { return kind_; }
  bool is_minimal() const { return kind_ == Kind::eventually_periodic || kind_ == Kind::curve_branch; }

  /// Second kind only.
  const Point& center() const;
  /// First kind and curve branch only.
  const Poly& curve() const;
  /// Eventually periodic only.
  const Path& prefix() const { return prefix_; }
  const Path& period() const { return period_; }

  /// Step taken at `level` along the quadratic sequence (minimal kinds only).
  Step step_at(std::size_t level) const;
  Path path_prefix(std::size_t length) const;
  /// The level-`level` point of the quadratic sequence.
  Point point_at(std::size_t level) const { return Point::from_path(path_prefix(level)); }

  std::string to_string() const;

  friend bool operator==(const ValuationDescriptor& lhs, const ValuationDescriptor& rhs);
  friend bool operator<(const ValuationDescriptor& lhs, const ValuationDescriptor& rhs) {
    return lhs.to_string() < rhs.to_string();
  }

 private:
  struct BranchCache;

  ValuationDescriptor() = default;

  Kind kind_ = Kind::second_kind;
  Point center_;
  Poly curve_;
  Path prefix_;
  Path period_;
  std::shared_ptr<BranchCache> branch_;
};

/// beta is contained in the valuation ring.
bool val_contains_point(const ValuationDescriptor& v, const Point& beta);
/// The valuation ring dominates beta. Throws std::invalid_argument for the first kind.
bool val_dominates_point(const ValuationDescriptor& v, const Point& beta);

}  // namespace qtree
