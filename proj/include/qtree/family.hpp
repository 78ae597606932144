#pragma once

#include "qtree/valuation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtree {

/// A symbolically described subset of the tree.
///
///   singleton  {point}
///   fiber      {base <t> tail : t not excluded}, t ranging over Q and infinity
///   chain      points of V's quadratic sequence at levels >= from
///   siblings   {alpha_i <s_i + offset> : i >= 1}, alpha_i = V's level-i point,
///              s_i its next step, and infinity + offset read as offset
class Family {
 public:
  enum class Kind { singleton, fiber, chain, siblings };

  static Family singleton(Point point);
  static Family fiber(Point base, std::vector<Step> excluded, Path tail);
  /// Throws std::invalid_argument unless V is minimal.
  static Family chain(ValuationDescriptor v, std::size_t from_level);
  /// Throws std::invalid_argument unless V is minimal and offset != 0.
  static Family siblings(ValuationDescriptor v, Rational offset);

  Kind kind() const { return kind_; }

  /// Singleton point, or fiber base.
  const Point& point() const { return point_; }
  const std::vector<Step>& excluded() const { return excluded_; }
  const Path& tail() const { return tail_; }
  /// Chain and siblings only.
  const ValuationDescriptor& valuation() const { return *valuation_; }
  std::size_t from_level() const { return from_; }
  const Rational& offset() const { return offset_; }

  /// Fiber metadata: report the fiber coordinate t as the parameter a = -1/t.
  bool a_parameter() const { return a_parameter_; }
  Family with_a_parameter(bool on = true) const;

  /// Level of every member (fiber and singleton only).
  std::size_t member_level() const;
  bool is_excluded(const Step& t) const;
  /// The fiber member at coordinate t (precondition: fiber).
  Point fiber_member(const Step& t) const;
  /// The sibling step at level i >= 1 (precondition: siblings).
  Step sibling_step(std::size_t level) const;
  /// The member alpha_i <s_i + offset> (precondition: siblings, i >= 1).
  Point sibling(std::size_t level) const;

  /// Fiber tails of the form [] or [inf] [0]^j: members are proximate to the base.
  bool has_ray_tail() const;

  std::string to_string() const;

  friend bool operator==(const Family& lhs, const Family& rhs) { return lhs.to_string() == rhs.to_string(); }

 private:
  Family() = default;

  Kind kind_ = Kind::singleton;
  Point point_;
  std::vector<Step> excluded_;
  Path tail_;
  std::optional<ValuationDescriptor> valuation_;
  std::size_t from_ = 0;
  Rational offset_;
  bool a_parameter_ = false;
};

using FamilySet = std::vector<Family>;

/// The coordinate a = -1/t of a fiber coordinate t (0 <-> inf).
Step a_coordinate(const Step& t);
Step fiber_coordinate(const Step& a);

bool member(const Family& part, const Path& beta);
bool member(const FamilySet& set, const Point& beta);
/// beta is a (not necessarily proper) prefix of some member.
bool downset_member(const Family& part, const Path& beta);
bool downset_member(const FamilySet& set, const Point& beta);

/// Size of {children of alpha} intersected with the downset; nullopt means infinite.
std::optional<std::size_t> q1_downset_count(const FamilySet& set, const Point& alpha);

/// Paths compared along a valuation's sequence stop after this many levels.
inline constexpr std::size_t kComparisonDepth = 48;

/// No member is a proper prefix of another member.
bool pairwise_incomparable(const FamilySet& set);

/// Members of level <= max_level whose free steps come from the alphabet. Sorted, unique.
std::vector<Point> enumerate_members(const FamilySet& set, const std::vector<Step>& alphabet, std::size_t max_level);

}  // namespace qtree
