#pragma once

#include "qtree/point.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtree {

enum class Position { zero, pole, unit, undetermined };

std::string to_string(Position position);

/// Tag of a reduced fraction F/G from the constant terms of F and G.
Position classify(const RatFunc& expressed);

/// Position of a nonzero rational function at a tree point. The function
/// must be free of the parameter a (substitute a value first).
Position position(const Point& point, const RatFunc& f);

struct ParametricCase;

/// Position of a function that involves the parameter a and/or the fiber
/// coordinate t: a generic tag valid off a finite set of exceptional
/// conditions, each refined recursively.
struct ParametricPosition {
  Position generic = Position::unit;
  /// Set when the element is identically zero ("vanishes") or undefined
  /// ("undefined") under the enclosing condition; `generic` is then meaningless.
  std::optional<std::string> degenerate;
  std::vector<ParametricCase> cases;
  /// Exceptional conditions that could not be split into rational pieces.
  std::vector<std::string> unresolved;
};

struct ParametricCase {
  /// Human-readable condition, e.g. "a = 2" or "a = -1/t".
  std::string condition;
  /// The slot fixed by the condition (kVarA or kVarT) and its value.
  int slot = kVarA;
  RatFunc value;
  ParametricPosition result;
};

ParametricPosition position_parametric(const Point& point, const RatFunc& f);
/// Same over a symbolic chart (one whose steps may involve t).
ParametricPosition position_parametric(const Chart& chart, const RatFunc& f);

/// Visits every leaf of the case tree with the conditions leading to it.
template <class Visitor>
void for_each_leaf(const ParametricPosition& pp, Visitor&& visit,
                   std::vector<const ParametricCase*>& trail) {
  visit(pp, trail);
  for (const auto& c : pp.cases) {
    trail.push_back(&c);
    for_each_leaf(c.result, visit, trail);
    trail.pop_back();
  }
}

/// Indeterminacy resolution of f from D: the points where f first becomes a
/// zero or a pole below a chain of undetermined points.
struct Resolution {
  struct GenericFiber {
    Point base;
    std::vector<Step> excluded;
    Position tag = Position::zero;
  };

  std::vector<Point> zeros;
  std::vector<Point> poles;
  /// Children of an undetermined base that all carry `tag` except `excluded`
  /// (arises when numerator and denominator have different orders).
  std::vector<GenericFiber> generic;
  std::vector<std::string> diagnostics;
  int depth_used = 0;
};

/// Throws std::runtime_error listing the open points if undetermined points
/// remain at depth_cap.
Resolution resolve(const RatFunc& f, int depth_cap = 16);

}  // namespace qtree
