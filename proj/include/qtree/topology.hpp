#pragma once

#include "qtree/family.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qtree {

/// Something whose downset is irreducible: a tree point or a valuation.
using Generator = std::variant<Point, ValuationDescriptor>;
std::string to_string(const Generator& g);

/// A Zariski closed subset of Q(D), as a finite union of downsets:
/// the downset of `residual`, of each point, prefixes-and-proximate points of
/// each divisor center, and path prefixes of each minimal valuation.
struct ClosedSetRepr {
  std::vector<Point> point_downsets;
  std::vector<ValuationDescriptor> divisor_downsets;
  std::vector<ValuationDescriptor> minimal_downsets;
  FamilySet residual;
};

/// The irreducible components are not finite in number.
class InfiniteComponents : public ComputationError {
 public:
  explicit InfiniteComponents(Family witness)
      : ComputationError("infinitely many components: " + witness.to_string()), witness_(std::move(witness)) {}
  const Family& witness() const { return witness_; }

 private:
  Family witness_;
};

/// Valuations only. Divisorial limits come from the fiber bases with
/// infinitely many children in the downset; minimal ones from chains and siblings.
std::vector<ValuationDescriptor> patch_limit_points(const FamilySet& set);

ClosedSetRepr zariski_closure(const FamilySet& set);
bool closure_member(const ClosedSetRepr& closed, const Point& beta);

/// Maximal generators, sorted. Throws InfiniteComponents.
std::vector<Generator> irreducible_components(const ClosedSetRepr& closed);
/// The single generator when there is exactly one component.
std::optional<Generator> is_irreducible(const ClosedSetRepr& closed);

struct NoetherianCertificate {
  bool verdict = false;
  std::vector<ValuationDescriptor> covering;
  std::optional<Family> witness;
  std::string reason;
};

/// Cover by finitely many valuation downsets, part by part.
NoetherianCertificate is_noetherian(const FamilySet& set);

}  // namespace qtree
