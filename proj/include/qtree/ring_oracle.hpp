#pragma once

#include "qtree/family.hpp"
#include "qtree/position.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtree {

/// f lies in the point: its position is Zero or Unit. f must be free of a.
bool in_point(const RatFunc& f, const Point& alpha);

enum class Verdict { yes, no, yes_except };
std::string to_string(Verdict v);

/// A parameter value a = c at which membership fails.
struct ParameterException {
  Rational a;
  /// "no", or "undefined" when f itself does not exist at a = c.
  std::string verdict;
  std::optional<Point> witness;
};

struct MembershipAnswer {
  Verdict verdict = Verdict::yes;
  /// For "no": a member where f is a Pole or Undetermined.
  std::optional<Point> witness;
  /// The value of a used for the witness, when f involves a.
  std::optional<Rational> witness_a;
  std::vector<ParameterException> exceptions;
  /// False when a chain or sibling part was only checked to `verified_depth`.
  bool stabilized = true;
  std::size_t verified_depth = 0;
  std::vector<std::string> notes;
};

inline constexpr std::size_t kChainDepth = 12;

/// Membership of f (possibly involving a) in the intersection of the points of S.
MembershipAnswer in_family(const RatFunc& f, const FamilySet& set, std::size_t chain_depth = kChainDepth);

/// The chart of a fiber with its free coordinate left as the symbol t.
Chart fiber_chart(const Family& fiber);

struct IrredundanceCertificate {
  Point member;
  ValuationDescriptor valuation;
  /// One line per competitor part: what was checked and why it fails.
  std::vector<std::string> uniqueness_domain;
};

struct IrredundanceResult {
  std::optional<IrredundanceCertificate> certificate;
  /// Per rejected candidate, the reason.
  std::vector<std::string> obstructions;
};

/// First candidate curve h through delta whose divisorial ring contains delta
/// and no other point of U. Fibers are decided symbolically in their
/// coordinate; chains and siblings by expansion to `chain_depth`.
IrredundanceResult irredundance_certificate(const FamilySet& set, const Point& delta, const std::vector<Poly>& candidates,
                                            std::size_t chain_depth = kChainDepth);

/// Symbolic containment of a fiber's members in the divisorial ring of h.
struct FiberContainment {
  /// Strict transform's value at the origin, a polynomial in t.
  Poly condition;
  /// Rational coordinates of contained members (the infinite member included).
  std::vector<Step> contained;
  /// Coordinates where the generic strict transform does not specialize, checked directly.
  std::vector<Step> special;
  bool all_generic_contained = false;
  std::vector<std::string> notes;
};
FiberContainment fiber_containment(const Poly& h, const Family& fiber);

using ExponentVector = std::pair<long, long>;

/// target is a sum of generators with nonnegative integer coefficients.
///
/// A monomial lies in a localization of a monomial subring iff it lies in
/// the subring: m * q with q(0) != 0 contains m itself as a term.
bool semigroup_member(const ExponentVector& target, const std::vector<ExponentVector>& generators);

struct SubClaim {
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct DemoReport {
  std::string name;
  std::vector<SubClaim> claims;
  bool passed() const;
};

std::vector<std::string> demo_names();
/// Throws std::invalid_argument on an unknown name.
DemoReport run_demo(const std::string& name);

}  // namespace qtree
