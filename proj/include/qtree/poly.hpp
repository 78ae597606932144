#pragma once

#include "qtree/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtree {

/// Variable slots. Slots 0 and 1 hold the current pair of local coordinates
/// (x, y at the root, the local parameters (p, q) at a tree point); slot 2 is
/// the family parameter a and slot 3 the internal fiber coordinate t.
inline constexpr int kNumVars = 4;
inline constexpr int kVarP = 0;
inline constexpr int kVarQ = 1;
inline constexpr int kVarA = 2;
inline constexpr int kVarT = 3;

using Exponents = std::array<std::uint32_t, kNumVars>;
using VarNames = std::array<std::string, kNumVars>;

/// Names used for printing when nothing else is known.
const VarNames& default_names();

/// Graded lexicographic comparison with slot 0 > slot 1 > slot 2 > slot 3.
bool grlex_less(const Exponents& lhs, const Exponents& rhs);

/// Sparse polynomial over Q. Terms are kept sorted by decreasing grlex order
/// with no zero coefficients; the zero polynomial has no terms.
class Poly {
 public:
  struct Term {
    Exponents exps{};
    Rational coeff;
  };

  Poly() = default;
  Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(int slot);
  static Poly monomial(const Exponents& exps, const Rational& coeff);
  /// Takes ownership of arbitrary terms; merges duplicates and drops zeros.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }

  /// Leading term under grlex. Precondition: nonzero.
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  Rational constant_coeff() const;

  std::uint32_t degree(int slot) const;
  std::uint32_t total_degree() const;
  bool depends_on(int slot) const { return degree(slot) > 0; }

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend bool operator==(const Poly& lhs, const Poly& rhs);

  Poly pow(unsigned exponent) const;

  /// Coefficients with respect to one slot: result[k] multiplies slot^k.
  std::vector<Poly> coefficients_in(int slot) const;
  static Poly from_coefficients(int slot, const std::vector<Poly>& coeffs);

  /// Substitutes a rational value for one slot.
  Poly evaluate(int slot, const Rational& value) const;
  /// Simultaneous substitution: slot i is replaced by images[i] when present.
  Poly compose(const std::array<std::optional<Poly>, kNumVars>& images) const;
  /// Multiplies by the monomial with the given exponents.
  Poly shifted(const Exponents& exps) const;

  /// Univariate coefficient vector (index = degree) of a polynomial that only
  /// involves `slot`. Precondition: no other slot occurs.
  std::vector<Rational> univariate_coeffs(int slot) const;

  std::string to_string(const VarNames& names = default_names()) const;

 private:
  std::vector<Term> terms_;
};

/// Exact quotient when `divisor` divides `dividend`, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& dividend, const Poly& divisor);
bool divides(const Poly& divisor, const Poly& dividend);

/// Greatest common divisor, normalized to leading coefficient 1.
/// Throws std::invalid_argument when both inputs are zero.
Poly gcd(const Poly& lhs, const Poly& rhs);

/// Divides by the leading coefficient (zero stays zero).
Poly monic(const Poly& p);

/// Minimum of deg_x + deg_y (slots 0 and 1) over the terms; parameters count as scalars.
/// Throws std::domain_error on zero.
std::uint32_t order_at_origin(const Poly& p);

/// Sum of the terms whose slot-0/slot-1 degree equals order_at_origin(p).
Poly lowest_form(const Poly& p);

/// Largest m such that h^m divides p. Preconditions: p nonzero, h non-constant.
unsigned factor_multiplicity(const Poly& p, const Poly& h);

/// p(0, 0, a, t): the part of p free of slots 0 and 1.
Poly value_at_origin(const Poly& p);

/// Content with respect to `slot`: gcd of the coefficients in that slot.
Poly content_in(const Poly& p, int slot);

/// Square-free part (product of distinct irreducible factors up to units).
Poly squarefree_part(const Poly& p);

/// Partial derivative with respect to one slot.
Poly derivative(const Poly& p, int slot);

/// Resultant with respect to `slot` (Sylvester determinant, fraction-free).
Poly resultant(const Poly& lhs, const Poly& rhs, int slot);

/// Rational roots of a polynomial in a single slot (other slots must be absent).
std::vector<Rational> rational_roots(const Poly& p, int slot);

}  // namespace qtree
