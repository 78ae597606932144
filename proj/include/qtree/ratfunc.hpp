#pragma once

#include "qtree/poly.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qtree {

/// Reduced fraction of polynomials. The denominator is nonzero, coprime to
/// the numerator and has leading coefficient 1 under grlex; zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}         // NOLINT(google-explicit-constructor)
  RatFunc(Poly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error("zero divisor") when den is zero.
  RatFunc(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool depends_on(int slot) const { return num_.depends_on(slot) || den_.depends_on(slot); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& lhs, const RatFunc& rhs);
  friend RatFunc operator-(const RatFunc& lhs, const RatFunc& rhs);
  friend RatFunc operator*(const RatFunc& lhs, const RatFunc& rhs);
  friend RatFunc operator/(const RatFunc& lhs, const RatFunc& rhs);
  friend bool operator==(const RatFunc& lhs, const RatFunc& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }

  RatFunc inverse() const;
  RatFunc pow(unsigned exponent) const;

  RatFunc evaluate(int slot, const Rational& value) const;
  /// Simultaneous substitution of rational functions for slots.
  RatFunc compose(const std::array<std::optional<RatFunc>, kNumVars>& images) const;

  std::string to_string(const VarNames& names = default_names()) const;

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

/// Syntax error in an expression, with the offending offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Grammar: integers, symbols (from `names`), + - * / ^ (non-negative integer
/// exponents) and parentheses; whitespace is ignored.
RatFunc parse_expression(std::string_view text, const VarNames& names = default_names());

/// Convenience for polynomial input; throws ParseError if the text has a non-unit denominator.
Poly parse_poly(std::string_view text, const VarNames& names = default_names());

}  // namespace qtree
