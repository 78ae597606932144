#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qtree {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n" or "n/d" (optional sign, decimal digits). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Rational roots of sum coeffs[i] * t^i, each root listed once, ascending.
/// The zero polynomial has no roots by convention.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

}  // namespace qtree
