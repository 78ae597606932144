#include "qtree/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qtree {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Divisors of |n| (n != 0) by trial division over the prime factorization.
std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divisors{1};
  for (const auto& [p, e] : factors) {
    const std::size_t count = divisors.size();
    Integer power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  return divisors;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& t) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  if (coeffs.size() <= 1) return roots;
  std::size_t low = 0;
  while (coeffs[low] == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (coeffs.size() > 1) {
    Integer lcm_den = 1;
    for (const auto& c : coeffs) lcm_den = lcm_den * c.get_den() / gcd(lcm_den, c.get_den());
    std::vector<Integer> ints;
    for (const auto& c : coeffs) ints.emplace_back(Rational(c * lcm_den).get_num());
    Integer g = 0;
    for (const auto& c : ints) g = gcd(g, c);
    for (auto& c : ints) c /= g;
    const auto num_divs = positive_divisors(ints.front());
    const auto den_divs = positive_divisors(ints.back());
    for (const auto& p : num_divs) {
      for (const auto& q : den_divs) {
        for (int sign : {1, -1}) {
          Rational cand(p * sign, q);
          cand.canonicalize();
          if (horner(coeffs, cand) == 0) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace qtree
