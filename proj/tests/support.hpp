#pragma once

#include "qtree/point.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>

namespace doctest {
template <> struct StringMaker<qtree::Poly> {
  static String convert(const qtree::Poly& p) { return p.to_string().c_str(); }
};
template <> struct StringMaker<qtree::RatFunc> {
  static String convert(const qtree::RatFunc& f) { return f.to_string().c_str(); }
};
template <> struct StringMaker<qtree::Path> {
  static String convert(const qtree::Path& p) { return qtree::to_string(p).c_str(); }
};
template <> struct StringMaker<std::vector<std::string>> {
  static String convert(const std::vector<std::string>& items) {
    std::string out = "{";
    for (const auto& s : items) out += (out.size() > 1 ? ", " : "") + s;
    return (out + "}").c_str();
  }
};
template <> struct StringMaker<qtree::Point> {
  static String convert(const qtree::Point& p) { return p.to_string().c_str(); }
};
}  // namespace doctest

namespace qtree::testing {

// QTREE_SEED overrides the fixed default.
inline std::uint64_t seed_from_env() {
  const char* env = std::getenv("QTREE_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 20240611;
}
inline const std::uint64_t kSeed = seed_from_env();

inline RatFunc rf(std::string_view text, const VarNames& names = default_names()) {
  return parse_expression(text, names);
}
inline Poly poly(std::string_view text, const VarNames& names = default_names()) {
  return parse_poly(text, names);
}
inline Point at(std::string_view path) { return Point::from_path(parse_path(path)); }

/// Random polynomial in x, y with small integer coefficients.
inline Poly random_poly(std::mt19937_64& rng, unsigned max_degree, unsigned terms) {
  std::uniform_int_distribution<int> deg(0, static_cast<int>(max_degree));
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::vector<Poly::Term> out;
  for (unsigned i = 0; i < terms; ++i) {
    const int dx = deg(rng);
    const int dy = std::uniform_int_distribution<int>(0, static_cast<int>(max_degree) - dx)(rng);
    const int c = coeff(rng);
    if (c == 0) continue;
    Exponents e{};
    e[kVarP] = static_cast<std::uint32_t>(dx);
    e[kVarQ] = static_cast<std::uint32_t>(dy);
    out.push_back({e, Rational(c)});
  }
  return Poly::from_terms(std::move(out));
}

inline Step random_step(std::mt19937_64& rng, const std::vector<Step>& alphabet) {
  return alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
}

inline Path random_path(std::mt19937_64& rng, const std::vector<Step>& alphabet, std::size_t length) {
  Path path;
  for (std::size_t i = 0; i < length; ++i) path.push_back(random_step(rng, alphabet));
  return path;
}

inline std::vector<Step> steps_of(std::initializer_list<const char*> items) {
  std::vector<Step> out;
  for (const char* s : items) out.push_back(Step::parse(s));
  return out;
}

/// Every path of length <= max_level over the alphabet, root first.
inline std::vector<Path> all_paths(const std::vector<Step>& alphabet, std::size_t max_level) {
  std::vector<Path> out{Path{}};
  std::size_t begin = 0;
  for (std::size_t level = 1; level <= max_level; ++level) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : alphabet) {
        Path p = out[i];
        p.push_back(s);
        out.push_back(std::move(p));
      }
    }
    begin = end;
  }
  return out;
}

/// Depth-first visit of every point of level <= max_level, built by child().
template <class Visitor>
void for_each_point(const std::vector<Step>& alphabet, std::size_t max_level, Visitor&& visit,
                    const Point& from = Point()) {
  visit(from);
  if (from.level() >= max_level) return;
  for (const auto& s : alphabet) for_each_point(alphabet, max_level, visit, from.child(s));
}

}  // namespace qtree::testing
