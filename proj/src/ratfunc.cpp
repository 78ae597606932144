#include "qtree/ratfunc.hpp"

#include <cctype>

namespace qtree {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("zero divisor");
  if (num.is_zero()) {
    den_ = 1;
    return;
  }
  Poly g = gcd(num, den);
  if (!g.is_constant()) {
    num = *divide_exact(num, g);
    den = *divide_exact(den, g);
  }
  const Rational scale = 1 / den.leading_coeff();
  num_ = num * scale;
  den_ = den * scale;
}

RatFunc RatFunc::operator-() const { return {-num_, den_, Reduced{}}; }

RatFunc operator+(const RatFunc& lhs, const RatFunc& rhs) {
  if (lhs.den_ == rhs.den_) return {lhs.num_ + rhs.num_, lhs.den_};
  return {lhs.num_ * rhs.den_ + rhs.num_ * lhs.den_, lhs.den_ * rhs.den_};
}

RatFunc operator-(const RatFunc& lhs, const RatFunc& rhs) { return lhs + (-rhs); }

RatFunc operator*(const RatFunc& lhs, const RatFunc& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (lhs.is_polynomial() && rhs.is_polynomial()) return {lhs.num_ * rhs.num_};
  // Both factors are reduced, so cancelling crosswise leaves a reduced result.
  const Poly g1 = gcd(lhs.num_, rhs.den_);
  const Poly g2 = gcd(rhs.num_, lhs.den_);
  Poly num = *divide_exact(lhs.num_, g1) * *divide_exact(rhs.num_, g2);
  Poly den = *divide_exact(lhs.den_, g2) * *divide_exact(rhs.den_, g1);
  const Rational scale = 1 / den.leading_coeff();
  return RatFunc(num * scale, den * scale, RatFunc::Reduced{});
}

RatFunc operator/(const RatFunc& lhs, const RatFunc& rhs) { return lhs * rhs.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("zero divisor");
  const Rational scale = 1 / num_.leading_coeff();
  return {den_ * scale, num_ * scale, Reduced{}};
}

RatFunc RatFunc::pow(unsigned exponent) const { return {num_.pow(exponent), den_.pow(exponent), Reduced{}}; }

RatFunc RatFunc::evaluate(int slot, const Rational& value) const {
  return {num_.evaluate(slot, value), den_.evaluate(slot, value)};
}

RatFunc RatFunc::compose(const std::array<std::optional<RatFunc>, kNumVars>& images) const {
  // Homogenize per slot with a common degree so the image denominators cancel.
  std::array<std::optional<Poly>, kNumVars> num_images;
  std::vector<std::pair<int, std::uint32_t>> den_slots;
  bool all_polynomial = true;
  for (int s = 0; s < kNumVars; ++s) {
    if (!images[s]) continue;
    num_images[s] = images[s]->num();
    if (!images[s]->is_polynomial()) all_polynomial = false;
  }
  if (all_polynomial) {
    for (int s = 0; s < kNumVars; ++s)
      if (images[s]) num_images[s] = images[s]->num() * Rational(1 / images[s]->den().leading_coeff());
    return {num_.compose(num_images), den_.compose(num_images)};
  }
  auto homogenized = [&](const Poly& p, const std::array<std::uint32_t, kNumVars>& top) {
    Poly result;
    for (const auto& t : p.terms()) {
      Poly term = Poly::monomial(Exponents{}, t.coeff);
      Exponents kept{};
      for (int s = 0; s < kNumVars; ++s) {
        if (!images[s]) {
          kept[s] = t.exps[s];
          continue;
        }
        term *= images[s]->num().pow(t.exps[s]) * images[s]->den().pow(top[s] - t.exps[s]);
      }
      result += term.shifted(kept);
    }
    return result;
  };
  std::array<std::uint32_t, kNumVars> top{};
  for (int s = 0; s < kNumVars; ++s)
    if (images[s]) top[s] = std::max(num_.degree(s), den_.degree(s));
  return {homogenized(num_, top), homogenized(den_, top)};
}

std::string RatFunc::to_string(const VarNames& names) const {
  const std::string n = num_.to_string(names);
  if (den_ == Poly(1)) return n;
  const std::string d = den_.to_string(names);
  const bool wrap_num = num_.size() > 1;
  const bool wrap_den = den_.size() > 1 || d.find('*') != std::string::npos;
  return (wrap_num ? "(" + n + ")" : n) + "/" + (wrap_den ? "(" + d + ")" : d);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarNames& names) : text_(text), names_(names) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("expected operator or end of input", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RatFunc rhs = unary();
        if (rhs.is_zero()) throw ParseError("division by zero", at);
        acc = acc / rhs;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected non-negative integer exponent", start);
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  RatFunc primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected number, symbol or '('", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const auto ident = text_.substr(start, pos_ - start);
      for (int s = 0; s < kNumVars; ++s)
        if (names_[s] == ident) return RatFunc(Poly::variable(s));
      throw ParseError("unknown symbol '" + std::string(ident) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const VarNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(std::string_view text, const VarNames& names) { return Parser(text, names).parse(); }

Poly parse_poly(std::string_view text, const VarNames& names) {
  RatFunc r = parse_expression(text, names);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial", 0);
  return r.num();
}

}  // namespace qtree
