#include "qtree/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtree {

namespace {

std::uint32_t total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

bool exps_divide(const Exponents& small, const Exponents& big) {
  for (int i = 0; i < kNumVars; ++i)
    if (small[i] > big[i]) return false;
  return true;
}

Exponents exps_sub(const Exponents& big, const Exponents& small) {
  Exponents r{};
  for (int i = 0; i < kNumVars; ++i) r[i] = big[i] - small[i];
  return r;
}

Exponents exps_add(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (int i = 0; i < kNumVars; ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents exps_min(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (int i = 0; i < kNumVars; ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

// Smallest exponent vector dividing every term (the monomial content).
Exponents monomial_content(const Poly& p) {
  Exponents m = p.terms().front().exps;
  for (const auto& t : p.terms()) m = exps_min(m, t.exps);
  return m;
}

Poly strip_monomial(const Poly& p, const Exponents& m) {
  std::vector<Poly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({exps_sub(t.exps, m), t.coeff});
  return Poly::from_terms(std::move(terms));
}

int highest_slot(const Poly& p) {
  for (int s = kNumVars - 1; s >= 0; --s)
    if (p.depends_on(s)) return s;
  return -1;
}

Poly lc_in(const Poly& p, int slot) { return p.coefficients_in(slot).back(); }

// Pseudo-remainder of f by g with respect to `slot`.
Poly pseudo_remainder(const Poly& f, const Poly& g, int slot) {
  const auto dg = g.degree(slot);
  const Poly lcg = lc_in(g, slot);
  Poly r = f;
  int d = static_cast<int>(f.degree(slot)) - static_cast<int>(dg) + 1;
  Exponents shift{};
  while (!r.is_zero() && r.degree(slot) >= dg) {
    shift[slot] = r.degree(slot) - dg;
    Poly s = lc_in(r, slot).shifted(shift);
    r = lcg * r - s * g;
    --d;
  }
  if (d > 0) r *= lcg.pow(static_cast<unsigned>(d));
  return r;
}

Poly must_divide(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("internal: inexact division in gcd");
  return *std::move(q);
}

Poly primitive_part(const Poly& p, int slot) { return must_divide(p, content_in(p, slot)); }

// Subresultant PRS on two polynomials primitive in `slot`.
Poly subresultant_gcd(Poly f, Poly g, int slot) {
  if (f.degree(slot) < g.degree(slot)) std::swap(f, g);
  Poly sg = 1;
  Poly h = 1;
  while (true) {
    const unsigned d = f.degree(slot) - g.degree(slot);
    Poly r = pseudo_remainder(f, g, slot);
    if (r.is_zero()) return primitive_part(g, slot);
    if (r.degree(slot) == 0) return 1;
    f = std::move(g);
    g = must_divide(r, sg * h.pow(d));
    sg = lc_in(f, slot);
    if (d == 1) {
      h = sg;
    } else if (d > 1) {
      h = must_divide(sg.pow(d), h.pow(d - 1));
    }
  }
}

// Dense univariate gcd degree over Q; coefficients low to high.
std::size_t univariate_gcd_degree(std::vector<Rational> f, std::vector<Rational> g) {
  auto trim = [](std::vector<Rational>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(f);
  trim(g);
  if (f.size() < g.size()) std::swap(f, g);
  while (!g.empty()) {
    const Rational inv = 1 / g.back();
    for (auto& c : g) c *= inv;
    while (f.size() >= g.size()) {
      const Rational lead = f.back();
      const std::size_t off = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) f[off + i] -= lead * g[i];
      f.pop_back();
      trim(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.empty() ? 0 : f.size() - 1;
}

// Specializes every slot except `slot` at small integers where both leading
// coefficients survive; a constant univariate gcd there proves that the
// primitive parts are coprime (a common factor keeps its degree in `slot`).
bool coprime_by_evaluation(const Poly& f, const Poly& g, int slot) {
  static constexpr int kTrials = 3;
  for (int trial = 0; trial < kTrials; ++trial) {
    Poly fs = f;
    Poly gs = g;
    for (int s = 0; s < kNumVars; ++s) {
      if (s == slot) continue;
      const Rational value(2 + 3 * trial + s);
      fs = fs.evaluate(s, value);
      gs = gs.evaluate(s, value);
    }
    if (fs.degree(slot) != f.degree(slot) || gs.degree(slot) != g.degree(slot)) continue;
    return univariate_gcd_degree(fs.univariate_coeffs(slot), gs.univariate_coeffs(slot)) == 0;
  }
  return false;
}

Poly gcd_nonzero(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return 1;
  const Exponents ma = monomial_content(a);
  const Exponents mb = monomial_content(b);
  const Exponents mono = exps_min(ma, mb);
  Poly a1 = strip_monomial(a, ma);
  Poly b1 = strip_monomial(b, mb);
  Poly core = 1;
  if (!a1.is_constant() && !b1.is_constant()) {
    const int slot = std::max(highest_slot(a1), highest_slot(b1));
    if (!a1.depends_on(slot)) {
      core = gcd_nonzero(a1, content_in(b1, slot));
    } else if (!b1.depends_on(slot)) {
      core = gcd_nonzero(content_in(a1, slot), b1);
    } else {
      const Poly ca = content_in(a1, slot);
      const Poly cb = content_in(b1, slot);
      const Poly c = gcd_nonzero(ca, cb);
      const Poly pa = must_divide(a1, ca);
      const Poly pb = must_divide(b1, cb);
      core = coprime_by_evaluation(pa, pb, slot) ? c : c * subresultant_gcd(pa, pb, slot);
    }
  }
  return monic(core.shifted(mono));
}

}  // namespace

const VarNames& default_names() {
  static const VarNames names{"x", "y", "a", "t"};
  return names;
}

bool grlex_less(const Exponents& lhs, const Exponents& rhs) {
  const auto tl = total(lhs);
  const auto tr = total(rhs);
  if (tl != tr) return tl < tr;
  return lhs < rhs;
}

Poly::Poly(const Rational& constant) {
  if (constant != 0) terms_.push_back({Exponents{}, constant});
}

Poly Poly::variable(int slot) {
  Exponents e{};
  e[slot] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& exps, const Rational& coeff) {
  Poly p;
  if (coeff != 0) p.terms_.push_back({exps, coeff});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_less(b.exps, a.exps); });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total(terms_[0].exps) == 0); }

Rational Poly::constant_coeff() const {
  if (!terms_.empty() && total(terms_.back().exps) == 0) return terms_.back().coeff;
  return 0;
}

std::uint32_t Poly::degree(int slot) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[slot]);
  return d;
}

std::uint32_t Poly::total_degree() const { return terms_.empty() ? 0 : total(terms_.front().exps); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto i = terms_.begin();
  auto j = rhs.terms_.begin();
  while (i != terms_.end() || j != rhs.terms_.end()) {
    if (j == rhs.terms_.end() || (i != terms_.end() && grlex_less(j->exps, i->exps))) {
      merged.push_back(std::move(*i++));
    } else if (i == terms_.end() || grlex_less(i->exps, j->exps)) {
      merged.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (c != 0) merged.push_back({i->exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (rhs.is_constant()) return Poly(lhs) *= rhs.terms_.front().coeff;
  if (lhs.is_constant()) return Poly(rhs) *= lhs.terms_.front().coeff;
  std::map<Exponents, Rational> acc;
  for (const auto& a : lhs.terms_)
    for (const auto& b : rhs.terms_) acc[exps_add(a.exps, b.exps)] += a.coeff * b.coeff;
  std::vector<Poly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) terms.push_back({e, std::move(c)});
  return Poly::from_terms(std::move(terms));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= scalar;
  }
  return *this;
}

bool operator==(const Poly& lhs, const Poly& rhs) {
  if (lhs.terms_.size() != rhs.terms_.size()) return false;
  for (std::size_t i = 0; i < lhs.terms_.size(); ++i)
    if (lhs.terms_[i].exps != rhs.terms_[i].exps || lhs.terms_[i].coeff != rhs.terms_[i].coeff) return false;
  return true;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = 1;
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::vector<Poly> Poly::coefficients_in(int slot) const {
  std::vector<std::vector<Term>> buckets(degree(slot) + 1);
  for (const auto& t : terms_) {
    Term u = t;
    u.exps[slot] = 0;
    buckets[t.exps[slot]].push_back(std::move(u));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(int slot, const std::vector<Poly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms_) {
      Term u = t;
      u.exps[slot] += static_cast<std::uint32_t>(k);
      terms.push_back(std::move(u));
    }
  }
  return from_terms(std::move(terms));
}

Poly Poly::evaluate(int slot, const Rational& value) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term u = t;
    if (t.exps[slot] > 0) {
      Rational f;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), value.get_num_mpz_t(), t.exps[slot]);
      mpz_pow_ui(den.get_mpz_t(), value.get_den_mpz_t(), t.exps[slot]);
      f = Rational(num, den);
      f.canonicalize();
      u.coeff *= f;
      u.exps[slot] = 0;
    }
    terms.push_back(std::move(u));
  }
  return from_terms(std::move(terms));
}

Poly Poly::compose(const std::array<std::optional<Poly>, kNumVars>& images) const {
  std::array<std::vector<Poly>, kNumVars> powers;
  auto power = [&](int slot, std::uint32_t e) -> const Poly& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * *images[slot]);
    return cache[e];
  };
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Exponents kept{};
    Poly factor = Poly::monomial(Exponents{}, t.coeff);
    for (int s = 0; s < kNumVars; ++s) {
      if (t.exps[s] == 0) continue;
      if (images[s]) {
        factor = factor * power(s, t.exps[s]);
      } else {
        kept[s] = t.exps[s];
      }
    }
    for (const auto& u : factor.terms_) out.push_back({exps_add(u.exps, kept), u.coeff});
  }
  return from_terms(std::move(out));
}

Poly Poly::shifted(const Exponents& exps) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.exps = exps_add(t.exps, exps);
  return r;
}

std::vector<Rational> Poly::univariate_coeffs(int slot) const {
  std::vector<Rational> out(degree(slot) + 1);
  for (const auto& t : terms_) {
    for (int s = 0; s < kNumVars; ++s)
      if (s != slot && t.exps[s] != 0) throw std::invalid_argument("univariate_coeffs: polynomial is not univariate");
    out[t.exps[slot]] = t.coeff;
  }
  return out;
}

std::string Poly::to_string(const VarNames& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (int s = 0; s < kNumVars; ++s) {
      if (t.exps[s] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[s];
      if (t.exps[s] > 1) mono += "^" + std::to_string(t.exps[s]);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

std::optional<Poly> divide_exact(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (dividend.is_zero()) return Poly{};
  if (divisor.is_constant()) return dividend * Rational(1 / divisor.leading_coeff());
  const auto& lead = divisor.leading();
  std::vector<Poly::Term> quotient;
  Poly rem = dividend;
  while (!rem.is_zero()) {
    const auto& r = rem.leading();
    if (!exps_divide(lead.exps, r.exps)) return std::nullopt;
    Poly::Term q{exps_sub(r.exps, lead.exps), r.coeff / lead.coeff};
    rem -= divisor.shifted(q.exps) * q.coeff;
    quotient.push_back(std::move(q));
  }
  return Poly::from_terms(std::move(quotient));
}

bool divides(const Poly& divisor, const Poly& dividend) { return divide_exact(dividend, divisor).has_value(); }

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coeff());
}

Poly gcd(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() && rhs.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  if (lhs.is_zero()) return monic(rhs);
  if (rhs.is_zero()) return monic(lhs);
  return gcd_nonzero(lhs, rhs);
}

std::uint32_t order_at_origin(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("order of zero undefined");
  std::uint32_t best = UINT32_MAX;
  for (const auto& t : p.terms()) best = std::min(best, t.exps[kVarP] + t.exps[kVarQ]);
  return best;
}

Poly lowest_form(const Poly& p) {
  const auto m = order_at_origin(p);
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms())
    if (t.exps[kVarP] + t.exps[kVarQ] == m) terms.push_back(t);
  return Poly::from_terms(std::move(terms));
}

unsigned factor_multiplicity(const Poly& p, const Poly& h) {
  if (p.is_zero()) throw std::domain_error("factor_multiplicity of zero");
  if (h.is_constant()) throw std::invalid_argument("factor_multiplicity needs a non-constant factor");
  unsigned m = 0;
  Poly cur = p;
  while (auto q = divide_exact(cur, h)) {
    cur = *std::move(q);
    ++m;
  }
  return m;
}

Poly value_at_origin(const Poly& p) {
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms())
    if (t.exps[kVarP] == 0 && t.exps[kVarQ] == 0) terms.push_back(t);
  return Poly::from_terms(std::move(terms));
}

Poly content_in(const Poly& p, int slot) {
  if (p.is_zero()) return {};
  Poly g;
  for (const auto& c : p.coefficients_in(slot)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? monic(c) : gcd(g, c);
    if (g.is_constant()) return 1;
  }
  return g;
}

Poly derivative(const Poly& p, int slot) {
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exps[slot] == 0) continue;
    Poly::Term u = t;
    u.coeff *= t.exps[slot];
    u.exps[slot] -= 1;
    terms.push_back(std::move(u));
  }
  return Poly::from_terms(std::move(terms));
}

Poly squarefree_part(const Poly& p) {
  if (p.is_constant()) return p.is_zero() ? p : Poly(1);
  // Characteristic zero: gcd(p, all partials) is the product of f^(e-1) over factors f^e.
  Poly g = p;
  for (int s = 0; s < kNumVars; ++s) {
    if (!p.depends_on(s)) continue;
    g = gcd(g, derivative(p, s));
    if (g.is_constant()) break;
  }
  Poly core = must_divide(p, g);
  return monic(core);
}

Poly resultant(const Poly& lhs, const Poly& rhs, int slot) {
  const auto m = lhs.degree(slot);
  const auto n = rhs.degree(slot);
  if (lhs.is_zero() || rhs.is_zero()) return {};
  if (m == 0) return lhs.pow(n);
  if (n == 0) return rhs.pow(m);
  const auto a = lhs.coefficients_in(slot);
  const auto b = rhs.coefficients_in(slot);
  const std::size_t size = m + n;
  std::vector<std::vector<Poly>> mat(size, std::vector<Poly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) mat[r][r + (m - k)] = a[k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) mat[n + r][r + (n - k)] = b[k];
  // Bareiss fraction-free elimination.
  Poly prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return {};
      std::swap(mat[k], mat[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j)
        mat[i][j] = must_divide(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev);
      mat[i][k] = Poly{};
    }
    prev = mat[k][k];
  }
  Poly det = mat[size - 1][size - 1];
  return sign < 0 ? -det : det;
}

std::vector<Rational> rational_roots(const Poly& p, int slot) {
  if (p.is_zero()) return {};
  return rational_roots(squarefree_part(p).univariate_coeffs(slot));
}

}  // namespace qtree
