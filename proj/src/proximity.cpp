#include "qtree/proximity.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtree {

namespace {

std::vector<ChartStep> chart_steps(const Path& path) {
  std::vector<ChartStep> out;
  out.reserve(path.size());
  for (const auto& s : path) out.push_back(ChartStep::from(s));
  return out;
}

void check_divisor(const Poly& h) {
  if (h.is_constant()) throw std::invalid_argument("curve equation must be non-constant");
  if (h.depends_on(kVarA) || h.depends_on(kVarT)) throw std::invalid_argument("curve equation must be free of parameters");
  if (h.constant_coeff() != 0) throw std::invalid_argument("divisor misses the tree");
  Poly g = h;
  for (int s : {kVarP, kVarQ}) g = gcd(g, derivative(h, s));
  if (!g.is_constant()) throw std::invalid_argument("curve equation must be square-free");
}

}  // namespace

bool is_ray_suffix(std::span<const Step> suffix) {
  if (suffix.empty()) return false;
  if (suffix.size() == 1) return true;
  if (!suffix[1].is_infinite()) return false;
  return std::all_of(suffix.begin() + 2, suffix.end(), [](const Step& s) { return s == Step(Rational(0)); });
}

std::optional<RayForm> ray_form(const Point& beta, const Point& alpha) {
  if (beta.level() <= alpha.level() || !is_prefix(alpha.path(), beta.path())) return std::nullopt;
  const std::span<const Step> suffix(beta.path().begin() + static_cast<std::ptrdiff_t>(alpha.level()), beta.path().end());
  if (!is_ray_suffix(suffix)) return std::nullopt;
  return RayForm{suffix.front(), static_cast<unsigned>(suffix.size() - 1)};
}

bool is_proximate(const Point& beta, const Point& alpha) { return is_proximate(beta.path(), alpha.path()); }

bool is_proximate(const Path& beta, const Path& alpha) {
  if (beta.size() <= alpha.size() || !is_prefix(alpha, beta)) return false;
  return is_ray_suffix(std::span<const Step>(beta.begin() + static_cast<std::ptrdiff_t>(alpha.size()), beta.end()));
}

std::vector<Point> proximate_points(const Point& alpha, std::size_t level_bound, const std::vector<Step>& alphabet) {
  std::vector<Point> out;
  if (level_bound <= alpha.level()) return out;
  std::vector<Step> steps = alphabet;
  if (std::find(steps.begin(), steps.end(), Step::infinity()) == steps.end()) steps.push_back(Step::infinity());
  for (const auto& s : steps) {
    Point cur = alpha.child(s);
    out.push_back(cur);
    if (cur.level() < level_bound) {
      cur = cur.child(Step::infinity());
      out.push_back(cur);
    }
    while (cur.level() < level_bound) {
      cur = cur.child(Step(Rational(0)));
      out.push_back(cur);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> proximate_ancestors(const Point& gamma) {
  if (gamma.is_root()) throw std::invalid_argument("the root has no proximate ancestors");
  std::vector<Point> out;
  const Path& path = gamma.path();
  for (std::size_t level = path.size(); level-- > 0;) {
    const std::span<const Step> suffix(path.begin() + static_cast<std::ptrdiff_t>(level), path.end());
    if (is_ray_suffix(suffix)) out.push_back(gamma.prefix(level));
  }
  return out;
}

Poly strict_transform_along(const Poly& h, std::span<const ChartStep> steps, std::vector<unsigned>& multiplicities) {
  Poly cur = h;
  multiplicities.clear();
  for (const auto& step : steps) {
    Poly next = apply_step(cur, step);
    std::uint32_t m = UINT32_MAX;
    for (const auto& t : next.terms()) m = std::min(m, t.exps[kVarP]);
    if (next.is_zero()) m = 0;
    std::vector<Poly::Term> terms;
    for (const auto& t : next.terms()) {
      Poly::Term u = t;
      u.exps[kVarP] -= m;
      terms.push_back(std::move(u));
    }
    cur = Poly::from_terms(std::move(terms));
    multiplicities.push_back(m);
  }
  return monic(cur);
}

Poly strict_transform_along(const Poly& h, std::span<const ChartStep> steps) {
  std::vector<unsigned> ignored;
  return strict_transform_along(h, steps, ignored);
}

Poly strict_transform(const Poly& h, const Point& alpha) {
  const auto steps = chart_steps(alpha.path());
  return strict_transform_along(h, steps);
}

bool first_kind_contains(const Poly& h, const Point& delta) {
  check_divisor(h);
  return strict_transform(h, delta).constant_coeff() == 0;
}

bool second_kind_contains(const Point& alpha, const Point& beta) {
  const Relation r = compare(beta, alpha);
  return r == Relation::equal || r == Relation::below || is_proximate(beta, alpha);
}

}  // namespace qtree
