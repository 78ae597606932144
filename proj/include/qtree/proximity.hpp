#pragma once

#include "qtree/point.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qtree {

/// Shape of a point of P(alpha) relative to alpha: the child step, then
/// `extension_count` further steps along the ray [inf] [0]...
struct RayForm {
  Step base_child_step;
  unsigned extension_count = 0;
};

/// True for suffixes <s> and <s> inf 0^j (j >= 0).
bool is_ray_suffix(std::span<const Step> suffix);

/// beta is proximate to alpha: alpha is a proper prefix of beta and beta lies
/// in the order valuation ring of alpha.
bool is_proximate(const Point& beta, const Point& alpha);
bool is_proximate(const Path& beta, const Path& alpha);
std::optional<RayForm> ray_form(const Point& beta, const Point& alpha);

/// Members of P(alpha) up to an absolute level bound, with first steps drawn
/// from `alphabet`. Sorted.
std::vector<Point> proximate_points(const Point& alpha, std::size_t level_bound, const std::vector<Step>& alphabet);

/// All points gamma is proximate to (at most two). Precondition: gamma is not the root.
std::vector<Point> proximate_ancestors(const Point& gamma);

/// Strict transform through a sequence of chart steps (finite values may be
/// symbolic in t): substitute one step, then divide out the largest power of
/// the new exceptional parameter. Result is monic.
Poly strict_transform_along(const Poly& h, std::span<const ChartStep> steps);
/// Same, also reporting the exceptional multiplicity removed at each step.
Poly strict_transform_along(const Poly& h, std::span<const ChartStep> steps, std::vector<unsigned>& multiplicities);

/// Strict transform of a curve h(x, y) at a point, in the point's parameters.
Poly strict_transform(const Poly& h, const Point& alpha);

/// delta lies in the divisorial ring D_(h): the strict transform passes through
/// delta's origin. Throws std::invalid_argument when h(0,0) != 0 ("divisor
/// misses the tree") or h is not square-free.
bool first_kind_contains(const Poly& h, const Point& delta);

/// beta is contained in ord_alpha.
bool second_kind_contains(const Point& alpha, const Point& beta);

}  // namespace qtree
