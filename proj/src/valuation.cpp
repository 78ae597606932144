#include "qtree/valuation.hpp"

#include "qtree/proximity.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace qtree {

namespace {

// Candidate continuation steps of a curve whose local equation is `local`
// (vanishing at the origin): directions of the tangent cone.
std::vector<Step> tangent_steps(const Poly& local, std::string& diagnostic) {
  const Poly cone = lowest_form(local);
  const Poly on_line = cone.evaluate(kVarP, 1);
  std::vector<Step> steps;
  if (!on_line.is_constant()) {
    const Poly sq = squarefree_part(on_line);
    for (const auto& r : rational_roots(sq, kVarQ)) steps.emplace_back(r);
    if (steps.size() < sq.degree(kVarQ)) diagnostic = "tangent cone " + cone.to_string() + " has irrational directions";
  }
  // cone(0, 1) = 0 exactly when the degree drops on the affine line.
  if (on_line.degree(kVarQ) < cone.total_degree()) steps.push_back(Step::infinity());
  return steps;
}

Step branch_step_local(const Poly& local, const Point& alpha) {
  if (local.constant_coeff() != 0)
    throw ComputationError("branch_step: curve does not pass through " + alpha.to_string());
  std::string diagnostic;
  const auto steps = tangent_steps(local, diagnostic);
  if (!diagnostic.empty() || steps.size() != 1) {
    std::string msg = "branch_step at " + alpha.to_string() + ": ";
    if (steps.empty()) {
      msg += "no rational tangent direction";
    } else if (steps.size() > 1) {
      msg += "reducible tangent cone (" + std::to_string(steps.size()) + " directions)";
    } else {
      msg += diagnostic;
    }
    throw ComputationError(msg + " for local equation " + local.to_string(alpha.names()));
  }
  return steps.front();
}

Path canonical_period(const Path& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) return Path(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return period;
}

}  // namespace

struct ValuationDescriptor::BranchCache {
  std::mutex mutex;
  Path steps;
  Point current;
  Poly local;  // strict transform at `current`
};

MonomialPath monomial_path(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw std::invalid_argument("monomial weights must be positive");
  MonomialPath out;
  while (a != b) {
    if (a < b) {
      out.path.emplace_back(Rational(0));
      b -= a;
    } else {
      out.path.push_back(Step::infinity());
      const unsigned na = b;
      b = a - b;
      a = na;
    }
  }
  out.terminal = Point::from_path(out.path);
  return out;
}

Step branch_step(const Poly& h, const Point& alpha) {
  return branch_step_local(strict_transform(h, alpha), alpha);
}

ValuationDescriptor ValuationDescriptor::first_kind(Poly h) {
  if (h.is_constant() || h.constant_coeff() != 0) throw std::invalid_argument("first kind needs h(0,0) = 0, h non-constant");
  ValuationDescriptor v;
  v.kind_ = Kind::first_kind;
  v.curve_ = monic(h);
  return v;
}

ValuationDescriptor ValuationDescriptor::second_kind(Point center) {
  ValuationDescriptor v;
  v.kind_ = Kind::second_kind;
  v.center_ = std::move(center);
  return v;
}

ValuationDescriptor ValuationDescriptor::eventually_periodic(Path prefix, Path period) {
  if (period.empty()) throw std::invalid_argument("period must be nonempty");
  period = canonical_period(period);
  while (!prefix.empty() && prefix.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    prefix.pop_back();
  }
  ValuationDescriptor v;
  v.kind_ = Kind::eventually_periodic;
  v.prefix_ = std::move(prefix);
  v.period_ = std::move(period);
  return v;
}

ValuationDescriptor ValuationDescriptor::curve_branch(Poly h) {
  if (h.is_constant() || h.constant_coeff() != 0) throw std::invalid_argument("curve branch needs h(0,0) = 0, h non-constant");
  ValuationDescriptor v;
  v.kind_ = Kind::curve_branch;
  v.curve_ = monic(h);
  v.branch_ = std::make_shared<BranchCache>();
  v.branch_->local = v.curve_;
  return v;
}

ValuationDescriptor ValuationDescriptor::monomial(unsigned a, unsigned b) {
  return second_kind(monomial_path(a, b).terminal);
}

const Point& ValuationDescriptor::center() const {
  if (kind_ != Kind::second_kind) throw std::logic_error("center() of a descriptor that is not second kind");
  return center_;
}

const Poly& ValuationDescriptor::curve() const {
  if (kind_ != Kind::first_kind && kind_ != Kind::curve_branch) throw std::logic_error("curve() of a descriptor without a curve");
  return curve_;
}

Step ValuationDescriptor::step_at(std::size_t level) const {
  switch (kind_) {
    case Kind::eventually_periodic:
      if (level < prefix_.size()) return prefix_[level];
      return period_[(level - prefix_.size()) % period_.size()];
    case Kind::curve_branch: {
      std::lock_guard lock(branch_->mutex);
      while (branch_->steps.size() <= level) {
        const Step s = branch_step_local(branch_->local, branch_->current);
        branch_->local = strict_transform_along(branch_->local, std::vector<ChartStep>{ChartStep::from(s)});
        branch_->current = branch_->current.child(s);
        branch_->steps.push_back(s);
      }
      return branch_->steps[level];
    }
    default:
      throw std::logic_error("step_at() needs a minimal valuation descriptor");
  }
}

Path ValuationDescriptor::path_prefix(std::size_t length) const {
  Path out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(step_at(i));
  return out;
}

std::string ValuationDescriptor::to_string() const {
  switch (kind_) {
    case Kind::first_kind: return "first(" + curve_.to_string() + ")";
    case Kind::second_kind: return "second(" + center_.to_string() + ")";
    case Kind::eventually_periodic: return "minimal(" + qtree::to_string(prefix_) + ", " + qtree::to_string(period_) + ")";
    case Kind::curve_branch: return "curve(" + curve_.to_string() + ")";
  }
  return "?";
}

bool operator==(const ValuationDescriptor& lhs, const ValuationDescriptor& rhs) {
  if (lhs.kind_ != rhs.kind_) return false;
  switch (lhs.kind_) {
    case ValuationDescriptor::Kind::first_kind:
    case ValuationDescriptor::Kind::curve_branch: return lhs.curve_ == rhs.curve_;
    case ValuationDescriptor::Kind::second_kind: return lhs.center_ == rhs.center_;
    case ValuationDescriptor::Kind::eventually_periodic: return lhs.prefix_ == rhs.prefix_ && lhs.period_ == rhs.period_;
  }
  return false;
}

bool val_contains_point(const ValuationDescriptor& v, const Point& beta) {
  switch (v.kind()) {
    case ValuationDescriptor::Kind::second_kind: return second_kind_contains(v.center(), beta);
    case ValuationDescriptor::Kind::first_kind: return first_kind_contains(v.curve(), beta);
    default: return v.path_prefix(beta.level()) == beta.path();
  }
}

bool val_dominates_point(const ValuationDescriptor& v, const Point& beta) {
  switch (v.kind()) {
    case ValuationDescriptor::Kind::first_kind:
      throw std::invalid_argument("does not dominate tree points");
    case ValuationDescriptor::Kind::second_kind: return is_prefix(beta.path(), v.center().path());
    default: return v.path_prefix(beta.level()) == beta.path();
  }
}

}  // namespace qtree
