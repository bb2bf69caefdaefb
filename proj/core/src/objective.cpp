#include "sigcond/objective.hpp"

#include <algorithm>
#include <cmath>

#include "sigcond/errors.hpp"

namespace sigcond {

double conductance_discrete(const Graph& g, const NodeSet& c) {
  std::int64_t volume = set_volume(g, c);
  if (volume <= 0)
    throw undefined_objective_error("community with zero volume");
  std::int64_t internal = edge_weight_sets(g, c, c);
  return 1.0 - static_cast<double>(internal) / static_cast<double>(volume);
}

double conductance_alt(const Graph& g, const NodeSet& c) {
  if (c.empty()) throw undefined_objective_error("empty community");
  std::int64_t volume = set_volume(g, c);
  std::int64_t cut = volume - edge_weight_sets(g, c, c);
  std::int64_t complement_volume = g.total_volume() - volume;
  std::int64_t denom = std::min(volume, complement_volume);
  if (denom <= 0)
    throw undefined_objective_error("conductance_alt undefined for C = V or zero volume");
  return static_cast<double>(cut) / static_cast<double>(denom);
}

double density(const Graph& g, const NodeSet& c) {
  if (c.empty()) throw validation_error("density of empty community");
  std::int64_t internal = edge_weight_sets(g, c, c);
  double size = static_cast<double>(c.size());
  return static_cast<double>(internal) / (size * size);
}

ObjectiveContext::ObjectiveContext(MembershipVector c, double sigma)
    : c_(std::move(c)), sigma_(sigma) {
  recompute();
}

void ObjectiveContext::set(int local, double v) {
  double old = c_.value(local);
  if (v == old) return;
  const LocalNeighborhood& domain = c_.domain();
  double d = static_cast<double>(domain.graph().degree(domain.global_id(local)));
  // a_ii = 0, so the row sum against the current vector is unaffected by c_i.
  double a_ic = weight_to_community(local);
  double delta = v - old;
  a_cc_ += 2.0 * delta * a_ic;
  a_cv_ += delta * d;
  sum_c2d_ += (v * v - old * old) * d;
  c_.set(local, v);
}

double ObjectiveContext::value() const {
  if (a_cv_ <= 0.0)
    throw undefined_objective_error("sigma-conductance undefined at zero weighted volume");
  return 1.0 - a_cc_ / a_cv_ - sigma_ * (sum_c2d_ / a_cv_);
}

double ObjectiveContext::weight_to_community(int local) const {
  const LocalNeighborhood& domain = c_.domain();
  double total = 0.0;
  for (int j : domain.graph().neighbors(domain.global_id(local))) {
    int local_j = domain.local_id(j);
    if (local_j >= 0) total += c_.value(local_j);
  }
  return total;
}

double ObjectiveContext::gradient_at(int local) const {
  if (a_cv_ <= 0.0)
    throw undefined_objective_error("gradient undefined at zero weighted volume");
  const LocalNeighborhood& domain = c_.domain();
  double d = static_cast<double>(domain.graph().degree(domain.global_id(local)));
  double a_ic = weight_to_community(local);
  double vol2 = a_cv_ * a_cv_;
  return d * a_cc_ / vol2 - 2.0 * a_ic / a_cv_ +
         sigma_ * (d * sum_c2d_ / vol2 - 2.0 * c_.value(local) * d / a_cv_);
}

std::vector<double> ObjectiveContext::gradient(std::span<const int> touched) const {
  std::vector<double> out;
  out.reserve(touched.size());
  for (int local : touched) out.push_back(gradient_at(local));
  return out;
}

std::vector<int> ObjectiveContext::touched_set() const {
  const LocalNeighborhood& domain = c_.domain();
  const Graph& g = domain.graph();
  std::vector<char> mark(c_.size(), 0);
  std::vector<int> out;
  for (int i = 0; i < c_.size(); ++i) {
    if (c_.value(i) <= 0.0) continue;
    if (!mark[i]) {
      mark[i] = 1;
      out.push_back(i);
    }
    for (int j : g.neighbors(domain.global_id(i))) {
      int local_j = domain.local_id(j);
      if (local_j >= 0 && !mark[local_j]) {
        mark[local_j] = 1;
        out.push_back(local_j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ObjectiveContext::recompute() {
  const LocalNeighborhood& domain = c_.domain();
  const Graph& g = domain.graph();
  double a_cc = 0.0, a_cv = 0.0, sum_c2d = 0.0;
  for (int i = 0; i < c_.size(); ++i) {
    double ci = c_.value(i);
    if (ci == 0.0) continue;
    double d = static_cast<double>(g.degree(domain.global_id(i)));
    a_cv += ci * d;
    sum_c2d += ci * ci * d;
    double row = 0.0;
    for (int j : g.neighbors(domain.global_id(i))) {
      int local_j = domain.local_id(j);
      if (local_j >= 0) row += c_.value(local_j);
    }
    a_cc += ci * row;
  }
  a_cc_ = a_cc;
  a_cv_ = a_cv;
  sum_c2d_ = sum_c2d;
}

double ObjectiveContext::audit_drift() const {
  ObjectiveContext fresh(c_, sigma_);
  auto rel = [](double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) / scale;
  };
  return std::max({rel(a_cc_, fresh.a_cc_), rel(a_cv_, fresh.a_cv_),
                   rel(sum_c2d_, fresh.sum_c2d_)});
}

double kkt_residual(const ObjectiveContext& ctx) {
  const MembershipVector& c = ctx.membership();
  double worst = 0.0;
  for (int i : ctx.touched_set()) {
    if (c.is_seed(i)) continue;  // both bounds active
    double g = ctx.gradient_at(i);
    double v = c.value(i);
    double violation;
    if (v == 1.0) {
      violation = std::max(0.0, g);
    } else if (v == 0.0) {
      violation = std::max(0.0, -g);
    } else {
      violation = std::abs(g);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

}  // namespace sigcond
