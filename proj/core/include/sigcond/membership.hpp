#pragma once

#include <vector>

#include "sigcond/graph.hpp"

namespace sigcond {

/// Real-valued community membership c over a local neighborhood, with
/// per-node lower bounds s_i ∈ {0,1} pinning the seeds. Invariant:
/// s_i <= c_i <= 1 for every coordinate.
class MembershipVector {
 public:
  MembershipVector(const LocalNeighborhood& domain, const NodeSet& seeds_global);

  const LocalNeighborhood& domain() const { return *domain_; }
  int size() const { return static_cast<int>(values_.size()); }

  double value(int local) const { return values_[local]; }
  double floor(int local) const { return seed_[local] ? 1.0 : 0.0; }
  bool is_seed(int local) const { return seed_[local] != 0; }

  /// Sets a coordinate; the value must already respect [floor, 1].
  void set(int local, double v);

  const std::vector<double>& values() const { return values_; }

  /// Locals with c_i > 0, ascending.
  std::vector<int> support() const;

  /// Global ids with c_i >= tau, as a NodeSet.
  NodeSet thresholded(double tau) const;

 private:
  const LocalNeighborhood* domain_;
  std::vector<double> values_;
  std::vector<char> seed_;
};

/// Componentwise clamp to [s_i, 1]; idempotent.
void project(MembershipVector& c);
double clamp_to_box(double v, double floor_value);

/// a_xy = x^T A y = Σ_i Σ_j x_i a_ij y_j for two membership vectors over
/// the same neighborhood. Indicator inputs reproduce edge_weight_sets.
double edge_weight_membership(const MembershipVector& x, const MembershipVector& y);

}  // namespace sigcond
