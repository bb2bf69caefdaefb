// The conductance family: discrete phi, the min-volume alternative,
// the continuous sigma-regularized relaxation with its gradient, the
// density score used for automatic sigma selection, and the KKT residual
// of a box-constrained membership vector.
#pragma once

#include <span>
#include <vector>

#include "sigcond/graph.hpp"
#include "sigcond/membership.hpp"

namespace sigcond {

/// phi(C) = a_CC̄ / a_CV = 1 - a_CC / a_CV. Throws undefined_objective_error
/// when the community has zero volume.
double conductance_discrete(const Graph& g, const NodeSet& c);

/// phi_alt(C) = a_CC̄ / min(a_CV, a_C̄V). Undefined for C = ∅ and C = V.
double conductance_alt(const Graph& g, const NodeSet& c);

/// a_CC / |C|^2. Nonempty C required; a singleton without self-loops is 0.
double density(const Graph& g, const NodeSet& c);

/// Single-owner mutable workspace for evaluating the relaxed objective
///   phi_sigma(c) = 1 - a_cc/a_cV - sigma * (Σ_i c_i^2 d_i)/a_cV
/// over one membership vector. Caches a_cc, a_cV and Σ c_i^2 d_i and
/// updates them per coordinate change, which keeps the per-iteration cost
/// of the optimizers proportional to the one-step neighborhood volume.
class ObjectiveContext {
 public:
  ObjectiveContext(MembershipVector c, double sigma);

  const MembershipVector& membership() const { return c_; }
  const LocalNeighborhood& domain() const { return c_.domain(); }
  double sigma() const { return sigma_; }

  /// Writes one coordinate and updates the cached sums incrementally.
  void set(int local, double v);

  /// phi_sigma at the current vector. Throws undefined_objective_error on
  /// zero weighted volume.
  double value() const;

  double weighted_volume() const { return a_cv_; }
  double internal_weight() const { return a_cc_; }

  /// Gradient coordinate
  ///   d_i a_cc / a_cV^2 - 2 a_ic / a_cV
  ///     + sigma (d_i Σ_j c_j^2 d_j / a_cV^2 - 2 c_i d_i / a_cV).
  double gradient_at(int local) const;

  /// Gradient values for the requested locals (same order).
  std::vector<double> gradient(std::span<const int> touched) const;

  /// support(c) ∪ neighbors(support(c)) within the neighborhood; the only
  /// coordinates whose gradient can be negative or that can move.
  std::vector<int> touched_set() const;

  /// Σ_j a_ij c_j for one node.
  double weight_to_community(int local) const;

  /// Rebuilds the caches from scratch (kills incremental drift).
  void recompute();

  /// Audit mode: largest relative disagreement between the incremental
  /// caches and a from-scratch recomputation.
  double audit_drift() const;

 private:
  MembershipVector c_;
  double sigma_;
  double a_cc_ = 0.0;     // Σ_ij c_i a_ij c_j
  double a_cv_ = 0.0;     // Σ_i c_i d_i
  double sum_c2d_ = 0.0;  // Σ_i c_i^2 d_i
};

/// Maximum KKT violation of the current vector under s_i <= c_i <= 1:
/// at c_i = 1 the gradient must be <= 0, at c_i = s_i it must be >= 0,
/// and strictly interior coordinates must have zero gradient. Seeds
/// (s_i = 1) are unconstrained. Returns 0 exactly at KKT points.
double kkt_residual(const ObjectiveContext& ctx);

}  // namespace sigcond
