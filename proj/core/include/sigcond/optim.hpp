// The two local optimizers for sigma-conductance: projected gradient
// descent with a doubling line search, and the expectation-maximization
// style discrete update, plus the density-driven automatic sigma schedule.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sigcond/graph.hpp"
#include "sigcond/objective.hpp"

namespace sigcond {

struct PgdParams {
  double sigma = 0.0;
  int max_iterations = 1000;
  double convergence_tol = 1e-10;  // ∞-norm of the iterate change
  int max_doublings = 64;
  double final_threshold = 0.5;
  int neighborhood_limit = 1000;  // kNoLimit disables the restriction
  bool record_trace = false;
  bool record_iterates = false;
};

struct EmParams {
  double sigma = 0.0;
  int max_iterations = 1000;
  int neighborhood_limit = 1000;
  bool record_trace = false;
  bool record_iterates = false;
};

struct TracePoint {
  double phi_sigma;
  int community_size;
};

struct DetectionResult {
  NodeSet community;  // thresholded final membership, graph-internal ids
  std::vector<int> neighborhood_nodes;  // domain of the membership values
  std::vector<double> membership;       // aligned with neighborhood_nodes
  double objective_phi = 0.0;
  double objective_phi_sigma = 0.0;
  double sigma_used = 0.0;
  int iterations = 0;
  bool converged = false;
  bool cycle_detected = false;
  std::vector<TracePoint> trace;                 // if recorded; includes t=0
  std::vector<std::vector<double>> iterates;     // if recorded; includes t=0
};

/// LineSearch of the descent direction -grad from the current point of ctx:
/// tries eta = 1/max|g|, 2 eta, 4 eta, ... until every coordinate with
/// g_i != 0 is clamped to {0,1} (or max_doublings), and returns the eta
/// with the lowest phi_sigma seen; eta = 0 (stay) is the initial incumbent.
/// ctx is restored to its entry state.
double line_search(ObjectiveContext& ctx, std::span<const int> touched,
                   std::span<const double> grad, int max_doublings = 64);

DetectionResult pgd_detect(const Graph& g, const NodeSet& seeds,
                           const PgdParams& params);
DetectionResult pgd_detect(const Graph& g, const LocalNeighborhood& nbhd,
                           const NodeSet& seeds, const PgdParams& params);

/// Discrete update C' = { i : grad phi_sigma(C)_i < 0 } ∪ S iterated to a
/// fixed point, with history-based cycle detection. Nodes with exactly
/// zero gradient go to the background.
DetectionResult em_detect(const Graph& g, const NodeSet& seeds,
                          const EmParams& params);
DetectionResult em_detect(const Graph& g, const LocalNeighborhood& nbhd,
                          const NodeSet& seeds, const EmParams& params);

struct SigmaSchedule {
  std::vector<double> grid;  // ascending, nonnegative
  static SigmaSchedule default_grid();
};

/// Runs the optimizer once per sigma in the schedule and keeps the result
/// whose community maximizes a_CC/|C|^2; ties prefer smaller sigma, then
/// the smaller community.
DetectionResult detect_auto_sigma(const Graph& g, const NodeSet& seeds,
                                  const SigmaSchedule& schedule,
                                  const PgdParams& base);
DetectionResult detect_auto_sigma(const Graph& g, const NodeSet& seeds,
                                  const SigmaSchedule& schedule,
                                  const EmParams& base);

/// Shared precondition of all detectors: seeds nonempty, inside the graph,
/// every seed with degree >= 1 (throws degenerate_seed_error otherwise).
void validate_seeds(const Graph& g, const NodeSet& seeds);

}  // namespace sigcond
