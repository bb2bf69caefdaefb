// Personalized-PageRank push approximation and the sweep-cut machinery
// behind the two diffusion baselines: the global sweep minimum and the
// local-optimum stopping rule with its confirmation factor.
#pragma once

#include <span>
#include <vector>

#include "sigcond/graph.hpp"
#include "sigcond/optim.hpp"

namespace sigcond {

struct PprParams {
  double teleport = 0.15;  // restart probability
  std::vector<double> epsilon_grid = {1e-2, 1e-3, 1e-4, 1e-5};
  // Score sweep prefixes with the min-volume conductance variant instead
  // of phi, matching the convention of the original diffusion codes.
  bool score_with_alt = false;
};

struct YlParams {
  double alpha_stop = 1.2;  // confirmation factor for sweep local minima
};

struct ScoreEntry {
  int node;
  double score;
};

struct PushResult {
  std::vector<ScoreEntry> p;  // approximation, sorted by node id
  std::vector<ScoreEntry> r;  // residual, sorted by node id
  std::int64_t pushes = 0;
};

/// Push approximation of the personalized PageRank vector of the uniform
/// seed distribution: repeatedly take a node with r(u) >= eps * d(u),
/// move teleport * r(u) to p(u) and spread (1 - teleport) * r(u) over the
/// neighbors, until the residual is everywhere below eps * d(u).
/// Invariant: p + ppr(r) = ppr(seed distribution).
PushResult ppr_push(const Graph& g, const NodeSet& seeds, double teleport,
                    double epsilon);

struct SweepProfile {
  std::vector<int> order;              // by score/degree descending
  std::vector<double> prefix_phi;      // phi(C_k) for k = 1..order.size()
  std::vector<double> prefix_phi_alt;  // filled only when requested
};

/// Ranks positive-score nodes by score/degree (ties by smaller id) and
/// computes every prefix conductance in one incremental pass.
SweepProfile build_sweep(const Graph& g, std::span<const ScoreEntry> score,
                         bool with_alt = false);

/// C_k minimizing prefix_phi; ties take the smallest k.
NodeSet sweep_global_min(const SweepProfile& profile);

/// Scans k ascending. When phi stops decreasing (strict increase at k*+1)
/// the prefix k* becomes a candidate; it is confirmed once phi exceeds
/// alpha_stop * phi(C_k*) before dropping below phi(C_k*) (which discards
/// the candidate). Returns the first confirmed prefix, or the global
/// minimum when nothing confirms.
NodeSet sweep_yl_local_min(const SweepProfile& profile, const YlParams& params);

enum class SweepMode { global, yl };

/// For each epsilon in the grid: push, sweep, extract per mode; keeps the
/// extracted community with the lowest conductance. The result's
/// phi_sigma mirrors phi (sigma plays no role in the diffusion baselines)
/// and iterations counts push operations.
DetectionResult ppr_detect(const Graph& g, const NodeSet& seeds,
                           const PprParams& params, SweepMode mode,
                           const YlParams& yl = {});

}  // namespace sigcond
