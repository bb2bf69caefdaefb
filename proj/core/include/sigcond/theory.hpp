// Verification oracles: dense-and-isolated checking over seed-centered
// subsets, the BFS-layer recovery oracle for both optimizers, the
// (alpha, beta)-cluster relation, and brute-force optimality on small
// scopes for golden-file tests.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigcond/graph.hpp"

namespace sigcond {

/// Cumulative BFS layers D_0 ⊆ D_1 ⊆ ... ⊆ D_{n*} from the seeds, with
/// distances measured inside the subgraph induced by the community.
struct LayerDecomposition {
  std::vector<NodeSet> layers;
  int n_star() const { return static_cast<int>(layers.size()) - 1; }
};

/// Throws validation_error naming an unreachable node when the community
/// is disconnected in its induced subgraph.
LayerDecomposition layer_decomposition(const Graph& g, const NodeSet& community,
                                       const NodeSet& seeds);

enum class ViolationSide { density, isolation };
enum class CheckMode { layers, exhaustive };

struct DenseIsolatedReport {
  bool holds = false;
  double sigma = 0.0;
  std::optional<NodeSet> violated_subset;
  std::optional<int> violated_node;
  std::optional<ViolationSide> side;
};

/// Checks, over seed-centered subsets C of the community:
///   density:   2 a_iC / a_iV >  a_CC / a_CV - sigma  for i in C
///   isolation: 2 a_iC / a_iV <= a_CC / a_CV - sigma  for i outside the
///              community.
/// layers mode checks only the canonical D_0..D_{n*}; exhaustive mode
/// enumerates full lower layers plus every subset of the current layer
/// (at most 20 free nodes per layer). Seeds-only subsets with a_CC = 0
/// are exempt from the density side at sigma = 0, since the optimizers
/// retain seeds unconditionally.
DenseIsolatedReport check_dense_isolated(const Graph& g, const NodeSet& community,
                                         const NodeSet& seeds, double sigma,
                                         CheckMode mode);

struct RecoveryReport {
  bool exact = false;  // both iterate traces match the layers and the
                       // final communities equal the target
  int em_iterations = 0;
  int pgd_iterations = 0;
  int first_divergence = -1;  // iteration index, -1 when none
  std::string detail;         // diff of the first divergent iteration
};

/// Runs both optimizers with iterate tracing and compares against the
/// layer decomposition: the discrete iterates must equal D_t and the
/// continuous iterates must equal the indicator of D_t at every step.
RecoveryReport verify_recovery(const Graph& g, const NodeSet& community,
                               const NodeSet& seeds, double sigma);

/// a_iC >= beta |C| for i in C and a_iC <= alpha |C| for i outside C.
bool check_alpha_beta(const Graph& g, const NodeSet& community, double alpha,
                      double beta);

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// beta = (1 - phi(C)) / (2|C|) * min_{i in C} a_iV and
/// alpha = (1 - phi(C)) / (2|C|) * max_{i not in C, a_iC > 0} a_iV.
/// Not applicable when min_{i in C} a_iV <= max boundary-outsider degree;
/// with no boundary outsiders alpha is 0.
std::optional<AlphaBeta> derive_alpha_beta(const Graph& g, const NodeSet& community);

struct OracleResult {
  NodeSet community;
  double phi_sigma = 0.0;
};

/// Enumerates every community S ∪ X with X ⊆ scope \ seeds (at most 20
/// free nodes) and returns the global minimizer of phi_sigma; ties take
/// the smaller set, then the lexicographically smaller id sequence.
OracleResult brute_force_optimum(const Graph& g, const NodeSet& seeds,
                                 double sigma, const NodeSet& scope);

/// Stable fingerprint of (node count, sorted edge list) for golden files.
std::uint64_t graph_fingerprint(const Graph& g);

/// Golden-file line: fingerprint, seeds, sigma, community, phi_sigma with
/// 15 significant digits. Node ids are original ids.
std::string format_oracle_record(const Graph& g, const NodeSet& seeds,
                                 double sigma, const OracleResult& result);

struct OracleRecord {
  std::uint64_t fingerprint = 0;
  std::vector<std::int64_t> seeds;
  double sigma = 0.0;
  std::vector<std::int64_t> community;
  double phi_sigma = 0.0;
};

OracleRecord parse_oracle_record(const std::string& line);

}  // namespace sigcond
