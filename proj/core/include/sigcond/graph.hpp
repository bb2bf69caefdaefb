// Immutable sparse undirected graph plus the set/vector edge-weight queries
// used by every other component. Graphs are unweighted: a_ij is 0 or 1,
// and a_xy counts ordered pairs, so internal edges of a set are counted
// twice in a_xx.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sigcond {

/// Sorted, duplicate-free set of internal node ids with log-time membership.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::vector<int> ids);  // sorts and dedups
  static NodeSet single(int id) { return NodeSet(std::vector<int>{id}); }

  bool contains(int id) const;
  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }
  const std::vector<int>& ids() const { return ids_; }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  bool operator==(const NodeSet&) const = default;

  /// |this ∩ other| for sorted sets.
  int intersection_size(const NodeSet& other) const;

 private:
  std::vector<int> ids_;
};

class Graph {
 public:
  /// Build from 0-based edges over a fixed node universe [0, node_count).
  /// Self-loops are dropped, duplicates collapsed, symmetry enforced.
  static Graph from_edges(int node_count,
                          std::vector<std::pair<int, int>> edges);

  /// Build from edges with arbitrary non-negative original ids. Internal
  /// ids are the rank of each original id in sorted order; the bijection
  /// is retained for output. Nodes appearing only in self-loops are kept
  /// (with degree zero) so that callers can report on them.
  static Graph from_original_edges(
      const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

  int node_count() const { return static_cast<int>(offsets_.size()) - 1; }
  std::span<const int> neighbors(int i) const;
  int degree(int i) const {
    return static_cast<int>(offsets_[i + 1] - offsets_[i]);
  }
  /// a_VV = sum of degrees = 2 * edge count.
  std::int64_t total_volume() const { return volume_; }
  std::int64_t edge_count() const { return volume_ / 2; }

  std::int64_t original_id(int internal) const { return original_ids_[internal]; }
  std::optional<int> internal_id(std::int64_t original) const;

  /// Test instrumentation: invoked with the node id on every neighbors()
  /// call while set. Not used in production paths.
  void set_access_probe(std::function<void(int)> probe) {
    access_probe_ = std::move(probe);
  }

 private:
  Graph() = default;
  void finalize(int node_count, std::vector<std::pair<int, int>>&& edges);

  std::vector<std::int64_t> offsets_;
  std::vector<int> adjacency_;
  std::vector<std::int64_t> original_ids_;
  std::int64_t volume_ = 0;
  std::function<void(int)> access_probe_;
};

/// a_xy = Σ_{i∈x} Σ_{j∈y} a_ij. Ordered-pair count: a_xx counts every
/// internal edge twice. Empty sets yield 0.
std::int64_t edge_weight_sets(const Graph& g, const NodeSet& x,
                              const NodeSet& y);

/// a_xV = Σ_{i∈x} d_i.
std::int64_t set_volume(const Graph& g, const NodeSet& x);

/// Restriction of the search to a bounded node set grown around the seeds.
/// Keeps original (graph-internal) ids; provides a dense local indexing for
/// optimizer state.
class LocalNeighborhood {
 public:
  LocalNeighborhood(const Graph& g, NodeSet nodes);

  const Graph& graph() const { return *graph_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int global_id(int local) const { return nodes_.ids()[local]; }
  /// -1 when the node is outside the neighborhood.
  int local_id(int global) const;
  const NodeSet& nodes() const { return nodes_; }

 private:
  const Graph* graph_;
  NodeSet nodes_;
};

constexpr int kNoLimit = 0;

/// Grows N from the seeds by whole breadth-first frontiers while
/// |N| + |frontier| <= limit; the final partial frontier is admitted in
/// descending a_iN/a_iV order (ties by smaller node id) until |N| = limit.
/// limit = kNoLimit disables the bound (N becomes the reachable set).
LocalNeighborhood grow_neighborhood(const Graph& g, const NodeSet& seeds,
                                    int limit);

}  // namespace sigcond
