#include "sigcond/graph.hpp"

#include <algorithm>
#include <cmath>

#include "sigcond/errors.hpp"

namespace sigcond {

NodeSet::NodeSet(std::vector<int> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool NodeSet::contains(int id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

int NodeSet::intersection_size(const NodeSet& other) const {
  int count = 0;
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

void Graph::finalize(int node_count, std::vector<std::pair<int, int>>&& edges) {
  // Store both directions, dropping self-loops and duplicates.
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : arcs) offsets_[u + 1]++;
  for (int i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.reserve(arcs.size());
  for (auto [u, v] : arcs) adjacency_.push_back(v);
  volume_ = static_cast<std::int64_t>(arcs.size());
}

Graph Graph::from_edges(int node_count, std::vector<std::pair<int, int>> edges) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw validation_error("edge endpoint outside node universe");
  }
  Graph g;
  g.original_ids_.resize(node_count);
  for (int i = 0; i < node_count; ++i) g.original_ids_[i] = i;
  g.finalize(node_count, std::move(edges));
  return g;
}

Graph Graph::from_original_edges(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
  std::vector<std::int64_t> ids;
  ids.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0) throw validation_error("negative node id");
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto rank = [&ids](std::int64_t original) {
    return static_cast<int>(
        std::lower_bound(ids.begin(), ids.end(), original) - ids.begin());
  };
  std::vector<std::pair<int, int>> internal;
  internal.reserve(edges.size());
  for (auto [u, v] : edges) internal.emplace_back(rank(u), rank(v));

  Graph g;
  g.original_ids_ = std::move(ids);
  g.finalize(static_cast<int>(g.original_ids_.size()), std::move(internal));
  return g;
}

std::span<const int> Graph::neighbors(int i) const {
  if (access_probe_) access_probe_(i);
  return {adjacency_.data() + offsets_[i],
          static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
}

std::optional<int> Graph::internal_id(std::int64_t original) const {
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<int>(it - original_ids_.begin());
}

std::int64_t edge_weight_sets(const Graph& g, const NodeSet& x, const NodeSet& y) {
  // Iterate the smaller side's adjacency.
  const NodeSet& outer = (x.size() <= y.size()) ? x : y;
  const NodeSet& inner = (x.size() <= y.size()) ? y : x;
  std::int64_t total = 0;
  for (int i : outer) {
    for (int j : g.neighbors(i)) {
      if (inner.contains(j)) ++total;
    }
  }
  return total;
}

std::int64_t set_volume(const Graph& g, const NodeSet& x) {
  std::int64_t total = 0;
  for (int i : x) total += g.degree(i);
  return total;
}

LocalNeighborhood::LocalNeighborhood(const Graph& g, NodeSet nodes)
    : graph_(&g), nodes_(std::move(nodes)) {}

int LocalNeighborhood::local_id(int global) const {
  const auto& ids = nodes_.ids();
  auto it = std::lower_bound(ids.begin(), ids.end(), global);
  if (it == ids.end() || *it != global) return -1;
  return static_cast<int>(it - ids.begin());
}

LocalNeighborhood grow_neighborhood(const Graph& g, const NodeSet& seeds,
                                    int limit) {
  if (seeds.empty()) throw validation_error("empty seed set");
  for (int s : seeds) {
    if (s < 0 || s >= g.node_count())
      throw validation_error("seed outside graph");
  }
  if (limit != kNoLimit && limit < seeds.size())
    throw validation_error("neighborhood limit smaller than seed set");

  std::vector<char> in_set(g.node_count(), 0);
  std::vector<char> in_frontier(g.node_count(), 0);
  std::vector<int> members = seeds.ids();
  for (int s : members) in_set[s] = 1;
  std::vector<int> current = members;  // nodes whose neighbors are unexplored

  for (;;) {
    // Next whole frontier.
    std::vector<int> frontier;
    for (int u : current) {
      for (int v : g.neighbors(u)) {
        if (!in_set[v] && !in_frontier[v]) {
          in_frontier[v] = 1;
          frontier.push_back(v);
        }
      }
    }
    if (frontier.empty()) break;

    if (limit == kNoLimit ||
        static_cast<int>(members.size() + frontier.size()) <= limit) {
      for (int v : frontier) {
        in_frontier[v] = 0;
        in_set[v] = 1;
      }
      members.insert(members.end(), frontier.begin(), frontier.end());
      current = std::move(frontier);
      continue;
    }

    // Partial step: rank candidates by a_iN / a_iV, ties by smaller id.
    int room = limit - static_cast<int>(members.size());
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(frontier.size());
    for (int v : frontier) {
      std::int64_t into = 0;
      for (int w : g.neighbors(v)) {
        if (in_set[w]) ++into;
      }
      double ratio = static_cast<double>(into) / static_cast<double>(g.degree(v));
      ranked.emplace_back(ratio, v);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (int k = 0; k < room && k < static_cast<int>(ranked.size()); ++k) {
      members.push_back(ranked[k].second);
    }
    break;
  }

  return LocalNeighborhood(g, NodeSet(std::move(members)));
}

}  // namespace sigcond
