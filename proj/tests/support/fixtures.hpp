// Shared graph fixtures and independent oracles for the test suites. The
// oracles here (finite differences, dense PageRank, naive conductance)
// deliberately avoid the library's incremental code paths.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "sigcond/graph.hpp"
#include "sigcond/membership.hpp"
#include "sigcond/objective.hpp"
#include "sigcond/rng.hpp"

namespace sigcond::testing {

inline Graph triangle() {
  return Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
}

/// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles_bridge() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
}

/// 5-clique {0..4} in one component, triangle {5,6,7} in another.
inline Graph disconnected_clique() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
  edges.insert(edges.end(), {{5, 6}, {6, 7}, {7, 5}});
  return Graph::from_edges(8, edges);
}

/// 5-clique {0..4} with three tails: node 5 (degree 3) on clique node 4
/// plus stubs 6 and 7, node 8 (degree 2) on clique node 1 plus stub 9,
/// node 10 (degree 2) on clique node 2 plus stub 11. The clique has
/// a_CC = 20, a_CV = 23, phi = 3/23.
inline Graph clique_with_tails() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
  edges.insert(edges.end(),
               {{4, 5}, {5, 6}, {5, 7}, {1, 8}, {8, 9}, {2, 10}, {10, 11}});
  return Graph::from_edges(12, edges);
}

inline NodeSet clique5() { return NodeSet({0, 1, 2, 3, 4}); }

/// G(n, p) with isolated nodes patched by one extra edge each.
inline Graph random_gnp(SplitMix64& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  std::vector<int> degree(n, 0);
  for (auto [u, v] : edges) {
    degree[u]++;
    degree[v]++;
  }
  for (int i = 0; i < n; ++i) {
    if (degree[i] == 0 && n > 1) {
      int j = static_cast<int>(rng.bounded(n - 1));
      if (j >= i) ++j;
      edges.emplace_back(i, j);
      degree[i]++;
      degree[j]++;
    }
  }
  return Graph::from_edges(n, edges);
}

/// Nonempty random subset of [0, n).
inline NodeSet random_subset(SplitMix64& rng, int n) {
  std::vector<int> members;
  for (int i = 0; i < n; ++i) {
    if (rng.next() & 1) members.push_back(i);
  }
  if (members.empty()) members.push_back(static_cast<int>(rng.bounded(n)));
  return NodeSet(std::move(members));
}

/// Central finite difference of phi_sigma at coordinate `local`.
inline double finite_difference(const ObjectiveContext& base, int local, double h) {
  ObjectiveContext plus(base.membership(), base.sigma());
  plus.set(local, base.membership().value(local) + h);
  ObjectiveContext minus(base.membership(), base.sigma());
  minus.set(local, base.membership().value(local) - h);
  return (plus.value() - minus.value()) / (2.0 * h);
}

struct PlantedInstance {
  Graph graph;
  NodeSet community;
  NodeSet seeds;
};

/// One attempt at a clique/quasi-clique attached only to high-degree hubs
/// (or fully disconnected), with seeds sampled inside. Callers verify the
/// dense-and-isolated property with the checker and retry on rejection.
inline PlantedInstance make_planted_instance(SplitMix64& rng) {
  int m = 4 + static_cast<int>(rng.bounded(5));  // clique size 4..8
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) edges.emplace_back(i, j);

  // Occasionally thin it into a quasi-clique.
  if (rng.uniform() < 0.3 && m >= 5) {
    std::size_t victim = rng.bounded(edges.size());
    edges.erase(edges.begin() + victim);
  }

  int seed_count = 1 + static_cast<int>(rng.bounded(2));
  std::vector<int> seeds;
  for (int k = 0; k < seed_count; ++k) {
    int s = static_cast<int>(rng.bounded(m));
    seeds.push_back(s);
  }
  NodeSet seed_set(seeds);

  int next = m;
  bool attached = rng.uniform() < 0.6;
  if (attached) {
    int hubs = 1 + static_cast<int>(rng.bounded(2));
    for (int h = 0; h < hubs; ++h) {
      int hub = next++;
      int attach = 1 + static_cast<int>(rng.bounded(2));
      for (int a = 0; a < attach; ++a) {
        int v = static_cast<int>(rng.bounded(m));
        if (seed_set.contains(v)) continue;  // hubs must avoid the seeds
        edges.emplace_back(v, hub);
      }
      int satellites = 6 * m;  // inflate the hub degree well past the bound
      for (int s = 0; s < satellites; ++s) edges.emplace_back(hub, next++);
    }
  } else {
    // Background component, disconnected from the clique.
    int a = next++, b = next++, c = next++;
    edges.insert(edges.end(), {{a, b}, {b, c}, {c, a}});
  }

  std::vector<int> community;
  for (int i = 0; i < m; ++i) community.push_back(i);
  PlantedInstance out{Graph::from_edges(next, edges), NodeSet(community),
                      seed_set};
  return out;
}

/// Dense personalized PageRank: fixed-point of
///   p = teleport * source + (1 - teleport) * A D^{-1} p,
/// iterated to machine precision. `source` need not be normalized (the
/// operator is linear), which lets tests aim it at residual vectors.
inline std::vector<double> dense_ppr(const Graph& g, const std::vector<double>& source,
                                     double teleport) {
  int n = g.node_count();
  std::vector<double> p(n, 0.0), next(n, 0.0);
  for (int iter = 0; iter < 100000; ++iter) {
    for (int i = 0; i < n; ++i) next[i] = teleport * source[i];
    for (int u = 0; u < n; ++u) {
      if (p[u] == 0.0 || g.degree(u) == 0) continue;
      double share = (1.0 - teleport) * p[u] / g.degree(u);
      for (int v : g.neighbors(u)) next[v] += share;
    }
    double delta = 0.0;
    for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - p[i]));
    p.swap(next);
    if (delta < 1e-16) break;
  }
  return p;
}

}  // namespace sigcond::testing
