#include "sigcond/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

#include "sigcond/errors.hpp"
#include "sigcond/objective.hpp"
#include "sigcond/optim.hpp"

namespace sigcond {

LayerDecomposition layer_decomposition(const Graph& g, const NodeSet& community,
                                       const NodeSet& seeds) {
  if (seeds.empty()) throw validation_error("empty seed set");
  for (int s : seeds) {
    if (!community.contains(s))
      throw validation_error("seed " + std::to_string(g.original_id(s)) +
                             " outside community");
  }

  // BFS inside the induced subgraph.
  std::vector<int> dist(g.node_count(), -1);
  std::deque<int> queue;
  for (int s : seeds) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (community.contains(v) && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }

  int max_dist = 0;
  for (int v : community) {
    if (dist[v] < 0)
      throw validation_error("community disconnected: node " +
                             std::to_string(g.original_id(v)) +
                             " unreachable from the seeds");
    max_dist = std::max(max_dist, dist[v]);
  }

  LayerDecomposition out;
  for (int t = 0; t <= max_dist; ++t) {
    std::vector<int> members;
    for (int v : community) {
      if (dist[v] <= t) members.push_back(v);
    }
    out.layers.push_back(NodeSet(std::move(members)));
  }
  return out;
}

namespace {

struct SubsetStats {
  std::int64_t a_cc = 0;
  std::int64_t a_cv = 0;
};

SubsetStats subset_stats(const Graph& g, const NodeSet& c) {
  return {edge_weight_sets(g, c, c), set_volume(g, c)};
}

// Checks both conditions for one centered subset; fills the report and
// returns false on the first violation.
bool check_subset(const Graph& g, const NodeSet& community, const NodeSet& seeds,
                  const NodeSet& subset, double sigma,
                  DenseIsolatedReport& report) {
  if (subset.empty()) return true;
  SubsetStats stats = subset_stats(g, subset);
  if (stats.a_cv == 0) return true;  // no volume: nothing to attract or repel
  double ratio = static_cast<double>(stats.a_cc) / static_cast<double>(stats.a_cv);
  double bound = ratio - sigma;

  // Seeds-only subsets with no internal edges cannot satisfy the strict
  // density condition at sigma = 0, yet the optimizers keep seeds by
  // construction; exempt exactly that case.
  bool seeds_only = true;
  for (int i : subset) {
    if (!seeds.contains(i)) {
      seeds_only = false;
      break;
    }
  }
  bool density_exempt = seeds_only && stats.a_cc == 0 && sigma == 0.0;

  if (!density_exempt) {
    for (int i : subset) {
      std::int64_t into = 0;
      for (int j : g.neighbors(i)) {
        if (subset.contains(j)) ++into;
      }
      double lhs = 2.0 * static_cast<double>(into) / static_cast<double>(g.degree(i));
      if (!(lhs > bound)) {
        report.holds = false;
        report.violated_subset = subset;
        report.violated_node = i;
        report.side = ViolationSide::density;
        return false;
      }
    }
  }

  // Isolation. Only nodes adjacent to the subset can have a_iC > 0; if the
  // bound is negative even a zero-weight outsider violates it.
  if (bound < 0.0) {
    for (int v = 0; v < g.node_count(); ++v) {
      if (!community.contains(v)) {
        report.holds = false;
        report.violated_subset = subset;
        report.violated_node = v;
        report.side = ViolationSide::isolation;
        return false;
      }
    }
    return true;  // community spans the whole graph
  }
  std::vector<int> boundary;
  for (int i : subset) {
    for (int j : g.neighbors(i)) {
      if (!community.contains(j)) boundary.push_back(j);
    }
  }
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  for (int v : boundary) {
    std::int64_t into = 0;
    for (int j : g.neighbors(v)) {
      if (subset.contains(j)) ++into;
    }
    double lhs = 2.0 * static_cast<double>(into) / static_cast<double>(g.degree(v));
    if (!(lhs <= bound)) {
      report.holds = false;
      report.violated_subset = subset;
      report.violated_node = v;
      report.side = ViolationSide::isolation;
      return false;
    }
  }
  return true;
}

}  // namespace

DenseIsolatedReport check_dense_isolated(const Graph& g, const NodeSet& community,
                                         const NodeSet& seeds, double sigma,
                                         CheckMode mode) {
  LayerDecomposition layers = layer_decomposition(g, community, seeds);
  DenseIsolatedReport report;
  report.holds = true;
  report.sigma = sigma;

  if (mode == CheckMode::layers) {
    for (const NodeSet& layer : layers.layers) {
      if (!check_subset(g, community, seeds, layer, sigma, report)) return report;
    }
    return report;
  }

  // Exhaustive: full lower layers plus every subset of the current layer.
  for (int t = 0; t <= layers.n_star(); ++t) {
    std::vector<int> lower;
    if (t > 0) lower = layers.layers[t - 1].ids();
    std::vector<int> free;
    for (int v : layers.layers[t]) {
      if (t == 0 || !layers.layers[t - 1].contains(v)) free.push_back(v);
    }
    if (free.size() > 20)
      throw validation_error("exhaustive mode: layer with more than 20 free nodes");
    std::uint32_t subsets = 1u << free.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> members = lower;
      for (std::size_t b = 0; b < free.size(); ++b) {
        if (mask & (1u << b)) members.push_back(free[b]);
      }
      if (members.empty()) continue;
      if (!check_subset(g, community, seeds, NodeSet(std::move(members)), sigma,
                        report)) {
        return report;
      }
    }
  }
  return report;
}

namespace {

std::string id_list(const Graph& g, const NodeSet& set) {
  std::ostringstream out;
  bool first = true;
  for (int v : set) {
    if (!first) out << ' ';
    out << g.original_id(v);
    first = false;
  }
  return out.str();
}

NodeSet snapshot_community(const std::vector<int>& nodes,
                           const std::vector<double>& values, double tau) {
  std::vector<int> members;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= tau) members.push_back(nodes[k]);
  }
  return NodeSet(std::move(members));
}

bool snapshot_is_indicator(const std::vector<double>& values) {
  for (double v : values) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

}  // namespace

RecoveryReport verify_recovery(const Graph& g, const NodeSet& community,
                               const NodeSet& seeds, double sigma) {
  LayerDecomposition layers = layer_decomposition(g, community, seeds);

  EmParams em;
  em.sigma = sigma;
  em.neighborhood_limit = kNoLimit;
  em.record_iterates = true;
  DetectionResult em_run = em_detect(g, seeds, em);

  PgdParams pgd;
  pgd.sigma = sigma;
  pgd.neighborhood_limit = kNoLimit;
  pgd.record_iterates = true;
  DetectionResult pgd_run = pgd_detect(g, seeds, pgd);

  RecoveryReport report;
  report.em_iterations = em_run.iterations;
  report.pgd_iterations = pgd_run.iterations;

  auto diverge = [&](const char* method, int t, const NodeSet& expected,
                     const NodeSet& got) {
    report.exact = false;
    report.first_divergence = t;
    std::ostringstream detail;
    detail << method << " iteration " << t << ": expected {"
           << id_list(g, expected) << "} got {" << id_list(g, got) << "}";
    report.detail = detail.str();
  };

  auto check_trace = [&](const char* method, const DetectionResult& run,
                         bool require_indicator) {
    for (std::size_t t = 0; t < run.iterates.size(); ++t) {
      const NodeSet& expected =
          layers.layers[std::min<std::size_t>(t, layers.n_star())];
      NodeSet got =
          snapshot_community(run.neighborhood_nodes, run.iterates[t], 0.5);
      if (require_indicator && !snapshot_is_indicator(run.iterates[t])) {
        diverge(method, static_cast<int>(t), expected, got);
        return false;
      }
      if (!(got == expected)) {
        diverge(method, static_cast<int>(t), expected, got);
        return false;
      }
    }
    if (!(run.community == community)) {
      diverge(method, static_cast<int>(run.iterates.size()) - 1, community,
              run.community);
      return false;
    }
    return true;
  };

  report.exact = check_trace("em", em_run, false) &&
                 check_trace("pgd", pgd_run, true);
  return report;
}

bool check_alpha_beta(const Graph& g, const NodeSet& community, double alpha,
                      double beta) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0))
    throw validation_error("require 0 <= alpha < beta <= 1");
  double size = static_cast<double>(community.size());
  for (int v = 0; v < g.node_count(); ++v) {
    std::int64_t into = 0;
    for (int j : g.neighbors(v)) {
      if (community.contains(j)) ++into;
    }
    double a_ic = static_cast<double>(into);
    if (community.contains(v)) {
      if (!(a_ic >= beta * size)) return false;
    } else {
      if (!(a_ic <= alpha * size)) return false;
    }
  }
  return true;
}

std::optional<AlphaBeta> derive_alpha_beta(const Graph& g, const NodeSet& community) {
  if (community.empty()) throw validation_error("empty community");
  double phi = conductance_discrete(g, community);
  double scale = (1.0 - phi) / (2.0 * static_cast<double>(community.size()));

  std::int64_t min_inside = -1;
  for (int v : community) {
    std::int64_t d = g.degree(v);
    if (min_inside < 0 || d < min_inside) min_inside = d;
  }

  std::int64_t max_boundary = -1;
  for (int v : community) {
    for (int j : g.neighbors(v)) {
      if (!community.contains(j)) max_boundary = std::max<std::int64_t>(max_boundary, g.degree(j));
    }
  }

  AlphaBeta out;
  out.beta = scale * static_cast<double>(min_inside);
  if (max_boundary < 0) {
    out.alpha = 0.0;  // no boundary outsiders
    return out;
  }
  if (!(min_inside > max_boundary)) return std::nullopt;  // degree condition fails
  out.alpha = scale * static_cast<double>(max_boundary);
  return out;
}

OracleResult brute_force_optimum(const Graph& g, const NodeSet& seeds,
                                 double sigma, const NodeSet& scope) {
  if (seeds.empty()) throw validation_error("empty seed set");
  std::vector<int> free;
  for (int v : scope) {
    if (!seeds.contains(v)) free.push_back(v);
  }
  if (free.size() > 20)
    throw validation_error("brute force scope exceeds 20 free nodes");

  // Adjacency among free nodes as bitmasks; weights to the seed set.
  std::size_t n = free.size();
  std::vector<std::uint32_t> adj_mask(n, 0);
  std::vector<std::int64_t> to_seeds(n, 0);
  std::vector<std::int64_t> deg(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    deg[a] = g.degree(free[a]);
    for (int j : g.neighbors(free[a])) {
      if (seeds.contains(j)) ++to_seeds[a];
      auto it = std::lower_bound(free.begin(), free.end(), j);
      if (it != free.end() && *it == j) {
        adj_mask[a] |= 1u << (it - free.begin());
      }
    }
  }
  std::int64_t seed_internal = edge_weight_sets(g, seeds, seeds);
  std::int64_t seed_volume = set_volume(g, seeds);
  if (seed_volume == 0)
    throw undefined_objective_error("seed set with zero volume");

  double best_phi_sigma = 0.0;
  std::uint32_t best_mask = 0;
  int best_size = -1;
  std::vector<int> best_members;

  std::uint32_t subsets = 1u << n;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::int64_t a_cc = seed_internal;
    std::int64_t a_cv = seed_volume;
    for (std::size_t a = 0; a < n; ++a) {
      if (!(mask & (1u << a))) continue;
      a_cv += deg[a];
      a_cc += 2 * to_seeds[a];
      a_cc += std::popcount(adj_mask[a] & mask);  // both directions over pairs
    }
    double phi_sigma =
        1.0 - static_cast<double>(a_cc) / static_cast<double>(a_cv) - sigma;
    int size = seeds.size() + std::popcount(mask);

    bool better = false;
    if (best_size < 0 || phi_sigma < best_phi_sigma) {
      better = true;
    } else if (phi_sigma == best_phi_sigma) {
      if (size < best_size) {
        better = true;
      } else if (size == best_size) {
        std::vector<int> members = seeds.ids();
        for (std::size_t a = 0; a < n; ++a) {
          if (mask & (1u << a)) members.push_back(free[a]);
        }
        std::sort(members.begin(), members.end());
        if (members < best_members) better = true;
      }
    }
    if (better) {
      best_phi_sigma = phi_sigma;
      best_mask = mask;
      best_size = size;
      best_members = seeds.ids();
      for (std::size_t a = 0; a < n; ++a) {
        if (best_mask & (1u << a)) best_members.push_back(free[a]);
      }
      std::sort(best_members.begin(), best_members.end());
    }
  }

  OracleResult out;
  out.community = NodeSet(std::move(best_members));
  out.phi_sigma = best_phi_sigma;
  return out;
}

std::uint64_t graph_fingerprint(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(g.node_count()));
  for (int u = 0; u < g.node_count(); ++u) {
    for (int v : g.neighbors(u)) {
      if (u < v) {
        mix(static_cast<std::uint64_t>(g.original_id(u)));
        mix(static_cast<std::uint64_t>(g.original_id(v)));
      }
    }
  }
  return h;
}

namespace {

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::ostringstream out;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out << ',';
    out << ids[k];
  }
  return out.str();
}

}  // namespace

std::string format_oracle_record(const Graph& g, const NodeSet& seeds,
                                 double sigma, const OracleResult& result) {
  std::vector<std::int64_t> seed_ids, community_ids;
  for (int s : seeds) seed_ids.push_back(g.original_id(s));
  for (int v : result.community) community_ids.push_back(g.original_id(v));
  std::sort(seed_ids.begin(), seed_ids.end());
  std::sort(community_ids.begin(), community_ids.end());

  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), "%016llx %s %.15g %s %.15g",
                static_cast<unsigned long long>(graph_fingerprint(g)),
                join_ids(seed_ids).c_str(), sigma,
                join_ids(community_ids).c_str(), result.phi_sigma);
  return buffer;
}

OracleRecord parse_oracle_record(const std::string& line) {
  std::istringstream in(line);
  std::string fingerprint, seeds, community;
  OracleRecord record;
  if (!(in >> fingerprint >> seeds >> record.sigma >> community >> record.phi_sigma))
    throw io_error("malformed oracle record: " + line);
  record.fingerprint = std::stoull(fingerprint, nullptr, 16);
  auto split = [](const std::string& csv) {
    std::vector<std::int64_t> out;
    std::istringstream tokens(csv);
    std::string token;
    while (std::getline(tokens, token, ',')) out.push_back(std::stoll(token));
    return out;
  };
  record.seeds = split(seeds);
  record.community = split(community);
  return record;
}

}  // namespace sigcond
