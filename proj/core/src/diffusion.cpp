#include "sigcond/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>

#include "sigcond/errors.hpp"
#include "sigcond/objective.hpp"

namespace sigcond {

PushResult ppr_push(const Graph& g, const NodeSet& seeds, double teleport,
                    double epsilon) {
  validate_seeds(g, seeds);
  if (teleport <= 0.0 || teleport >= 1.0)
    throw validation_error("teleport must lie in (0,1)");
  if (epsilon <= 0.0) throw validation_error("epsilon must be positive");

  std::unordered_map<int, double> p, r;
  std::deque<int> queue;
  std::unordered_map<int, char> queued;

  double mass = 1.0 / static_cast<double>(seeds.size());
  for (int s : seeds) {
    r[s] = mass;
    if (mass >= epsilon * g.degree(s)) {
      queue.push_back(s);
      queued[s] = 1;
    }
  }

  std::int64_t pushes = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    double ru = r[u];
    double du = static_cast<double>(g.degree(u));
    if (ru < epsilon * du) continue;  // stale entry
    ++pushes;
    p[u] += teleport * ru;
    r[u] = 0.0;
    double share = (1.0 - teleport) * ru / du;
    for (int v : g.neighbors(u)) {
      double rv = (r[v] += share);
      if (rv >= epsilon * g.degree(v) && !queued[v]) {
        queue.push_back(v);
        queued[v] = 1;
      }
    }
  }

  PushResult out;
  out.pushes = pushes;
  out.p.reserve(p.size());
  for (auto [node, value] : p) {
    if (value > 0.0) out.p.push_back({node, value});
  }
  out.r.reserve(r.size());
  for (auto [node, value] : r) {
    if (value > 0.0) out.r.push_back({node, value});
  }
  auto by_node = [](const ScoreEntry& a, const ScoreEntry& b) {
    return a.node < b.node;
  };
  std::sort(out.p.begin(), out.p.end(), by_node);
  std::sort(out.r.begin(), out.r.end(), by_node);
  return out;
}

SweepProfile build_sweep(const Graph& g, std::span<const ScoreEntry> score,
                         bool with_alt) {
  std::vector<std::pair<double, int>> ranked;  // (score/degree, node)
  for (const ScoreEntry& entry : score) {
    if (entry.score <= 0.0) continue;
    int d = g.degree(entry.node);
    if (d == 0) continue;
    ranked.emplace_back(entry.score / static_cast<double>(d), entry.node);
  }
  if (ranked.empty()) throw validation_error("sweep over empty score support");
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  SweepProfile profile;
  profile.order.reserve(ranked.size());
  profile.prefix_phi.reserve(ranked.size());

  std::vector<char> in_prefix(g.node_count(), 0);
  std::int64_t a_cc = 0, a_cv = 0;
  std::int64_t total = g.total_volume();
  for (auto [ratio, v] : ranked) {
    std::int64_t into = 0;
    for (int w : g.neighbors(v)) {
      if (in_prefix[w]) ++into;
    }
    in_prefix[v] = 1;
    a_cc += 2 * into;
    a_cv += g.degree(v);
    profile.order.push_back(v);
    profile.prefix_phi.push_back(
        1.0 - static_cast<double>(a_cc) / static_cast<double>(a_cv));
    if (with_alt) {
      std::int64_t cut = a_cv - a_cc;
      std::int64_t denom = std::min(a_cv, total - a_cv);
      profile.prefix_phi_alt.push_back(
          denom > 0 ? static_cast<double>(cut) / static_cast<double>(denom)
                    : std::numeric_limits<double>::quiet_NaN());
    }
  }
  return profile;
}

namespace {

NodeSet prefix_set(const SweepProfile& profile, int k) {
  std::vector<int> members(profile.order.begin(), profile.order.begin() + k);
  return NodeSet(std::move(members));
}

int global_min_index(const SweepProfile& profile) {
  int best = -1;
  for (int k = 0; k < static_cast<int>(profile.prefix_phi.size()); ++k) {
    if (!std::isfinite(profile.prefix_phi[k])) continue;
    if (best < 0 || profile.prefix_phi[k] < profile.prefix_phi[best]) best = k;
  }
  if (best < 0) throw validation_error("sweep profile has no finite value");
  return best;
}

}  // namespace

NodeSet sweep_global_min(const SweepProfile& profile) {
  if (profile.order.empty()) throw validation_error("empty sweep profile");
  return prefix_set(profile, global_min_index(profile) + 1);
}

NodeSet sweep_yl_local_min(const SweepProfile& profile, const YlParams& params) {
  if (profile.order.empty()) throw validation_error("empty sweep profile");
  const std::vector<double>& phi = profile.prefix_phi;
  int candidate = -1;
  for (int k = 1; k < static_cast<int>(phi.size()); ++k) {
    if (candidate < 0) {
      if (phi[k] > phi[k - 1]) candidate = k - 1;  // stopped decreasing
    }
    if (candidate >= 0) {
      if (phi[k] > params.alpha_stop * phi[candidate]) {
        return prefix_set(profile, candidate + 1);  // confirmed
      }
      if (phi[k] < phi[candidate]) candidate = -1;  // discarded, keep scanning
    }
  }
  return prefix_set(profile, global_min_index(profile) + 1);
}

DetectionResult ppr_detect(const Graph& g, const NodeSet& seeds,
                           const PprParams& params, SweepMode mode,
                           const YlParams& yl) {
  validate_seeds(g, seeds);
  if (params.epsilon_grid.empty())
    throw validation_error("empty epsilon grid");

  std::optional<NodeSet> best;
  double best_phi = 0.0;
  std::int64_t pushes = 0;
  for (double epsilon : params.epsilon_grid) {
    PushResult push = ppr_push(g, seeds, params.teleport, epsilon);
    pushes += push.pushes;
    if (push.p.empty()) continue;
    SweepProfile profile = build_sweep(g, push.p, params.score_with_alt);
    if (params.score_with_alt) profile.prefix_phi.swap(profile.prefix_phi_alt);
    NodeSet community = (mode == SweepMode::global)
                            ? sweep_global_min(profile)
                            : sweep_yl_local_min(profile, yl);
    double phi = conductance_discrete(g, community);
    if (!best || phi < best_phi) {
      best = std::move(community);
      best_phi = phi;
    }
  }
  if (!best) throw degenerate_seed_error("diffusion produced no community");

  DetectionResult result;
  result.community = std::move(*best);
  result.objective_phi = best_phi;
  result.objective_phi_sigma = best_phi;  // sigma not used by the baselines
  result.sigma_used = 0.0;
  result.iterations = static_cast<int>(std::min<std::int64_t>(
      pushes, std::numeric_limits<int>::max()));
  result.converged = true;
  return result;
}

}  // namespace sigcond
