#include "sigcond/optim.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sigcond/errors.hpp"

namespace sigcond {

void validate_seeds(const Graph& g, const NodeSet& seeds) {
  if (seeds.empty()) throw validation_error("empty seed set");
  for (int s : seeds) {
    if (s < 0 || s >= g.node_count())
      throw validation_error("seed outside graph");
    if (g.degree(s) == 0)
      throw degenerate_seed_error("seed " + std::to_string(g.original_id(s)) +
                                  " has degree zero");
  }
}

namespace {

// Trial point of the line search: clamp(c - eta * g) over the touched set.
void trial_values(const MembershipVector& base, std::span<const int> touched,
                  std::span<const double> grad, double eta,
                  std::vector<double>& out) {
  out.resize(touched.size());
  for (std::size_t k = 0; k < touched.size(); ++k) {
    int i = touched[k];
    out[k] = clamp_to_box(base.value(i) - eta * grad[k], base.floor(i));
  }
}

void apply_values(ObjectiveContext& ctx, std::span<const int> touched,
                  std::span<const double> values) {
  for (std::size_t k = 0; k < touched.size(); ++k) ctx.set(touched[k], values[k]);
}

}  // namespace

double line_search(ObjectiveContext& ctx, std::span<const int> touched,
                   std::span<const double> grad, int max_doublings) {
  double max_abs = 0.0;
  for (double gi : grad) max_abs = std::max(max_abs, std::abs(gi));
  if (max_abs == 0.0) return 0.0;

  std::vector<double> base(touched.size());
  std::vector<double> floors(touched.size());
  for (std::size_t k = 0; k < touched.size(); ++k) {
    base[k] = ctx.membership().value(touched[k]);
    floors[k] = ctx.membership().floor(touched[k]);
  }
  double best_phi = ctx.value();
  double best_eta = 0.0;

  double eta = 1.0 / max_abs;
  std::vector<double> trial(touched.size());
  for (int step = 0; step < max_doublings; ++step) {
    for (std::size_t k = 0; k < touched.size(); ++k)
      trial[k] = clamp_to_box(base[k] - eta * grad[k], floors[k]);
    apply_values(ctx, touched, trial);
    double phi = ctx.value();
    if (phi < best_phi) {
      best_phi = phi;
      best_eta = eta;
    }
    bool saturated = true;
    for (std::size_t k = 0; k < touched.size(); ++k) {
      if (grad[k] != 0.0 && trial[k] != 0.0 && trial[k] != 1.0) {
        saturated = false;
        break;
      }
    }
    if (saturated) break;
    eta *= 2.0;
  }
  apply_values(ctx, touched, base);  // restore entry state
  return best_eta;
}

namespace {

DetectionResult finish_result(const Graph& g, ObjectiveContext& ctx,
                              double threshold, double sigma) {
  DetectionResult result;
  result.sigma_used = sigma;
  result.community = ctx.membership().thresholded(threshold);
  const LocalNeighborhood& domain = ctx.domain();
  result.neighborhood_nodes = domain.nodes().ids();
  result.membership = ctx.membership().values();
  result.objective_phi = conductance_discrete(g, result.community);
  result.objective_phi_sigma = ctx.value();
  return result;
}

void record(DetectionResult& result, const ObjectiveContext& ctx,
            double threshold, bool trace, bool iterates) {
  if (trace) {
    int size = 0;
    for (double v : ctx.membership().values())
      if (v >= threshold) ++size;
    result.trace.push_back({ctx.value(), size});
  }
  if (iterates) result.iterates.push_back(ctx.membership().values());
}

}  // namespace

DetectionResult pgd_detect(const Graph& g, const LocalNeighborhood& nbhd,
                           const NodeSet& seeds, const PgdParams& params) {
  validate_seeds(g, seeds);
  ObjectiveContext ctx(MembershipVector(nbhd, seeds), params.sigma);

  DetectionResult result;
  record(result, ctx, params.final_threshold, params.record_trace,
         params.record_iterates);

  bool converged = false;
  int iterations = 0;
  double phi_current = ctx.value();
  std::vector<double> next;
  std::vector<double> prev;
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    iterations = iter;
    std::vector<int> touched = ctx.touched_set();
    std::vector<double> grad = ctx.gradient(touched);

    double eta = line_search(ctx, touched, grad, params.max_doublings);
    trial_values(ctx.membership(), touched, grad, eta, next);

    prev.resize(touched.size());
    double delta = 0.0;
    for (std::size_t k = 0; k < touched.size(); ++k) {
      prev[k] = ctx.membership().value(touched[k]);
      delta = std::max(delta, std::abs(next[k] - prev[k]));
    }
    apply_values(ctx, touched, next);

    double phi_next = ctx.value();
    if (phi_next > phi_current) {
      // One-ulp tie between line-search bookkeeping and the re-applied
      // step: treat as no improvement and stop moving.
      apply_values(ctx, touched, prev);
      delta = 0.0;
      phi_next = phi_current;
    }
    phi_current = phi_next;

    record(result, ctx, params.final_threshold, params.record_trace,
           params.record_iterates);
    if (delta < params.convergence_tol) {
      converged = true;
      break;
    }
  }

  DetectionResult out = finish_result(g, ctx, params.final_threshold, params.sigma);
  out.iterations = iterations;
  out.converged = converged;
  out.trace = std::move(result.trace);
  out.iterates = std::move(result.iterates);
  return out;
}

DetectionResult pgd_detect(const Graph& g, const NodeSet& seeds,
                           const PgdParams& params) {
  validate_seeds(g, seeds);
  LocalNeighborhood nbhd = grow_neighborhood(g, seeds, params.neighborhood_limit);
  return pgd_detect(g, nbhd, seeds, params);
}

namespace {

std::uint64_t hash_community(const std::vector<int>& sorted_locals) {
  std::uint64_t h = 1469598103934665603ull;
  for (int v : sorted_locals) {
    h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ull;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

DetectionResult em_detect(const Graph& g, const LocalNeighborhood& nbhd,
                          const NodeSet& seeds, const EmParams& params) {
  validate_seeds(g, seeds);
  ObjectiveContext ctx(MembershipVector(nbhd, seeds), params.sigma);

  std::vector<int> current = ctx.membership().support();  // sorted locals
  std::vector<std::vector<int>> history{current};
  std::unordered_set<std::uint64_t> seen{hash_community(current)};

  DetectionResult result;
  record(result, ctx, 0.5, params.record_trace, params.record_iterates);

  bool converged = false;
  bool cycle = false;
  int iterations = 0;
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    iterations = iter;
    std::vector<int> touched = ctx.touched_set();

    std::vector<int> next;
    for (int i : touched) {
      if (ctx.membership().is_seed(i)) continue;  // added below
      if (ctx.gradient_at(i) < 0.0) next.push_back(i);
    }
    for (int i = 0; i < ctx.membership().size(); ++i) {
      if (ctx.membership().is_seed(i)) next.push_back(i);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());

    if (next == current) {
      converged = true;
      break;
    }
    std::uint64_t h = hash_community(next);
    if (seen.count(h) &&
        std::find(history.begin(), history.end(), next) != history.end()) {
      cycle = true;  // revisited an earlier community: the map oscillates
      break;
    }

    // Apply the discrete update.
    for (int i : current) {
      if (!ctx.membership().is_seed(i)) ctx.set(i, 0.0);
    }
    for (int i : next) ctx.set(i, 1.0);
    current = std::move(next);
    history.push_back(current);
    seen.insert(h);
    record(result, ctx, 0.5, params.record_trace, params.record_iterates);
  }

  DetectionResult out = finish_result(g, ctx, 0.5, params.sigma);
  out.iterations = iterations;
  out.converged = converged;
  out.cycle_detected = cycle;
  out.trace = std::move(result.trace);
  out.iterates = std::move(result.iterates);
  return out;
}

DetectionResult em_detect(const Graph& g, const NodeSet& seeds,
                          const EmParams& params) {
  validate_seeds(g, seeds);
  LocalNeighborhood nbhd = grow_neighborhood(g, seeds, params.neighborhood_limit);
  return em_detect(g, nbhd, seeds, params);
}

SigmaSchedule SigmaSchedule::default_grid() {
  SigmaSchedule schedule;
  for (int k = 0; k <= 20; ++k) schedule.grid.push_back(0.05 * k);
  schedule.grid.push_back(1.5);
  schedule.grid.push_back(2.0);
  return schedule;
}

namespace {

template <typename Params, typename Runner>
DetectionResult auto_sigma_impl(const Graph& g, const NodeSet& seeds,
                                const SigmaSchedule& schedule,
                                const Params& base, Runner run) {
  if (schedule.grid.empty()) throw validation_error("empty sigma schedule");
  for (std::size_t k = 0; k < schedule.grid.size(); ++k) {
    if (schedule.grid[k] < 0.0 ||
        (k > 0 && schedule.grid[k] <= schedule.grid[k - 1]))
      throw validation_error("sigma grid must be ascending and nonnegative");
  }
  std::optional<DetectionResult> best;
  double best_density = -1.0;
  for (double sigma : schedule.grid) {
    Params params = base;
    params.sigma = sigma;
    DetectionResult candidate = run(g, seeds, params);
    double cand_density = candidate.community.empty()
                              ? 0.0
                              : density(g, candidate.community);
    // Ties prefer smaller sigma (the incumbent, since the grid ascends),
    // then the smaller community.
    bool better = false;
    if (!best) {
      better = true;
    } else if (cand_density > best_density) {
      better = true;
    } else if (cand_density == best_density &&
               candidate.sigma_used == best->sigma_used &&
               candidate.community.size() < best->community.size()) {
      better = true;
    }
    if (better) {
      best_density = cand_density;
      best = std::move(candidate);
    }
  }
  return std::move(*best);
}

}  // namespace

DetectionResult detect_auto_sigma(const Graph& g, const NodeSet& seeds,
                                  const SigmaSchedule& schedule,
                                  const PgdParams& base) {
  return auto_sigma_impl(g, seeds, schedule, base,
                         [](const Graph& graph, const NodeSet& s, const PgdParams& p) {
                           return pgd_detect(graph, s, p);
                         });
}

DetectionResult detect_auto_sigma(const Graph& g, const NodeSet& seeds,
                                  const SigmaSchedule& schedule,
                                  const EmParams& base) {
  return auto_sigma_impl(g, seeds, schedule, base,
                         [](const Graph& graph, const NodeSet& s, const EmParams& p) {
                           return em_detect(graph, s, p);
                         });
}

}  // namespace sigcond
