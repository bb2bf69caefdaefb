#include "sigcond/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "sigcond/errors.hpp"
#include "sigcond/objective.hpp"
#include "sigcond/rng.hpp"

namespace sigcond {

GroundTruth GroundTruth::load(const std::string& path, const Graph& g,
                              const LoaderOptions& options, int min_size) {
  GroundTruth truth;
  truth.communities = load_communities(path, g, options, min_size);
  if (truth.communities.empty())
    throw validation_error(path + ": no ground-truth communities of size >= " +
                           std::to_string(min_size));
  return truth;
}

double f1_score(const NodeSet& found, const NodeSet& truth) {
  if (truth.empty()) throw validation_error("empty truth community");
  if (found.empty()) return 0.0;
  double overlap = static_cast<double>(found.intersection_size(truth));
  return 2.0 * overlap / static_cast<double>(found.size() + truth.size());
}

namespace {

std::vector<int> sample_distinct(SplitMix64& rng, int population, int count) {
  // Partial Fisher-Yates over the index range.
  std::vector<int> indices(population);
  for (int i = 0; i < population; ++i) indices[i] = i;
  for (int i = 0; i < count; ++i) {
    int j = i + static_cast<int>(rng.bounded(population - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(count);
  return indices;
}

}  // namespace

std::vector<Trial> sample_trials(const GroundTruth& truth,
                                 const ExperimentConfig& config) {
  if (config.sample_size <= 0) throw validation_error("sample_size must be positive");
  if (config.seeds_per_community <= 0)
    throw validation_error("seeds_per_community must be positive");

  int population = static_cast<int>(truth.communities.size());
  std::vector<Trial> trials(config.sample_size);

  std::vector<int> without_replacement;
  if (population >= config.sample_size) {
    SplitMix64 master = SplitMix64::substream(config.rng_seed, 0);
    without_replacement = sample_distinct(master, population, config.sample_size);
  }

  for (int t = 0; t < config.sample_size; ++t) {
    // Substream index t+1: index 0 is reserved for the master stream.
    SplitMix64 rng = SplitMix64::substream(config.rng_seed, t + 1);
    Trial& trial = trials[t];
    trial.community_index = without_replacement.empty()
                                ? static_cast<int>(rng.bounded(population))
                                : without_replacement[t];
    const NodeSet& community = truth.communities[trial.community_index];
    int want = std::min(config.seeds_per_community, community.size());
    std::vector<int> picks = sample_distinct(rng, community.size(), want);
    for (int p : picks) trial.seeds.push_back(community.ids()[p]);
    std::sort(trial.seeds.begin(), trial.seeds.end());
  }
  return trials;
}

namespace {

MetricsRow run_trial(const Graph& g, const GroundTruth& truth,
                     const ExperimentConfig& config, const Trial& trial,
                     int index) {
  MetricsRow row;
  row.trial = index;
  row.community_index = trial.community_index;
  for (int s : trial.seeds) row.seeds.push_back(g.original_id(s));

  auto start = std::chrono::steady_clock::now();
  try {
    DetectionResult result = detect(g, NodeSet(trial.seeds), config.method);
    row.f1 = f1_score(result.community, truth.communities[trial.community_index]);
    row.size = result.community.size();
    row.phi = result.objective_phi;
    row.phi_sigma = result.objective_phi_sigma;
    row.sigma_used = result.sigma_used;
    row.iterations = result.iterations;
  } catch (const std::exception&) {
    row.failed = true;
    row.f1 = 0.0;
    row.size = 0;
    row.phi = std::numeric_limits<double>::quiet_NaN();
    row.phi_sigma = std::numeric_limits<double>::quiet_NaN();
  }
  if (config.measure_time) {
    auto end = std::chrono::steady_clock::now();
    row.wall_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
  }
  return row;
}

Aggregate aggregate_rows(const std::vector<MetricsRow>& rows) {
  Aggregate agg;
  agg.trials = static_cast<int>(rows.size());
  if (rows.empty()) return agg;
  double sum_f1 = 0, sum_size = 0, sum_phi = 0;
  for (const MetricsRow& row : rows) {
    sum_f1 += row.f1;
    sum_size += row.size;
    sum_phi += row.phi;
  }
  double n = static_cast<double>(rows.size());
  agg.mean_f1 = sum_f1 / n;
  agg.mean_size = sum_size / n;
  agg.mean_phi = sum_phi / n;
  if (rows.size() > 1) {
    double var_f1 = 0, var_size = 0, var_phi = 0;
    for (const MetricsRow& row : rows) {
      var_f1 += (row.f1 - agg.mean_f1) * (row.f1 - agg.mean_f1);
      var_size += (row.size - agg.mean_size) * (row.size - agg.mean_size);
      var_phi += (row.phi - agg.mean_phi) * (row.phi - agg.mean_phi);
    }
    agg.sd_f1 = std::sqrt(var_f1 / (n - 1.0));
    agg.sd_size = std::sqrt(var_size / (n - 1.0));
    agg.sd_phi = std::sqrt(var_phi / (n - 1.0));
  }
  return agg;
}

}  // namespace

ExperimentResult run_experiment(const Graph& g, const GroundTruth& truth,
                                const ExperimentConfig& config) {
  std::vector<Trial> trials = sample_trials(truth, config);
  ExperimentResult result;
  result.rows.resize(trials.size());

  int workers = std::max(1, config.workers);
  if (workers == 1) {
    for (std::size_t t = 0; t < trials.size(); ++t) {
      result.rows[t] = run_trial(g, truth, config, trials[t], static_cast<int>(t));
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t t = next.fetch_add(1);
        if (t >= trials.size()) break;
        result.rows[t] = run_trial(g, truth, config, trials[t], static_cast<int>(t));
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  result.aggregate = aggregate_rows(result.rows);
  return result;
}

std::string method_label(const MethodConfig& config) {
  std::string label = method_name(config.method);
  if (config.auto_sigma) label += "-auto";
  return label;
}

namespace {

std::string format_double(double v, const char* fmt) {
  if (std::isnan(v)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, v);
  return buffer;
}

std::string join_seeds(const std::vector<std::int64_t>& seeds) {
  std::string out;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(seeds[k]);
  }
  return out;
}

}  // namespace

void write_rows_csv(std::ostream& out, const ExperimentResult& result,
                    const ExperimentConfig& config) {
  out << "trial,community_index,seed,method,sigma,f1,size,phi,phi_sigma,"
         "iterations,wall_ms\n";
  std::string label = method_label(config.method);
  for (const MetricsRow& row : result.rows) {
    out << row.trial << ',' << row.community_index << ',' << join_seeds(row.seeds)
        << ',' << label << ',' << format_double(row.sigma_used, "%.6g") << ','
        << format_double(row.f1, "%.6f") << ',' << row.size << ','
        << format_double(row.phi, "%.6f") << ','
        << format_double(row.phi_sigma, "%.6f") << ',' << row.iterations << ','
        << format_double(row.wall_ms, "%.3f") << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       const ExperimentConfig& config) {
  out << "method,dataset,mean_f1,sd_f1,mean_size,sd_size,mean_phi,sd_phi,"
         "trials\n";
  const Aggregate& agg = result.aggregate;
  out << method_label(config.method) << ',' << config.dataset_name << ','
      << format_double(agg.mean_f1, "%.6f") << ','
      << format_double(agg.sd_f1, "%.6f") << ','
      << format_double(agg.mean_size, "%.6f") << ','
      << format_double(agg.sd_size, "%.6f") << ','
      << format_double(agg.mean_phi, "%.6f") << ','
      << format_double(agg.sd_phi, "%.6f") << ',' << agg.trials << '\n';
}

}  // namespace sigcond
