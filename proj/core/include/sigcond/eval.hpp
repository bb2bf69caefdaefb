// Ground-truth evaluation harness: deterministic seed sampling, per-trial
// detection, F1/size/conductance metrics, and CSV emission.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sigcond/detect.hpp"
#include "sigcond/graph.hpp"
#include "sigcond/io.hpp"

namespace sigcond {

struct GroundTruth {
  std::vector<NodeSet> communities;

  /// Loads and keeps communities with at least min_size nodes.
  static GroundTruth load(const std::string& path, const Graph& g,
                          const LoaderOptions& options = {}, int min_size = 3);
};

struct ExperimentConfig {
  int sample_size = 1000;
  int seeds_per_community = 1;
  std::uint64_t rng_seed = 0;
  MethodConfig method;
  int workers = 1;
  bool measure_time = false;  // wall_ms stays 0 otherwise, keeping reruns
                              // byte-identical
  std::string dataset_name = "dataset";
};

struct Trial {
  int community_index = 0;
  std::vector<int> seeds;  // internal ids
};

/// sample_size trials; communities drawn uniformly with replacement when
/// fewer than sample_size exist, without replacement otherwise; seeds
/// drawn uniformly inside the chosen community. Fully determined by
/// rng_seed via per-trial substreams.
std::vector<Trial> sample_trials(const GroundTruth& truth,
                                 const ExperimentConfig& config);

/// 2 |C ∩ C*| / (|C| + |C*|); an empty found community scores 0.
double f1_score(const NodeSet& found, const NodeSet& truth);

struct MetricsRow {
  int trial = 0;
  int community_index = 0;
  std::vector<std::int64_t> seeds;  // original ids
  double f1 = 0.0;
  int size = 0;
  double phi = 0.0;
  double phi_sigma = 0.0;
  double sigma_used = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  bool failed = false;
};

struct Aggregate {
  double mean_f1 = 0.0, sd_f1 = 0.0;
  double mean_size = 0.0, sd_size = 0.0;
  double mean_phi = 0.0, sd_phi = 0.0;
  int trials = 0;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;  // in trial order
  Aggregate aggregate;
};

/// Runs every trial through the configured method. Detector errors are
/// recorded per row (f1 = 0, failed flag, NaN objectives) and never abort
/// the run. Bit-reproducible for a fixed config, whatever the worker count.
ExperimentResult run_experiment(const Graph& g, const GroundTruth& truth,
                                const ExperimentConfig& config);

/// Header: trial,community_index,seed,method,sigma,f1,size,phi,phi_sigma,
/// iterations,wall_ms
void write_rows_csv(std::ostream& out, const ExperimentResult& result,
                    const ExperimentConfig& config);

/// Header: method,dataset,mean_f1,sd_f1,mean_size,sd_size,mean_phi,sd_phi,
/// trials
void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       const ExperimentConfig& config);

std::string method_label(const MethodConfig& config);

}  // namespace sigcond
