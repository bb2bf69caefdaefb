// Command-line surface: detect / eval / sweep-sigma / oracle / check.
// Exit codes: 1 I/O, 2 validation (including flag errors), 3 degenerate seed.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sigcond/detect.hpp"
#include "sigcond/errors.hpp"
#include "sigcond/eval.hpp"
#include "sigcond/objective.hpp"
#include "sigcond/theory.hpp"

using namespace sigcond;

namespace {

struct CommonOptions {
  std::string graph_path;
  std::string format = "edgelist";
  std::string seeds_spec;
  std::string seeds_file;
  std::string method = "pgd";
  double sigma = 0.0;
  bool auto_sigma = false;
  int limit = 1000;
  double teleport = 0.15;
  std::string eps_grid = "1e-2,1e-3,1e-4,1e-5";
  double alpha_stop = 1.2;
  bool phi_alt = false;
};

LoaderOptions loader_options(const std::string& format) {
  LoaderOptions options;
  if (format == "edgelist") {
    options.format = InputFormat::edgelist;
  } else if (format == "lfr") {
    options.format = InputFormat::lfr;
  } else {
    throw validation_error("unknown format '" + format + "'");
  }
  return options;
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> values;
  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stod(token));
  }
  if (values.empty()) throw validation_error("empty list '" + spec + "'");
  return values;
}

// "start:step:end" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  if (spec.find(':') == std::string::npos) return parse_double_list(spec);
  double start, step, end;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' ||
      step <= 0.0 || end < start) {
    throw validation_error("bad grid spec '" + spec + "' (want start:step:end)");
  }
  std::vector<double> values;
  for (double v = start; v <= end + step * 1e-9; v += step) values.push_back(v);
  return values;
}

NodeSet parse_seeds(const Graph& g, const CommonOptions& options) {
  std::vector<std::int64_t> originals;
  if (!options.seeds_spec.empty()) {
    for (double v : parse_double_list(options.seeds_spec))
      originals.push_back(static_cast<std::int64_t>(v));
  } else if (!options.seeds_file.empty()) {
    std::ifstream in(options.seeds_file);
    if (!in) throw io_error("cannot open '" + options.seeds_file + "'");
    std::int64_t id;
    while (in >> id) originals.push_back(id);
  } else {
    throw validation_error("no seeds given (use --seeds or --seeds-file)");
  }
  std::vector<int> internal;
  for (std::int64_t id : originals) {
    auto mapped = g.internal_id(id);
    if (!mapped)
      throw validation_error("seed " + std::to_string(id) + " not in graph");
    internal.push_back(*mapped);
  }
  return NodeSet(internal);
}

MethodConfig method_config(const CommonOptions& options) {
  MethodConfig config;
  config.method = parse_method(options.method);
  config.sigma = options.sigma;
  config.auto_sigma = options.auto_sigma;
  config.neighborhood_limit = options.limit;
  config.ppr.teleport = options.teleport;
  config.ppr.epsilon_grid = parse_double_list(options.eps_grid);
  config.ppr.score_with_alt = options.phi_alt;
  config.yl.alpha_stop = options.alpha_stop;
  return config;
}

std::string dataset_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void add_common(CLI::App* cmd, CommonOptions& options, bool with_method) {
  cmd->add_option("graph", options.graph_path, "edge-list file")->required();
  cmd->add_option("--format", options.format, "edgelist|lfr");
  cmd->add_option("--limit", options.limit,
                  "neighborhood size bound, 0 = unlimited");
  if (with_method) {
    cmd->add_option("--method", options.method, "pgd|em|ppr|yl");
    cmd->add_option("--sigma", options.sigma, "sigma value");
    cmd->add_flag("--auto-sigma", options.auto_sigma,
                  "sweep sigma and keep the densest community");
    cmd->add_option("--teleport", options.teleport, "ppr restart probability");
    cmd->add_option("--eps", options.eps_grid, "ppr push tolerance grid");
    cmd->add_option("--alpha-stop", options.alpha_stop,
                    "yl confirmation factor");
    cmd->add_flag("--phi-alt", options.phi_alt,
                  "score diffusion sweeps with min-volume conductance");
  }
}

void add_seed_options(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--seeds", options.seeds_spec, "comma list of node ids");
  cmd->add_option("--seeds-file", options.seeds_file, "file of node ids");
}

int cmd_detect(const CommonOptions& options) {
  Graph g = load_edge_list(options.graph_path, loader_options(options.format));
  NodeSet seeds = parse_seeds(g, options);
  DetectionResult result = detect(g, seeds, method_config(options));

  std::vector<std::int64_t> ids;
  for (int v : result.community) ids.push_back(g.original_id(v));
  std::sort(ids.begin(), ids.end());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) std::printf(" ");
    std::printf("%lld", static_cast<long long>(ids[k]));
  }
  std::printf("\n");
  std::fprintf(stderr,
               "size=%d phi=%.6f phi_sigma=%.6f sigma=%g iterations=%d "
               "converged=%d\n",
               result.community.size(), result.objective_phi,
               result.objective_phi_sigma, result.sigma_used, result.iterations,
               result.converged ? 1 : 0);
  return 0;
}

struct EvalOptions {
  CommonOptions common;
  std::string truth_path;
  int samples = 1000;
  int seeds_per_community = 1;
  std::uint64_t rng_seed = 0;
  int workers = 1;
  int min_comm_size = 3;
  bool timing = false;
  std::string out_path;
  std::string summary_path;
  std::string grid = "0:0.05:1";
};

ExperimentConfig experiment_config(const EvalOptions& options) {
  ExperimentConfig config;
  config.sample_size = options.samples;
  config.seeds_per_community = options.seeds_per_community;
  config.rng_seed = options.rng_seed;
  config.method = method_config(options.common);
  config.workers = options.workers;
  config.measure_time = options.timing;
  config.dataset_name = dataset_stem(options.common.graph_path);
  return config;
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
}

int cmd_eval(const EvalOptions& options) {
  Graph g = load_edge_list(options.common.graph_path,
                           loader_options(options.common.format));
  GroundTruth truth =
      GroundTruth::load(options.truth_path, g,
                        loader_options(options.common.format),
                        options.min_comm_size);
  ExperimentConfig config = experiment_config(options);
  ExperimentResult result = run_experiment(g, truth, config);

  std::ostringstream rows, summary;
  write_rows_csv(rows, result, config);
  write_summary_csv(summary, result, config);
  write_file(options.out_path, rows.str());
  write_file(options.summary_path, summary.str());
  if (options.summary_path.empty()) std::cout << summary.str();
  std::fprintf(stderr, "trials=%d mean_f1=%.4f mean_size=%.1f mean_phi=%.4f\n",
               result.aggregate.trials, result.aggregate.mean_f1,
               result.aggregate.mean_size, result.aggregate.mean_phi);
  return 0;
}

int cmd_sweep_sigma(const EvalOptions& options) {
  Graph g = load_edge_list(options.common.graph_path,
                           loader_options(options.common.format));
  GroundTruth truth =
      GroundTruth::load(options.truth_path, g,
                        loader_options(options.common.format),
                        options.min_comm_size);
  Method method = parse_method(options.common.method);
  if (method != Method::pgd && method != Method::em)
    throw validation_error("sweep-sigma supports pgd and em");

  std::ostringstream out;
  out << "sigma,mean_f1,sd_f1,mean_size,sd_size,mean_phi,sd_phi,trials\n";
  for (double sigma : parse_grid(options.grid)) {
    EvalOptions per_sigma = options;
    per_sigma.common.sigma = sigma;
    per_sigma.common.auto_sigma = false;
    ExperimentConfig config = experiment_config(per_sigma);
    ExperimentResult result = run_experiment(g, truth, config);
    const Aggregate& agg = result.aggregate;
    char line[256];
    std::snprintf(line, sizeof(line), "%.6g,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                  sigma, agg.mean_f1, agg.sd_f1, agg.mean_size, agg.sd_size,
                  agg.mean_phi, agg.sd_phi, agg.trials);
    out << line;
  }
  write_file(options.out_path, out.str());
  if (options.out_path.empty()) std::cout << out.str();
  return 0;
}

struct OracleOptions {
  CommonOptions common;
  double sigma = 0.0;
  std::string scope_spec;
};

int cmd_oracle(const OracleOptions& options) {
  Graph g = load_edge_list(options.common.graph_path,
                           loader_options(options.common.format));
  NodeSet seeds = parse_seeds(g, options.common);

  std::vector<int> scope_nodes;
  if (options.scope_spec.empty()) {
    for (int i = 0; i < g.node_count(); ++i) scope_nodes.push_back(i);
  } else {
    for (double v : parse_double_list(options.scope_spec)) {
      auto mapped = g.internal_id(static_cast<std::int64_t>(v));
      if (!mapped)
        throw validation_error("scope node " +
                               std::to_string(static_cast<long long>(v)) +
                               " not in graph");
      scope_nodes.push_back(*mapped);
    }
  }
  OracleResult best =
      brute_force_optimum(g, seeds, options.sigma, NodeSet(scope_nodes));

  std::vector<std::int64_t> ids;
  for (int v : best.community) ids.push_back(g.original_id(v));
  std::sort(ids.begin(), ids.end());
  std::printf("community:");
  for (std::int64_t id : ids) std::printf(" %lld", static_cast<long long>(id));
  std::printf("\nphi_sigma: %.15g\n", best.phi_sigma);
  std::printf("record: %s\n",
              format_oracle_record(g, seeds, options.sigma, best).c_str());
  return 0;
}

struct CheckOptions {
  CommonOptions common;
  std::string community_path;
  double sigma = 0.0;
  std::string mode = "layers";
};

int cmd_check(const CheckOptions& options) {
  Graph g = load_edge_list(options.common.graph_path,
                           loader_options(options.common.format));
  NodeSet seeds = parse_seeds(g, options.common);
  auto communities = load_communities(options.community_path, g,
                                      loader_options(options.common.format), 1);
  if (communities.empty())
    throw validation_error(options.community_path + ": no community found");
  const NodeSet& community = communities.front();

  CheckMode mode;
  if (options.mode == "layers") {
    mode = CheckMode::layers;
  } else if (options.mode == "exhaustive") {
    mode = CheckMode::exhaustive;
  } else {
    throw validation_error("unknown mode '" + options.mode + "'");
  }

  DenseIsolatedReport report =
      check_dense_isolated(g, community, seeds, options.sigma, mode);
  if (report.holds) {
    std::printf("dense-isolated: yes (sigma=%g, mode=%s)\n", options.sigma,
                options.mode.c_str());
  } else {
    const char* side =
        *report.side == ViolationSide::density ? "density" : "isolation";
    std::printf("dense-isolated: no (%s violated at node %lld, subset size %d)\n",
                side,
                static_cast<long long>(g.original_id(*report.violated_node)),
                report.violated_subset->size());
  }

  auto ab = derive_alpha_beta(g, community);
  if (ab) {
    std::printf("alpha-beta: beta=%g alpha=%g\n", ab->beta, ab->alpha);
  } else {
    std::printf("alpha-beta: not applicable (degree condition fails)\n");
  }

  if (report.holds) {
    RecoveryReport recovery = verify_recovery(g, community, seeds, options.sigma);
    if (recovery.exact) {
      std::printf("recovery: exact (%d iterations em, %d pgd)\n",
                  recovery.em_iterations, recovery.pgd_iterations);
    } else {
      std::printf("recovery: mismatch (%s)\n", recovery.detail.c_str());
    }
  } else {
    std::printf("recovery: skipped (community is not dense-isolated)\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local community detection by direct conductance optimization"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOptions detect_options;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "detect one community from seeds");
  add_common(detect_cmd, detect_options, true);
  add_seed_options(detect_cmd, detect_options);

  EvalOptions eval_options;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "run the ground-truth evaluation protocol");
  add_common(eval_cmd, eval_options.common, true);
  eval_cmd->add_option("truth", eval_options.truth_path, "community file")
      ->required();
  eval_cmd->add_option("--samples", eval_options.samples, "number of trials");
  eval_cmd->add_option("--seeds-per-community", eval_options.seeds_per_community,
                       "seeds drawn per trial");
  eval_cmd->add_option("--rng-seed", eval_options.rng_seed, "sampling seed");
  eval_cmd->add_option("--workers", eval_options.workers, "parallel workers");
  eval_cmd->add_option("--min-comm-size", eval_options.min_comm_size,
                       "drop smaller ground-truth communities");
  eval_cmd->add_flag("--timing", eval_options.timing,
                     "measure wall time per trial (breaks byte-identical reruns)");
  eval_cmd->add_option("--out", eval_options.out_path, "per-trial CSV path");
  eval_cmd->add_option("--summary", eval_options.summary_path, "summary CSV path");

  EvalOptions sweep_options;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep-sigma", "mean F1 per sigma over a grid (pgd or em)");
  add_common(sweep_cmd, sweep_options.common, true);
  sweep_cmd->add_option("truth", sweep_options.truth_path, "community file")
      ->required();
  sweep_cmd->add_option("--grid", sweep_options.grid,
                        "start:step:end or comma list");
  sweep_cmd->add_option("--samples", sweep_options.samples, "number of trials");
  sweep_cmd->add_option("--rng-seed", sweep_options.rng_seed, "sampling seed");
  sweep_cmd->add_option("--workers", sweep_options.workers, "parallel workers");
  sweep_cmd->add_option("--min-comm-size", sweep_options.min_comm_size,
                        "drop smaller ground-truth communities");
  sweep_cmd->add_option("--out", sweep_options.out_path, "output CSV path");

  OracleOptions oracle_options;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "exhaustive global optimum over a small scope");
  add_common(oracle_cmd, oracle_options.common, false);
  add_seed_options(oracle_cmd, oracle_options.common);
  oracle_cmd->add_option("--sigma", oracle_options.sigma, "sigma value");
  oracle_cmd->add_option("--scope", oracle_options.scope_spec,
                         "comma list of candidate nodes (default: all)");

  CheckOptions check_options;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "dense-isolated / alpha-beta / recovery verdicts");
  add_common(check_cmd, check_options.common, false);
  add_seed_options(check_cmd, check_options.common);
  check_cmd->add_option("--community", check_options.community_path,
                        "file with the community on its first line")
      ->required();
  check_cmd->add_option("--sigma", check_options.sigma, "sigma value");
  check_cmd->add_option("--mode", check_options.mode, "layers|exhaustive");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(detect_cmd)) return cmd_detect(detect_options);
    if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_options);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep_sigma(sweep_options);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(oracle_options);
    if (app.got_subcommand(check_cmd)) return cmd_check(check_options);
  } catch (const degenerate_seed_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
