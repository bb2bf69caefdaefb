// Single entry point used by the CLI and the evaluation harness to run
// any of the configured detectors on one seed set.
#pragma once

#include <string>

#include "sigcond/diffusion.hpp"
#include "sigcond/graph.hpp"
#include "sigcond/optim.hpp"

namespace sigcond {

enum class Method { pgd, em, ppr, yl };

std::string method_name(Method method);
Method parse_method(const std::string& name);

struct MethodConfig {
  Method method = Method::pgd;
  double sigma = 0.0;
  bool auto_sigma = false;
  SigmaSchedule schedule = SigmaSchedule::default_grid();
  int neighborhood_limit = 1000;
  PgdParams pgd;
  EmParams em;
  PprParams ppr;
  YlParams yl;
};

DetectionResult detect(const Graph& g, const NodeSet& seeds,
                       const MethodConfig& config);

}  // namespace sigcond
