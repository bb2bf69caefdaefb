#include "sigcond/detect.hpp"

#include "sigcond/errors.hpp"

namespace sigcond {

std::string method_name(Method method) {
  switch (method) {
    case Method::pgd: return "pgd";
    case Method::em: return "em";
    case Method::ppr: return "ppr";
    case Method::yl: return "yl";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "pgd") return Method::pgd;
  if (name == "em") return Method::em;
  if (name == "ppr") return Method::ppr;
  if (name == "yl") return Method::yl;
  throw validation_error("unknown method '" + name + "'");
}

DetectionResult detect(const Graph& g, const NodeSet& seeds,
                       const MethodConfig& config) {
  switch (config.method) {
    case Method::pgd: {
      PgdParams params = config.pgd;
      params.sigma = config.sigma;
      params.neighborhood_limit = config.neighborhood_limit;
      if (config.auto_sigma)
        return detect_auto_sigma(g, seeds, config.schedule, params);
      return pgd_detect(g, seeds, params);
    }
    case Method::em: {
      EmParams params = config.em;
      params.sigma = config.sigma;
      params.neighborhood_limit = config.neighborhood_limit;
      if (config.auto_sigma)
        return detect_auto_sigma(g, seeds, config.schedule, params);
      return em_detect(g, seeds, params);
    }
    case Method::ppr:
      if (config.auto_sigma)
        throw validation_error("auto-sigma applies to pgd and em only");
      return ppr_detect(g, seeds, config.ppr, SweepMode::global, config.yl);
    case Method::yl:
      if (config.auto_sigma)
        throw validation_error("auto-sigma applies to pgd and em only");
      return ppr_detect(g, seeds, config.ppr, SweepMode::yl, config.yl);
  }
  throw validation_error("unknown method");
}

}  // namespace sigcond
