#include "relset/types.hpp"

namespace relset {

const char* to_string(SimKind kind) {
  switch (kind) {
    case SimKind::Jaccard: return "jac";
    case SimKind::Eds: return "eds";
    case SimKind::NEds: return "neds";
  }
  return "?";
}

const char* to_string(Metric metric) {
  return metric == Metric::Similarity ? "similarity" : "containment";
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Weighted: return "weighted";
    case Scheme::Unweighted: return "unweighted";
    case Scheme::Skyline: return "skyline";
    case Scheme::Dichotomy: return "dichotomy";
    case Scheme::CombinedUnweighted: return "combined_unweighted";
  }
  return "?";
}

SimKind parse_sim_kind(const std::string& name) {
  if (name == "jac" || name == "jaccard") return SimKind::Jaccard;
  if (name == "eds") return SimKind::Eds;
  if (name == "neds") return SimKind::NEds;
  throw ConfigError("unknown similarity function: " + name);
}

Metric parse_metric(const std::string& name) {
  if (name == "similarity") return Metric::Similarity;
  if (name == "containment") return Metric::Containment;
  throw ConfigError("unknown metric: " + name);
}

Scheme parse_scheme(const std::string& name) {
  if (name == "weighted") return Scheme::Weighted;
  if (name == "unweighted") return Scheme::Unweighted;
  if (name == "skyline") return Scheme::Skyline;
  if (name == "dichotomy") return Scheme::Dichotomy;
  if (name == "combined_unweighted" || name == "combined-unweighted") {
    return Scheme::CombinedUnweighted;
  }
  throw ConfigError("unknown signature scheme: " + name);
}

}  // namespace relset
