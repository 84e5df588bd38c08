#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relset {

using TokenId = std::uint32_t;
using SetIndex = std::uint32_t;
using ElementIndex = std::uint32_t;

// Tolerance applied to the relatedness threshold at verification time.
inline constexpr double kVerifyEpsilon = 1e-9;

enum class SimKind { Jaccard, Eds, NEds };
enum class Metric { Similarity, Containment };
enum class Scheme { Weighted, Unweighted, Skyline, Dichotomy, CombinedUnweighted };
enum class TokenMode { Words, QGrams };

struct SimConfig {
  SimKind kind = SimKind::Jaccard;
  double alpha = 0.0;
};

struct FilterFlags {
  bool size = true;
  bool check = true;
  bool nn = true;
};

// Invalid combination of user supplied parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unreadable input data.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline TokenMode token_mode(SimKind kind) {
  return kind == SimKind::Jaccard ? TokenMode::Words : TokenMode::QGrams;
}

const char* to_string(SimKind kind);
const char* to_string(Metric metric);
const char* to_string(Scheme scheme);

SimKind parse_sim_kind(const std::string& name);
Metric parse_metric(const std::string& name);
Scheme parse_scheme(const std::string& name);

}  // namespace relset
