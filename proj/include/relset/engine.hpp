#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relset/invindex.hpp"
#include "relset/refine.hpp"
#include "relset/signature.hpp"
#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

struct RelatednessConfig {
  Metric metric = Metric::Similarity;
  SimConfig sim;
  double delta = 0.7;
  unsigned q = 0;  // edit mode q-gram length, 0 selects max_q
  Scheme scheme = Scheme::Weighted;
  FilterFlags filters;
  bool reduction = false;
  unsigned workers = 1;
  bool memoize = true;
  bool early_termination = true;

  // Throws ConfigError on an illegal combination.
  void validate() const;
  // Validated copy with q resolved and alpha-dependent schemes collapsed for alpha = 0.
  RelatednessConfig normalized() const;
  TokenMode mode() const { return token_mode(sim.kind); }
};

struct PassStats {
  std::size_t passes = 0;
  std::size_t sets_scanned = 0;
  std::size_t size_filtered = 0;
  std::size_t candidates_initial = 0;
  std::size_t after_check = 0;
  std::size_t after_nn = 0;
  std::size_t matchings_computed = 0;
  std::size_t verified = 0;
  std::size_t degenerate_signatures = 0;
  double signature_seconds = 0.0;
  double selection_seconds = 0.0;
  double nn_seconds = 0.0;
  double verify_seconds = 0.0;

  PassStats& operator+=(const PassStats& o);
};

struct RelatedPair {
  std::string r_id;
  std::string s_id;
  double score = 0.0;
  double relatedness = 0.0;
};

struct SearchResult {
  std::vector<RelatedPair> pairs;  // sorted by (r_id, s_id)
  PassStats stats;
};

// Which pairs of a reference and the indexed collection are considered.
struct PassScope {
  std::optional<SetIndex> self;  // index of the reference inside the collection
  bool only_later = false;       // keep s > self only (similarity self-join)
};

class Engine {
 public:
  // Indexes data and records posting counts in dict. Sets must have been
  // tokenized with cfg.normalized().
  Engine(std::span<const SetRecord> data, TokenDictionary& dict, const RelatednessConfig& cfg);

  const RelatednessConfig& config() const { return cfg_; }
  const InvertedIndex& index() const { return index_; }
  std::span<const SetRecord> data() const { return data_; }

  SearchResult search(const SetRecord& r, const PassScope& scope = {}) const;
  // Every reference against the collection.
  SearchResult discover(std::span<const SetRecord> refs) const;
  // The collection against itself without identity pairs. Similarity emits
  // each unordered pair once, containment both orders.
  SearchResult discover_self() const;

 private:
  RelatednessConfig cfg_;
  std::span<const SetRecord> data_;
  InvertedIndex index_;
};

bool passes_size_filter(Metric metric, double delta, std::size_t r_size, std::size_t s_size);

// Exhaustive reference: a full matching for every considered pair.
SearchResult brute_force(std::span<const SetRecord> refs, std::span<const SetRecord> data,
                         const RelatednessConfig& cfg);
SearchResult brute_force_self(std::span<const SetRecord> data, const RelatednessConfig& cfg);
SearchResult brute_force_search(const SetRecord& r, std::span<const SetRecord> data,
                                const RelatednessConfig& cfg);

}  // namespace relset
