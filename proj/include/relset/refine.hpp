#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "relset/invindex.hpp"
#include "relset/signature.hpp"
#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

struct Candidate {
  SetIndex set = 0;
  std::vector<ElementIndex> matched;  // ascending reference element indices
  // Largest admitted phi per matched element; empty with the check filter off.
  std::vector<double> best_sim;

  bool has_best() const { return !best_sim.empty(); }
};

// Candidates ordered by set index.
using CandidateMap = std::vector<Candidate>;

struct CheckOptions {
  bool check = true;
  bool memoize = true;
};

struct Selection {
  CandidateMap candidates;
  std::size_t reached = 0;  // distinct eligible sets met in the postings
};

using SetPredicate = std::function<bool(SetIndex)>;

// Probes the postings of every l_i token. With the check filter on, a pair
// (r_i, s) is admitted iff phi >= min(alpha, w_i) (w_i when alpha = 0), where
// w_i is the weighted bound of l_i, and only sets with an admitted pair are kept.
Selection select_and_check(const SetRecord& r, const Signature& sig,
                           std::span<const SetRecord> data, const InvertedIndex& index,
                           const SimConfig& sim, const CheckOptions& opts,
                           const SetPredicate& eligible);

// Upper bound on max_s phi_alpha(r, s) over the elements of one indexed set.
// Exact for Jaccard; in edit mode elements sharing no q-gram with r are
// bounded by |r| / (|r| + ceil(|r|/q)).
double nn_search(const Element& r, const SetRecord& s, SetIndex s_index,
                 const InvertedIndex& index, const SimConfig& sim);

struct NNOptions {
  bool early_termination = true;
};

// True iff the nearest neighbour bound of the matching reaches the pruning threshold.
bool nn_filter(const SetRecord& r, const Signature& sig, const Candidate& cand,
               const SetRecord& s, const InvertedIndex& index, const SimConfig& sim,
               double threshold, const NNOptions& opts = {});

}  // namespace relset
