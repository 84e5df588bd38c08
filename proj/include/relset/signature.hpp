#pragma once

#include <cstddef>
#include <vector>

#include "relset/invindex.hpp"
#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

struct ElementSignature {
  std::vector<TokenId> tokens;  // l_i, sorted
  std::size_t positions = 0;    // |l_i|, counting repeated q-chunks
  double bound = 1.0;           // b_i: 0 when cut to the similarity threshold count
  double weighted_bound = 1.0;  // (|r|-|l|)/|r| or |r|/(|r|+|l|)
  bool cut = false;
};

struct Signature {
  std::vector<ElementSignature> elements;
  std::vector<TokenId> flattened;  // sorted union of l_i
  // Bounds do not drop below the threshold; every size-passing set must be verified.
  bool degenerate = false;

  double bound_sum() const;
};

double theta(const SetRecord& r, double delta);
// Threshold used by every pruning comparison: theta lowered by the
// verification tolerance and a small allowance for rounding.
double pruning_threshold(const SetRecord& r, double delta);

// Number of lowest cost tokens (or q-chunks) a signature must keep so that
// any element missing all of them has similarity below alpha.
std::size_t simthresh_count(const Element& e, double alpha, TokenMode mode);

// Largest q usable in edit mode; throws ConfigError when no q >= 1 works.
// Returns kUnboundedQ when nothing constrains q.
inline constexpr unsigned kUnboundedQ = ~0u;
unsigned max_q(double delta, double alpha);

// Bound of one element when the given number of tokens or chunks is kept.
double element_bound(const Element& e, std::size_t positions, TokenMode mode);

// Cheapest-first greedy over cost |I[t]| and bound reduction. alpha > 0 only
// tightens b_i of elements that happen to reach simthresh_count.
Signature weighted_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                             TokenMode mode, double alpha = 0.0);
// Drops the ceil(theta)-1 token occurrences with the longest lists.
Signature unweighted_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                               TokenMode mode = TokenMode::Words);
Signature skyline_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                            double alpha, TokenMode mode);
Signature dichotomy_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                              double alpha, TokenMode mode);
Signature combined_unweighted_signature(const SetRecord& r, const InvertedIndex& index,
                                        double delta, double alpha, TokenMode mode);

Signature make_signature(Scheme scheme, const SetRecord& r, const InvertedIndex& index,
                         double delta, const SimConfig& sim);

}  // namespace relset
