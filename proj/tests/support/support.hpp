#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "relset/engine.hpp"
#include "relset/ingest.hpp"
#include "relset/matching.hpp"
#include "relset/tokenize.hpp"

namespace relset::testing {

// Tokenized collection plus optional separate references. Heap allocated so
// engines may keep spans into it.
struct Corpus {
  TokenDictionary dict;
  std::vector<SetRecord> sets;
  std::vector<SetRecord> refs;
};

std::unique_ptr<Corpus> make_corpus(const std::vector<RawSet>& data,
                                    const std::vector<RawSet>& refs, TokenMode mode,
                                    unsigned q = 1);

// The running example: tokens t1..t12, reference R = {r1, r2, r3} and
// collection S1..S4, laid out as words.
std::vector<RawSet> sample_collection();
RawSet sample_reference();
// Word standing for t_k, 1 <= k <= 12.
std::string sample_word(int k);

struct Sample {
  std::unique_ptr<Corpus> corpus;
  const SetRecord& r() const { return corpus->refs.front(); }
  TokenId t(int k) const;
};
Sample make_sample();

// Random corpora shaped as 1-6 elements per set with clusters of near copies.
std::vector<RawSet> random_word_sets(std::mt19937_64& rng, std::size_t n);
std::vector<RawSet> random_string_sets(std::mt19937_64& rng, std::size_t n);

// Independent oracles.
std::size_t oracle_levenshtein(const std::u32string& a, const std::u32string& b);
double oracle_word_jaccard(const std::string& a, const std::string& b);
double oracle_matching(const WeightMatrix& w);

// Compares two pair lists on ids and scores. Fills diff on mismatch.
bool same_pairs(const SearchResult& a, const SearchResult& b, double tol, std::string* diff);

bool monotone(const PassStats& s);

}  // namespace relset::testing
