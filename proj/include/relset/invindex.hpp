#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

struct Posting {
  SetIndex set;
  ElementIndex element;

  friend bool operator==(const Posting&, const Posting&) = default;
};

// Token -> (set, element) postings, sorted by set then element.
class InvertedIndex {
 public:
  InvertedIndex() = default;
  // Indexes Element::tokens of every set. Writes |I[t]| into the dictionary.
  InvertedIndex(std::span<const SetRecord> sets, TokenDictionary& dict);

  std::span<const Posting> postings(TokenId t) const;
  // Run of postings of t inside one set, located by binary search.
  std::span<const Posting> postings_in_set(TokenId t, SetIndex set) const;
  std::size_t list_length(TokenId t) const { return postings(t).size(); }

  std::size_t set_count() const { return set_sizes_.size(); }
  std::size_t set_size(SetIndex set) const { return set_sizes_[set]; }
  // Number of indexed sets whose size lies in [lo, hi].
  std::size_t count_sets_with_size(std::size_t lo, std::size_t hi) const;
  // (size, number of sets) ascending by size.
  const std::vector<std::pair<std::size_t, std::size_t>>& size_histogram() const {
    return histogram_;
  }

 private:
  std::vector<std::size_t> offsets_;  // size vocabulary + 1
  std::vector<Posting> postings_;
  std::vector<std::size_t> set_sizes_;
  std::vector<std::size_t> sorted_sizes_;
  std::vector<std::pair<std::size_t, std::size_t>> histogram_;
};

}  // namespace relset
