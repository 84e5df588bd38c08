#include "relset/invindex.hpp"

#include <algorithm>

namespace relset {

InvertedIndex::InvertedIndex(std::span<const SetRecord> sets, TokenDictionary& dict) {
  const std::size_t vocab = dict.size();
  std::vector<std::size_t> counts(vocab, 0);
  set_sizes_.reserve(sets.size());
  for (const auto& set : sets) {
    set_sizes_.push_back(set.size());
    for (const auto& e : set.elements) {
      for (TokenId t : e.tokens) ++counts[t];
    }
  }
  offsets_.assign(vocab + 1, 0);
  for (std::size_t t = 0; t < vocab; ++t) offsets_[t + 1] = offsets_[t] + counts[t];
  postings_.resize(offsets_[vocab]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Sets and elements are visited in order, so every list comes out sorted.
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& set = sets[s];
    for (std::size_t e = 0; e < set.size(); ++e) {
      for (TokenId t : set.elements[e].tokens) {
        postings_[cursor[t]++] = Posting{static_cast<SetIndex>(s), static_cast<ElementIndex>(e)};
      }
    }
  }
  sorted_sizes_ = set_sizes_;
  std::sort(sorted_sizes_.begin(), sorted_sizes_.end());
  for (std::size_t sz : sorted_sizes_) {
    if (histogram_.empty() || histogram_.back().first != sz) histogram_.emplace_back(sz, 0);
    ++histogram_.back().second;
  }
  dict.set_posting_counts(std::move(counts));
}

std::span<const Posting> InvertedIndex::postings(TokenId t) const {
  if (t + 1 >= offsets_.size()) return {};
  return std::span<const Posting>(postings_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]);
}

std::span<const Posting> InvertedIndex::postings_in_set(TokenId t, SetIndex set) const {
  auto list = postings(t);
  auto lo = std::lower_bound(list.begin(), list.end(), set,
                             [](const Posting& p, SetIndex s) { return p.set < s; });
  auto hi = std::upper_bound(lo, list.end(), set,
                             [](SetIndex s, const Posting& p) { return s < p.set; });
  return list.subspan(static_cast<std::size_t>(lo - list.begin()), static_cast<std::size_t>(hi - lo));
}

std::size_t InvertedIndex::count_sets_with_size(std::size_t lo, std::size_t hi) const {
  if (lo > hi) return 0;
  auto a = std::lower_bound(sorted_sizes_.begin(), sorted_sizes_.end(), lo);
  auto b = std::upper_bound(a, sorted_sizes_.end(), hi);
  return static_cast<std::size_t>(b - a);
}

}  // namespace relset
