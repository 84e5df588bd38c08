#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relset/types.hpp"

namespace relset {

// Padding code point appended to q-grams and the final q-chunk. Inputs
// containing it are rejected at ingestion.
inline constexpr char32_t kSentinel = U'\uFFFF';

std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

class TokenDictionary {
 public:
  TokenId intern(std::u32string_view token);
  // Returns size() when the token is unknown.
  TokenId find(std::u32string_view token) const;
  const std::u32string& token(TokenId id) const { return tokens_[id]; }
  std::size_t size() const { return tokens_.size(); }

  // |I[t]|, zero for tokens absent from the indexed collection.
  std::size_t posting_count(TokenId id) const {
    return id < counts_.size() ? counts_[id] : 0;
  }
  void set_posting_counts(std::vector<std::size_t> counts) { counts_ = std::move(counts); }

 private:
  std::unordered_map<std::u32string, TokenId> ids_;
  std::vector<std::u32string> tokens_;
  std::vector<std::size_t> counts_;
};

struct Element {
  std::string raw;
  std::u32string text;
  std::vector<TokenId> tokens;  // sorted, distinct: words or q-grams
  std::vector<TokenId> chunks;  // q-chunk ids in string order, edit mode only

  std::size_t length() const { return text.size(); }
};

struct SetRecord {
  std::string id;
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }
};

// Sorted distinct word ids of a whitespace separated string.
std::vector<TokenId> tokenize_words(TokenDictionary& dict, std::u32string_view text);
// Distinct q-gram ids; the string is padded with q-1 sentinels at the end.
std::vector<TokenId> qgrams(TokenDictionary& dict, std::u32string_view text, unsigned q);
// ceil(len/q) non-overlapping chunks, the last one padded with sentinels.
std::vector<TokenId> qchunks(TokenDictionary& dict, std::u32string_view text, unsigned q);

// Turns raw element strings into elements for one token mode. Elements
// without tokens are dropped.
class Tokenizer {
 public:
  Tokenizer(TokenDictionary& dict, TokenMode mode, unsigned q = 1);

  bool make_element(std::string raw, Element& out) const;
  SetRecord make_set(std::string id, const std::vector<std::string>& raws) const;

  TokenMode mode() const { return mode_; }
  unsigned q() const { return q_; }

 private:
  TokenDictionary* dict_;
  TokenMode mode_;
  unsigned q_;
};

}  // namespace relset
