#include "relset/tokenize.hpp"

#include <algorithm>

namespace relset {

namespace {

[[noreturn]] void utf8_fail(const char* what, std::size_t at) {
  throw IngestError(std::string("invalid UTF-8 (") + what + ") at byte " + std::to_string(at));
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  auto fail = [&](const char* what) { utf8_fail(what, i); };
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      fail("bad lead byte");
    }
    if (i + len > bytes.size()) fail("truncated sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto bk = static_cast<unsigned char>(bytes[i + k]);
      if ((bk & 0xC0) != 0x80) fail("bad continuation byte");
      cp = (cp << 6) | (bk & 0x3F);
    }
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) fail("overlong encoding");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point");
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

TokenId TokenDictionary::intern(std::u32string_view token) {
  std::u32string key(token);
  auto [it, inserted] = ids_.try_emplace(key, static_cast<TokenId>(tokens_.size()));
  if (inserted) tokens_.push_back(std::move(key));
  return it->second;
}

TokenId TokenDictionary::find(std::u32string_view token) const {
  auto it = ids_.find(std::u32string(token));
  return it == ids_.end() ? static_cast<TokenId>(tokens_.size()) : it->second;
}

namespace {

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

void sort_unique(std::vector<TokenId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<TokenId> tokenize_words(TokenDictionary& dict, std::u32string_view text) {
  std::vector<TokenId> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.push_back(dict.intern(text.substr(start, i - start)));
  }
  sort_unique(out);
  return out;
}

std::vector<TokenId> qgrams(TokenDictionary& dict, std::u32string_view text, unsigned q) {
  std::u32string padded(text);
  padded.append(q - 1, kSentinel);
  std::vector<TokenId> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    out.push_back(dict.intern(std::u32string_view(padded).substr(i, q)));
  }
  sort_unique(out);
  return out;
}

std::vector<TokenId> qchunks(TokenDictionary& dict, std::u32string_view text, unsigned q) {
  std::vector<TokenId> out;
  out.reserve((text.size() + q - 1) / q);
  for (std::size_t i = 0; i < text.size(); i += q) {
    std::u32string chunk(text.substr(i, q));
    chunk.resize(q, kSentinel);
    out.push_back(dict.intern(chunk));
  }
  return out;
}

Tokenizer::Tokenizer(TokenDictionary& dict, TokenMode mode, unsigned q)
    : dict_(&dict), mode_(mode), q_(q) {
  if (q_ == 0) throw ConfigError("q must be at least 1");
}

bool Tokenizer::make_element(std::string raw, Element& out) const {
  std::u32string text = decode_utf8(raw);
  if (text.find(kSentinel) != std::u32string::npos) {
    throw IngestError("input contains the reserved code point U+FFFF");
  }
  if (mode_ == TokenMode::Words) {
    out.tokens = tokenize_words(*dict_, text);
    if (out.tokens.empty()) return false;
    out.chunks.clear();
  } else {
    if (text.empty()) return false;
    out.tokens = qgrams(*dict_, text, q_);
    out.chunks = qchunks(*dict_, text, q_);
  }
  out.raw = std::move(raw);
  out.text = std::move(text);
  return true;
}

SetRecord Tokenizer::make_set(std::string id, const std::vector<std::string>& raws) const {
  SetRecord set;
  set.id = std::move(id);
  set.elements.reserve(raws.size());
  for (const auto& raw : raws) {
    Element e;
    if (make_element(raw, e)) set.elements.push_back(std::move(e));
  }
  return set;
}

}  // namespace relset
