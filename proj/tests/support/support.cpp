#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace relset::testing {

std::unique_ptr<Corpus> make_corpus(const std::vector<RawSet>& data,
                                    const std::vector<RawSet>& refs, TokenMode mode,
                                    unsigned q) {
  auto c = std::make_unique<Corpus>();
  Tokenizer tok(c->dict, mode, q);
  c->sets = tokenize_sets(data, tok, 0);
  c->refs = tokenize_sets(refs, tok, 0);
  return c;
}

namespace {

const char* const kSampleWords[] = {"77",     "Mass",  "Ave",     "5th",     "St", "Boston",
                                    "02115",  "MA",    "Seattle", "WA",      "Chicago", "IL"};

std::string words(std::initializer_list<int> ids) {
  std::string out;
  for (int k : ids) {
    if (!out.empty()) out += ' ';
    out += sample_word(k);
  }
  return out;
}

}  // namespace

std::string sample_word(int k) { return kSampleWords[k - 1]; }

std::vector<RawSet> sample_collection() {
  return {
      {"S1", {words({2, 3, 5, 6, 7}), words({1, 2, 4, 5, 6}), words({1, 2, 3, 4, 7})}},
      {"S2", {words({1, 6, 8}), words({1, 4, 5, 6, 7}), words({1, 2, 3, 7, 9})}},
      {"S3", {words({1, 2, 3, 4, 6, 8}), words({2, 3, 11, 12}), words({1, 2, 3, 5})}},
      {"S4", {words({1, 2, 3, 8}), words({4, 5, 7, 9, 10}), words({1, 4, 5, 6, 9})}},
  };
}

RawSet sample_reference() {
  return {"R", {words({1, 2, 3, 6, 8}), words({4, 5, 7, 9, 10}), words({1, 4, 5, 11, 12})}};
}

TokenId Sample::t(int k) const {
  std::string w = sample_word(k);
  return corpus->dict.find(std::u32string(w.begin(), w.end()));
}

Sample make_sample() {
  return Sample{make_corpus(sample_collection(), {sample_reference()}, TokenMode::Words)};
}

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<std::string> word_element(std::mt19937_64& rng, std::size_t vocab) {
  std::set<std::size_t> ids;
  const std::size_t n = uniform(rng, 1, 8);
  while (ids.size() < n) ids.insert(uniform(rng, 0, vocab - 1));
  std::vector<std::string> out;
  for (auto id : ids) out.push_back("w" + std::to_string(id));
  return out;
}

std::string join(const std::vector<std::string>& ws) {
  std::string out;
  for (const auto& w : ws) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string mutate_words(std::mt19937_64& rng, const std::string& e, std::size_t vocab) {
  auto ws = split_words(e);
  const std::size_t edits = uniform(rng, 1, 2);
  for (std::size_t k = 0; k < edits; ++k) {
    const std::string fresh = "w" + std::to_string(uniform(rng, 0, vocab - 1));
    const std::size_t op = uniform(rng, 0, 2);
    if (op == 0 && ws.size() > 1) {
      ws.erase(ws.begin() + static_cast<long>(uniform(rng, 0, ws.size() - 1)));
    } else if (op == 1 && ws.size() < 8) {
      if (std::find(ws.begin(), ws.end(), fresh) == ws.end()) ws.push_back(fresh);
    } else if (std::find(ws.begin(), ws.end(), fresh) == ws.end()) {
      ws[uniform(rng, 0, ws.size() - 1)] = fresh;
    }
  }
  return join(ws);
}

std::string random_string(std::mt19937_64& rng) {
  static const std::string alphabet = "abcde";
  std::string s(uniform(rng, 4, 20), 'a');
  for (auto& c : s) c = alphabet[uniform(rng, 0, alphabet.size() - 1)];
  return s;
}

std::string mutate_string(std::mt19937_64& rng, std::string s) {
  static const std::string alphabet = "abcde";
  const std::size_t edits = uniform(rng, 1, 3);
  for (std::size_t k = 0; k < edits; ++k) {
    const char c = alphabet[uniform(rng, 0, alphabet.size() - 1)];
    const std::size_t op = uniform(rng, 0, 2);
    if (op == 0 && s.size() > 4) {
      s.erase(uniform(rng, 0, s.size() - 1), 1);
    } else if (op == 1 && s.size() < 20) {
      s.insert(s.begin() + static_cast<long>(uniform(rng, 0, s.size())), c);
    } else {
      s[uniform(rng, 0, s.size() - 1)] = c;
    }
  }
  return s;
}

template <class Fresh, class Mutate>
std::vector<RawSet> clustered(std::mt19937_64& rng, std::size_t n, Fresh fresh, Mutate mutate) {
  std::vector<RawSet> out;
  for (std::size_t k = 0; k < n; ++k) {
    RawSet set;
    set.id = "set" + std::to_string(k);
    if (out.empty() || chance(rng, 0.35)) {
      const std::size_t m = uniform(rng, 1, 6);
      for (std::size_t e = 0; e < m; ++e) set.elements.push_back(fresh());
    } else {
      const RawSet& base = pick(rng, out);
      for (const auto& e : base.elements) {
        if (chance(rng, 0.12) && base.elements.size() > 1) continue;
        set.elements.push_back(chance(rng, 0.35) ? mutate(e) : e);
      }
      if (set.elements.empty()) set.elements.push_back(fresh());
      while (set.elements.size() < 6 && chance(rng, 0.2)) set.elements.push_back(fresh());
    }
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

std::vector<RawSet> random_word_sets(std::mt19937_64& rng, std::size_t n) {
  const std::size_t vocab = uniform(rng, 10, 24);
  return clustered(
      rng, n, [&] { return join(word_element(rng, vocab)); },
      [&](const std::string& e) { return mutate_words(rng, e, vocab); });
}

std::vector<RawSet> random_string_sets(std::mt19937_64& rng, std::size_t n) {
  return clustered(
      rng, n, [&] { return random_string(rng); },
      [&](const std::string& e) { return mutate_string(rng, e); });
}

std::size_t oracle_levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t best = d[i - 1][j - 1] + (a[i - 1] != b[j - 1]);
      best = std::min(best, d[i - 1][j] + 1);
      best = std::min(best, d[i][j - 1] + 1);
      d[i][j] = best;
    }
  }
  return d[a.size()][b.size()];
}

double oracle_word_jaccard(const std::string& a, const std::string& b) {
  auto wa = split_words(a), wb = split_words(b);
  std::set<std::string> sa(wa.begin(), wa.end()), sb(wb.begin(), wb.end());
  std::set<std::string> inter, uni;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(inter, inter.end()));
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
  return uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

double oracle_matching(const WeightMatrix& w) {
  // Pad to a square and try every permutation.
  const std::size_t n = std::max(w.rows, w.cols);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < w.rows && perm[i] < w.cols) s += w.at(i, perm[i]);
    }
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool same_pairs(const SearchResult& a, const SearchResult& b, double tol, std::string* diff) {
  std::ostringstream msg;
  bool ok = a.pairs.size() == b.pairs.size();
  if (!ok) msg << "pair counts " << a.pairs.size() << " vs " << b.pairs.size() << "; ";
  const std::size_t n = std::min(a.pairs.size(), b.pairs.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = a.pairs[k];
    const auto& y = b.pairs[k];
    if (x.r_id != y.r_id || x.s_id != y.s_id || std::abs(x.score - y.score) > tol) {
      msg << "first difference at " << k << ": (" << x.r_id << "," << x.s_id << "," << x.score
          << ") vs (" << y.r_id << "," << y.s_id << "," << y.score << ")";
      ok = false;
      break;
    }
  }
  if (!ok && a.pairs.size() != b.pairs.size()) {
    std::set<std::pair<std::string, std::string>> sa, sb;
    for (const auto& p : a.pairs) sa.insert({p.r_id, p.s_id});
    for (const auto& p : b.pairs) sb.insert({p.r_id, p.s_id});
    for (const auto& p : sa) {
      if (!sb.count(p)) {
        msg << " only in first: " << p.first << "," << p.second;
        break;
      }
    }
    for (const auto& p : sb) {
      if (!sa.count(p)) {
        msg << " only in second: " << p.first << "," << p.second;
        break;
      }
    }
  }
  if (!ok && diff) *diff = msg.str();
  return ok;
}

bool monotone(const PassStats& s) {
  return s.candidates_initial >= s.after_check && s.after_check >= s.after_nn &&
         s.after_nn >= s.verified && s.matchings_computed == s.after_nn &&
         s.size_filtered <= s.sets_scanned;
}

}  // namespace relset::testing
