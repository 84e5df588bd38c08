#include "relset/signature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace relset {

double Signature::bound_sum() const {
  double s = 0.0;
  for (const auto& e : elements) s += e.bound;
  return s;
}

double theta(const SetRecord& r, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  return delta * static_cast<double>(r.size());
}

double pruning_threshold(const SetRecord& r, double delta) {
  const double n = static_cast<double>(r.size());
  return theta(r, delta) - kVerifyEpsilon * n - 1e-9 * (n + 1.0);
}

std::size_t simthresh_count(const Element& e, double alpha, TokenMode mode) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (mode == TokenMode::Words) {
    const double x = (1.0 - alpha) * static_cast<double>(e.tokens.size());
    return static_cast<std::size_t>(std::floor(x + 1e-9)) + 1;
  }
  const double x = (1.0 - alpha) / alpha * static_cast<double>(e.length());
  const std::size_t count = static_cast<std::size_t>(std::floor(x + 1e-9)) + 1;
  return std::min(count, e.chunks.size());
}

namespace {

// Largest integer strictly below x, robust to x landing just above an integer.
long below(double x) { return static_cast<long>(std::ceil(x - 1e-9)) - 1; }

}  // namespace

unsigned max_q(double delta, double alpha) {
  long q = -1;
  auto tighten = [&](long b) { q = q < 0 ? b : std::min(q, b); };
  if (delta < 1.0) tighten(below(delta / (1.0 - delta)));
  if (alpha > 0.0) tighten(below(alpha / (1.0 - alpha)));
  if (q < 0 && delta >= 1.0 && alpha <= 0.0) return kUnboundedQ;
  if (q < 1) {
    throw ConfigError("no q-gram length q >= 1 satisfies q < delta/(1-delta) and q < alpha/(1-alpha)");
  }
  return static_cast<unsigned>(q);
}

double element_bound(const Element& e, std::size_t positions, TokenMode mode) {
  if (mode == TokenMode::Words) {
    const double n = static_cast<double>(e.tokens.size());
    return (n - static_cast<double>(positions)) / n;
  }
  const double n = static_cast<double>(e.length());
  return n / (n + static_cast<double>(positions));
}

namespace {

struct Unit {
  TokenId token;
  std::uint32_t mult;
};

struct Occurrence {
  std::uint32_t element;
  std::uint32_t mult;
};

struct TokenEntry {
  TokenId token;
  std::size_t cost;
  std::vector<Occurrence> occ;
};

// Per-call view of R: the selectable units of each element and the tokens
// shared between elements.
struct Context {
  const SetRecord* r;
  TokenMode mode;
  double alpha;
  double threshold;
  std::vector<std::vector<Unit>> units;
  std::vector<TokenEntry> tokens;  // ordered by token id
  std::unordered_map<TokenId, std::size_t> slot;

  Context(const SetRecord& set, const InvertedIndex& index, double delta, TokenMode m, double a)
      : r(&set), mode(m), alpha(a), threshold(pruning_threshold(set, delta)) {
    units.resize(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Element& e = set.elements[i];
      if (mode == TokenMode::Words) {
        for (TokenId t : e.tokens) units[i].push_back({t, 1});
      } else {
        std::vector<TokenId> c = e.chunks;
        std::sort(c.begin(), c.end());
        for (std::size_t k = 0; k < c.size();) {
          std::size_t k2 = k;
          while (k2 < c.size() && c[k2] == c[k]) ++k2;
          units[i].push_back({c[k], static_cast<std::uint32_t>(k2 - k)});
          k = k2;
        }
      }
    }
    std::vector<TokenId> all;
    for (const auto& u : units) for (const auto& x : u) all.push_back(x.token);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    tokens.reserve(all.size());
    for (TokenId t : all) {
      slot.emplace(t, tokens.size());
      tokens.push_back({t, index.list_length(t), {}});
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
      for (const auto& x : units[i]) {
        tokens[slot.at(x.token)].occ.push_back({static_cast<std::uint32_t>(i), x.mult});
      }
    }
  }

  // Count an element must reach to be cut; unreachable when the chunk cap of
  // simthresh_count would be the binding term.
  std::size_t count(std::size_t i) const {
    const Element& e = r->elements[i];
    const std::size_t c = simthresh_count(e, alpha, mode);
    if (mode == TokenMode::QGrams && c == e.chunks.size()) {
      const double x = (1.0 - alpha) / alpha * static_cast<double>(e.length());
      if (static_cast<std::size_t>(std::floor(x + 1e-9)) + 1 > c) return c + 1;
    }
    return c;
  }
  double bound(std::size_t i, std::size_t positions) const {
    return element_bound(r->elements[i], positions, mode);
  }
  // Bound reduction of adding mult positions to element i.
  double gain(std::size_t i, std::size_t positions, std::uint32_t mult) const {
    const Element& e = r->elements[i];
    if (mode == TokenMode::Words) {
      return static_cast<double>(mult) / static_cast<double>(e.tokens.size());
    }
    const double n = static_cast<double>(e.length());
    const double a = n + static_cast<double>(positions);
    return n * static_cast<double>(mult) / (a * (a + static_cast<double>(mult)));
  }
  std::uint32_t mult_of(std::size_t i, TokenId t) const {
    for (const auto& u : units[i]) if (u.token == t) return u.mult;
    return 0;
  }
};

// Rounds the mantissa so that ratios equal up to rounding noise compare equal.
double quantize(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  int e;
  double m = std::frexp(x, &e);
  m = std::round(std::ldexp(m, 40));
  return std::ldexp(m, e - 40);
}

struct Selection {
  std::vector<std::vector<TokenId>> chosen;
  std::vector<std::size_t> positions;
  std::vector<bool> cut;
};

// Cheapest cost/gain first until the bound sum drops below the threshold.
// With cut_at_count, an element reaching its count is frozen with b_i = 0 and
// stops contributing gain.
Selection greedy(const Context& ctx, bool cut_at_count) {
  const std::size_t n = ctx.units.size();
  Selection sel{std::vector<std::vector<TokenId>>(n), std::vector<std::size_t>(n, 0),
                std::vector<bool>(n, false)};
  std::vector<std::size_t> counts;
  if (cut_at_count) {
    counts.resize(n);
    for (std::size_t i = 0; i < n; ++i) counts[i] = ctx.count(i);
  }
  auto total = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += sel.cut[i] ? 0.0 : ctx.bound(i, sel.positions[i]);
    return s;
  };
  auto value = [&](const TokenEntry& t) {
    double v = 0.0;
    for (const auto& o : t.occ) {
      if (!sel.cut[o.element]) v += ctx.gain(o.element, sel.positions[o.element], o.mult);
    }
    return v;
  };

  struct Item {
    double key;
    std::size_t cost;
    TokenId token;
    std::size_t slot;
  };
  auto worse = [](const Item& a, const Item& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.token > b.token;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  for (std::size_t s = 0; s < ctx.tokens.size(); ++s) {
    const auto& t = ctx.tokens[s];
    heap.push({quantize(static_cast<double>(t.cost) / value(t)), t.cost, t.token, s});
  }

  while (total() >= ctx.threshold && !heap.empty()) {
    Item top = heap.top();
    heap.pop();
    const auto& t = ctx.tokens[top.slot];
    const double v = value(t);
    if (v <= 0.0) continue;
    const double key = quantize(static_cast<double>(t.cost) / v);
    if (key > top.key) {
      top.key = key;
      heap.push(top);
      continue;
    }
    for (const auto& o : t.occ) {
      if (sel.cut[o.element]) continue;
      sel.chosen[o.element].push_back(t.token);
      sel.positions[o.element] += o.mult;
      if (cut_at_count && sel.positions[o.element] >= counts[o.element]) sel.cut[o.element] = true;
    }
  }
  return sel;
}

// Keeps the cheapest tokens of l until count positions are covered.
std::vector<TokenId> cheapest_cover(const Context& ctx, std::size_t i, std::vector<TokenId> l,
                                     std::size_t count) {
  std::sort(l.begin(), l.end(), [&](TokenId a, TokenId b) {
    const std::size_t ca = ctx.tokens[ctx.slot.at(a)].cost, cb = ctx.tokens[ctx.slot.at(b)].cost;
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<TokenId> out;
  std::size_t covered = 0;
  for (TokenId t : l) {
    if (covered >= count) break;
    out.push_back(t);
    covered += ctx.mult_of(i, t);
  }
  return out;
}

Signature finalize(const Context& ctx, std::vector<std::vector<TokenId>> lists) {
  Signature sig;
  sig.elements.resize(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    auto& es = sig.elements[i];
    es.tokens = std::move(lists[i]);
    std::sort(es.tokens.begin(), es.tokens.end());
    es.tokens.erase(std::unique(es.tokens.begin(), es.tokens.end()), es.tokens.end());
    es.positions = 0;
    for (TokenId t : es.tokens) es.positions += ctx.mult_of(i, t);
    es.weighted_bound = ctx.bound(i, es.positions);
    es.cut = ctx.alpha > 0.0 && es.positions >= ctx.count(i);
    es.bound = es.cut ? 0.0 : es.weighted_bound;
    sig.flattened.insert(sig.flattened.end(), es.tokens.begin(), es.tokens.end());
  }
  std::sort(sig.flattened.begin(), sig.flattened.end());
  sig.flattened.erase(std::unique(sig.flattened.begin(), sig.flattened.end()),
                      sig.flattened.end());
  sig.degenerate = sig.bound_sum() >= ctx.threshold;
  return sig;
}

void cut_to_count(const Context& ctx, std::vector<std::vector<TokenId>>& lists) {
  if (ctx.alpha <= 0.0) return;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    std::size_t positions = 0;
    for (TokenId t : lists[i]) positions += ctx.mult_of(i, t);
    const std::size_t c = ctx.count(i);
    if (positions >= c) lists[i] = cheapest_cover(ctx, i, lists[i], c);
  }
}

std::vector<std::vector<TokenId>> unweighted_lists(const Context& ctx) {
  struct Occ {
    std::size_t cost;
    TokenId token;
    std::uint32_t element;
  };
  std::vector<Occ> occ;
  for (const auto& t : ctx.tokens) {
    for (const auto& o : t.occ) occ.push_back({t.cost, t.token, o.element});
  }
  std::sort(occ.begin(), occ.end(), [](const Occ& a, const Occ& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.token != b.token) return a.token < b.token;
    return a.element < b.element;
  });
  const double c = std::ceil(ctx.threshold);
  const std::size_t drop =
      c > 1.0 ? std::min(occ.size(), static_cast<std::size_t>(c) - 1) : std::size_t{0};
  std::vector<TokenId> kept;
  for (std::size_t k = drop; k < occ.size(); ++k) kept.push_back(occ[k].token);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  std::vector<std::vector<TokenId>> lists(ctx.units.size());
  for (std::size_t i = 0; i < ctx.units.size(); ++i) {
    for (const auto& u : ctx.units[i]) {
      if (std::binary_search(kept.begin(), kept.end(), u.token)) lists[i].push_back(u.token);
    }
  }
  return lists;
}

}  // namespace

Signature weighted_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                             TokenMode mode, double alpha) {
  Context ctx(r, index, delta, mode, alpha);
  return finalize(ctx, greedy(ctx, false).chosen);
}

Signature unweighted_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                               TokenMode mode) {
  Context ctx(r, index, delta, mode, 0.0);
  return finalize(ctx, unweighted_lists(ctx));
}

Signature skyline_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                            double alpha, TokenMode mode) {
  Context ctx(r, index, delta, mode, alpha);
  auto lists = greedy(ctx, false).chosen;
  cut_to_count(ctx, lists);
  return finalize(ctx, std::move(lists));
}

Signature dichotomy_signature(const SetRecord& r, const InvertedIndex& index, double delta,
                              double alpha, TokenMode mode) {
  if (!(alpha > 0.0)) throw std::invalid_argument("dichotomy signatures need alpha > 0");
  Context ctx(r, index, delta, mode, alpha);
  return finalize(ctx, greedy(ctx, true).chosen);
}

Signature combined_unweighted_signature(const SetRecord& r, const InvertedIndex& index,
                                        double delta, double alpha, TokenMode mode) {
  Context ctx(r, index, delta, mode, alpha);
  auto lists = unweighted_lists(ctx);
  cut_to_count(ctx, lists);
  return finalize(ctx, std::move(lists));
}

Signature make_signature(Scheme scheme, const SetRecord& r, const InvertedIndex& index,
                         double delta, const SimConfig& sim) {
  const TokenMode mode = token_mode(sim.kind);
  const double alpha = sim.alpha;
  switch (scheme) {
    case Scheme::Weighted:
      return weighted_signature(r, index, delta, mode, alpha);
    case Scheme::Unweighted:
      return unweighted_signature(r, index, delta, mode);
    case Scheme::Skyline:
      return skyline_signature(r, index, delta, alpha, mode);
    case Scheme::Dichotomy:
      return alpha > 0.0 ? dichotomy_signature(r, index, delta, alpha, mode)
                         : weighted_signature(r, index, delta, mode);
    case Scheme::CombinedUnweighted:
      return combined_unweighted_signature(r, index, delta, alpha, mode);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace relset
