#include "relset/simfn.hpp"

#include <algorithm>
#include <cmath>

#include "relset/kernels.hpp"

namespace relset {

double jaccard(std::span<const TokenId> x, std::span<const TokenId> y) {
  const std::size_t inter = kernels::intersect_count(x, y);
  const std::size_t uni = x.size() + y.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t levenshtein(std::u32string_view x, std::u32string_view y) {
  std::uint32_t d = 0;
  kernels::scalar::levenshtein_many(x, std::span<const std::u32string_view>(&y, 1),
                                    std::span<std::uint32_t>(&d, 1));
  return d;
}

std::size_t levenshtein_bounded(std::u32string_view x, std::u32string_view y, std::size_t k) {
  const std::size_t n = x.size(), m = y.size();
  const std::size_t over = k + 1;
  if ((n > m ? n - m : m - n) > k) return over;
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1, over), cur(m + 1, over);
  for (std::size_t j = 0; j <= std::min(m, k); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > k ? i - k : 0;
    const std::size_t hi = std::min(m, i + k);
    std::size_t j = lo;
    std::size_t row_min = over;
    if (lo == 0) {
      cur[0] = i;
      row_min = std::min(row_min, cur[0]);
      j = 1;
    } else {
      cur[lo - 1] = over;
    }
    for (; j <= hi; ++j) {
      std::size_t v = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      v = std::min({v, prev[j] + 1, cur[j - 1] + 1, over});
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (hi < m) cur[hi + 1] = over;
    if (row_min > k) return over;
    std::swap(prev, cur);
  }
  return prev[m];
}

double eds_from_distance(std::size_t lx, std::size_t ly, std::size_t d) {
  const std::size_t denom = lx + ly + d;
  if (denom == 0) return 1.0;
  return 1.0 - 2.0 * static_cast<double>(d) / static_cast<double>(denom);
}

double neds_from_distance(std::size_t lx, std::size_t ly, std::size_t d) {
  const std::size_t denom = std::max(lx, ly);
  if (denom == 0) return 1.0;
  return 1.0 - static_cast<double>(d) / static_cast<double>(denom);
}

double eds(std::u32string_view x, std::u32string_view y) {
  return eds_from_distance(x.size(), y.size(), levenshtein(x, y));
}

double neds(std::u32string_view x, std::u32string_view y) {
  return neds_from_distance(x.size(), y.size(), levenshtein(x, y));
}

namespace {

double edit_from_distance(SimKind kind, std::size_t lx, std::size_t ly, std::size_t d) {
  return kind == SimKind::Eds ? eds_from_distance(lx, ly, d) : neds_from_distance(lx, ly, d);
}

// Largest distance that can still reach alpha.
std::size_t distance_cutoff(SimKind kind, std::size_t lx, std::size_t ly, double alpha) {
  double bound = kind == SimKind::Eds
                     ? (1.0 - alpha) * static_cast<double>(lx + ly) / (1.0 + alpha)
                     : (1.0 - alpha) * static_cast<double>(std::max(lx, ly));
  return static_cast<std::size_t>(std::floor(bound + 1e-9));
}

}  // namespace

double phi(SimKind kind, const Element& x, const Element& y) {
  switch (kind) {
    case SimKind::Jaccard:
      return jaccard(x.tokens, y.tokens);
    case SimKind::Eds:
      return eds(x.text, y.text);
    case SimKind::NEds:
      return neds(x.text, y.text);
  }
  return 0.0;
}

double phi_alpha(const SimConfig& cfg, const Element& x, const Element& y) {
  if (cfg.kind == SimKind::Jaccard) return threshold_alpha(jaccard(x.tokens, y.tokens), cfg.alpha);
  const std::size_t lx = x.length(), ly = y.length();
  if (cfg.alpha <= 0.0) return edit_from_distance(cfg.kind, lx, ly, levenshtein(x.text, y.text));
  const std::size_t k = distance_cutoff(cfg.kind, lx, ly, cfg.alpha);
  const std::size_t d = levenshtein_bounded(x.text, y.text, k);
  if (d > k) return 0.0;
  return threshold_alpha(edit_from_distance(cfg.kind, lx, ly, d), cfg.alpha);
}

void phi_alpha_row(const SimConfig& cfg, const Element& x, std::span<const Element* const> ys,
                   std::span<double> out) {
  if (cfg.kind == SimKind::Jaccard) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      out[k] = threshold_alpha(jaccard(x.tokens, ys[k]->tokens), cfg.alpha);
    }
    return;
  }
  std::vector<std::u32string_view> views(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) views[k] = ys[k]->text;
  std::vector<std::uint32_t> dist(ys.size());
  kernels::levenshtein_many(x.text, views, dist);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    out[k] = threshold_alpha(edit_from_distance(cfg.kind, x.length(), ys[k]->length(), dist[k]),
                             cfg.alpha);
  }
}

}  // namespace relset
