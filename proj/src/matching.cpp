#include "relset/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "relset/kernels.hpp"
#include "relset/simfn.hpp"

namespace relset {

namespace {

// Potentials based shortest augmenting path method for a rectangular cost
// matrix with n <= m, minimising total cost. Returns col_of_row.
std::vector<std::size_t> hungarian_min(const std::vector<double>& cost, std::size_t n,
                                       std::size_t m) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0);
  std::vector<std::int64_t> way(m + 1, 0), used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      auto step = kernels::hungarian_relax(
          std::span<const double>(cost.data() + (i0 - 1) * m, m), u[i0],
          std::span<const double>(v).subspan(1), std::span<const std::int64_t>(used).subspan(1),
          std::span<double>(minv).subspan(1), std::span<std::int64_t>(way).subspan(1),
          static_cast<std::int64_t>(j0));
      const double delta = step.delta;
      const std::size_t j1 = step.column + 1;
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = static_cast<std::size_t>(way[j0]);
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

MatchingResult max_weight_matching(const WeightMatrix& w) {
  MatchingResult out;
  if (w.rows == 0 || w.cols == 0) return out;
  const bool transposed = w.rows > w.cols;
  const std::size_t n = transposed ? w.cols : w.rows;
  const std::size_t m = transposed ? w.rows : w.cols;
  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      cost[i * m + j] = -(transposed ? w.at(j, i) : w.at(i, j));
    }
  }
  const auto col_of_row = hungarian_min(cost, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = transposed ? col_of_row[i] : i;
    std::size_t c = transposed ? i : col_of_row[i];
    if (w.at(r, c) > 0.0) out.assignment.emplace_back(r, c);
  }
  std::sort(out.assignment.begin(), out.assignment.end());
  for (auto [r, c] : out.assignment) out.score += w.at(r, c);
  return out;
}

WeightMatrix similarity_matrix(const SetRecord& r, const SetRecord& s, const SimConfig& cfg) {
  WeightMatrix w(r.size(), s.size());
  std::vector<const Element*> ys(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) ys[j] = &s.elements[j];
  for (std::size_t i = 0; i < r.size(); ++i) {
    phi_alpha_row(cfg, r.elements[i], ys, std::span<double>(w.data.data() + i * w.cols, w.cols));
  }
  return w;
}

MatchingResult matching_score(const SetRecord& r, const SetRecord& s, const SimConfig& cfg) {
  if (r.size() == 0 || s.size() == 0) throw std::invalid_argument("matching of an empty set");
  return max_weight_matching(similarity_matrix(r, s, cfg));
}

namespace {

bool identical(SimKind kind, const Element& a, const Element& b) {
  return kind == SimKind::Jaccard ? a.tokens == b.tokens : a.text == b.text;
}

bool key_less(SimKind kind, const Element& a, const Element& b) {
  return kind == SimKind::Jaccard ? a.tokens < b.tokens : a.text < b.text;
}

std::vector<std::size_t> sorted_order(const SetRecord& set, SimKind kind) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key_less(kind, set.elements[a], set.elements[b]);
  });
  return order;
}

}  // namespace

MatchingResult reduced_matching_score(const SetRecord& r, const SetRecord& s,
                                      const SimConfig& cfg) {
  if (cfg.alpha != 0.0) throw ConfigError("reduction requires alpha = 0");
  if (cfg.kind == SimKind::NEds) throw ConfigError("reduction requires a metric similarity");
  if (r.size() == 0 || s.size() == 0) throw std::invalid_argument("matching of an empty set");

  const auto ro = sorted_order(r, cfg.kind);
  const auto so = sorted_order(s, cfg.kind);
  std::vector<bool> r_taken(r.size(), false), s_taken(s.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0, b = 0; a < ro.size() && b < so.size();) {
    const Element& x = r.elements[ro[a]];
    const Element& y = s.elements[so[b]];
    if (identical(cfg.kind, x, y)) {
      pairs.emplace_back(ro[a], so[b]);
      r_taken[ro[a]] = s_taken[so[b]] = true;
      ++a;
      ++b;
    } else if (key_less(cfg.kind, x, y)) {
      ++a;
    } else {
      ++b;
    }
  }

  std::vector<std::size_t> r_rest, s_rest;
  for (std::size_t i = 0; i < r.size(); ++i) if (!r_taken[i]) r_rest.push_back(i);
  for (std::size_t j = 0; j < s.size(); ++j) if (!s_taken[j]) s_rest.push_back(j);

  MatchingResult out;
  out.assignment = pairs;
  if (!r_rest.empty() && !s_rest.empty()) {
    WeightMatrix w(r_rest.size(), s_rest.size());
    std::vector<const Element*> ys(s_rest.size());
    for (std::size_t j = 0; j < s_rest.size(); ++j) ys[j] = &s.elements[s_rest[j]];
    for (std::size_t i = 0; i < r_rest.size(); ++i) {
      phi_alpha_row(cfg, r.elements[r_rest[i]], ys,
                    std::span<double>(w.data.data() + i * w.cols, w.cols));
    }
    auto rest = max_weight_matching(w);
    for (auto [i, j] : rest.assignment) out.assignment.emplace_back(r_rest[i], s_rest[j]);
    out.score = rest.score;
  }
  out.score += static_cast<double>(pairs.size());
  std::sort(out.assignment.begin(), out.assignment.end());
  return out;
}

double similar(double m, std::size_t r_size, std::size_t s_size) {
  const double denom = static_cast<double>(r_size + s_size) - m;
  return denom <= 0.0 ? 1.0 : m / denom;
}

double contain(double m, std::size_t r_size) { return m / static_cast<double>(r_size); }

double relatedness(Metric metric, double m, std::size_t r_size, std::size_t s_size) {
  return metric == Metric::Similarity ? similar(m, r_size, s_size) : contain(m, r_size);
}

bool is_related(double relatedness_value, double delta) {
  return relatedness_value >= delta - kVerifyEpsilon;
}

}  // namespace relset
