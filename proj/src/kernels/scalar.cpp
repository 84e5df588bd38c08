#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "relset/kernels.hpp"

namespace relset::kernels::scalar {

std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

namespace {

std::uint32_t levenshtein_one(std::u32string_view a, std::u32string_view b,
                              std::vector<std::uint32_t>& row) {
  if (a.size() < b.size()) std::swap(a, b);
  row.resize(b.size() + 1);
  std::iota(row.begin(), row.end(), 0u);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::uint32_t diag = row[0];
    row[0] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::uint32_t up = row[j];
      std::uint32_t sub = diag + (a[i - 1] == b[j - 1] ? 0u : 1u);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

void levenshtein_many(std::u32string_view query, std::span<const std::u32string_view> targets,
                      std::span<std::uint32_t> out) {
  std::vector<std::uint32_t> row;
  for (std::size_t k = 0; k < targets.size(); ++k) out[k] = levenshtein_one(query, targets[k], row);
}

RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                            std::span<const double> col_potential,
                            std::span<const std::int64_t> used, std::span<double> minv,
                            std::span<std::int64_t> way, std::int64_t from) {
  RelaxResult best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < cost_row.size(); ++j) {
    if (used[j]) continue;
    double cur = cost_row[j] - row_potential - col_potential[j];
    if (cur < minv[j]) {
      minv[j] = cur;
      way[j] = from;
    }
    if (minv[j] < best.delta) {
      best.delta = minv[j];
      best.column = j;
    }
  }
  return best;
}

}  // namespace relset::kernels::scalar
