#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace relset::kernels {

enum class SimdLevel { Scalar, Avx2 };

// Best level supported by the running CPU.
SimdLevel detected_level();
// Level used by the dispatching entry points. Initialised from
// RELSET_SIMD (scalar|avx2) when set, otherwise detected_level().
SimdLevel active_level();
// Requests above detected_level() are clamped. Returns the level applied.
SimdLevel set_active_level(SimdLevel level);
const char* to_string(SimdLevel level);

// |a ∩ b| for strictly increasing sequences.
std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// out[k] = Levenshtein distance between query and targets[k].
void levenshtein_many(std::u32string_view query, std::span<const std::u32string_view> targets,
                      std::span<std::uint32_t> out);

struct RelaxResult {
  double delta;
  std::size_t column;
};

// One column relaxation sweep of the shortest augmenting path step of the
// Hungarian method. For every column j with used[j] == 0:
//   cur = cost_row[j] - row_potential - col_potential[j]
//   if cur < minv[j]: minv[j] = cur, way[j] = from
// Returns the first column with the smallest minv among unused columns.
RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                            std::span<const double> col_potential,
                            std::span<const std::int64_t> used, std::span<double> minv,
                            std::span<std::int64_t> way, std::int64_t from);

namespace scalar {
std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
void levenshtein_many(std::u32string_view query, std::span<const std::u32string_view> targets,
                      std::span<std::uint32_t> out);
RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                            std::span<const double> col_potential,
                            std::span<const std::int64_t> used, std::span<double> minv,
                            std::span<std::int64_t> way, std::int64_t from);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define RELSET_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
void levenshtein_many(std::u32string_view query, std::span<const std::u32string_view> targets,
                      std::span<std::uint32_t> out);
RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                            std::span<const double> col_potential,
                            std::span<const std::int64_t> used, std::span<double> minv,
                            std::span<std::int64_t> way, std::int64_t from);
}  // namespace avx2
#endif

}  // namespace relset::kernels
