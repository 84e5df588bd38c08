#include <atomic>
#include <cstdlib>
#include <string_view>

#include "relset/kernels.hpp"

namespace relset::kernels {

namespace {

SimdLevel probe() {
#if defined(RELSET_HAVE_AVX2_KERNELS)
  if (__builtin_cpu_supports("avx2")) return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

SimdLevel initial_level() {
  SimdLevel level = detected_level();
  if (const char* env = std::getenv("RELSET_SIMD")) {
    std::string_view v(env);
    if (v == "scalar") level = SimdLevel::Scalar;
  }
  return level;
}

std::atomic<SimdLevel>& current() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

SimdLevel detected_level() {
  static const SimdLevel level = probe();
  return level;
}

SimdLevel active_level() { return current().load(std::memory_order_relaxed); }

SimdLevel set_active_level(SimdLevel level) {
  if (static_cast<int>(level) > static_cast<int>(detected_level())) level = detected_level();
  current().store(level, std::memory_order_relaxed);
  return level;
}

const char* to_string(SimdLevel level) {
  return level == SimdLevel::Avx2 ? "avx2" : "scalar";
}

std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
#if defined(RELSET_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::Avx2) return avx2::intersect_count(a, b);
#endif
  return scalar::intersect_count(a, b);
}

void levenshtein_many(std::u32string_view query, std::span<const std::u32string_view> targets,
                      std::span<std::uint32_t> out) {
#if defined(RELSET_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::Avx2) return avx2::levenshtein_many(query, targets, out);
#endif
  scalar::levenshtein_many(query, targets, out);
}

RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                            std::span<const double> col_potential,
                            std::span<const std::int64_t> used, std::span<double> minv,
                            std::span<std::int64_t> way, std::int64_t from) {
#if defined(RELSET_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::Avx2) {
    return avx2::hungarian_relax(cost_row, row_potential, col_potential, used, minv, way, from);
  }
#endif
  return scalar::hungarian_relax(cost_row, row_potential, col_potential, used, minv, way, from);
}

}  // namespace relset::kernels
