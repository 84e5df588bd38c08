#include "relset/kernels.hpp"

#if defined(RELSET_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#define RELSET_AVX2 __attribute__((target("avx2")))

namespace relset::kernels::avx2 {

namespace {

// Number of lanes of b equal to some lane of a, both 8 wide.
RELSET_AVX2 inline int block_matches(__m256i va, __m256i vb) {
  const __m256i rot = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  __m256i hit = _mm256_cmpeq_epi32(va, vb);
  for (int r = 1; r < 8; ++r) {
    vb = _mm256_permutevar8x32_epi32(vb, rot);
    hit = _mm256_or_si256(hit, _mm256_cmpeq_epi32(va, vb));
  }
  return __builtin_popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hit))));
}

}  // namespace

RELSET_AVX2 std::size_t intersect_count(std::span<const std::uint32_t> a,
                                        std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() <= 8 && b.size() <= 8) {
    // Distinct paddings above every real value, so padded lanes never match.
    if (a.back() >= 0xFFFFFFFEu || b.back() >= 0xFFFFFFFEu) return scalar::intersect_count(a, b);
    alignas(32) std::array<std::uint32_t, 8> pa, pb;
    pa.fill(0xFFFFFFFFu);
    pb.fill(0xFFFFFFFEu);
    std::copy(a.begin(), a.end(), pa.begin());
    std::copy(b.begin(), b.end(), pb.begin());
    return static_cast<std::size_t>(
        block_matches(_mm256_load_si256(reinterpret_cast<const __m256i*>(pa.data())),
                      _mm256_load_si256(reinterpret_cast<const __m256i*>(pb.data()))));
  }
  std::size_t i = 0, j = 0, n = 0;
  while (i + 8 <= a.size() && j + 8 <= b.size()) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + j));
    n += static_cast<std::size_t>(block_matches(va, vb));
    std::uint32_t amax = a[i + 7], bmax = b[j + 7];
    if (amax <= bmax) i += 8;
    if (bmax <= amax) j += 8;
  }
  return n + scalar::intersect_count(a.subspan(i), b.subspan(j));
}

RELSET_AVX2 void levenshtein_many(std::u32string_view query,
                                  std::span<const std::u32string_view> targets,
                                  std::span<std::uint32_t> out) {
  const std::size_t m = query.size();
  std::vector<std::uint32_t> column(8 * (m + 1));
  std::vector<std::uint32_t> chars;
  const __m256i one = _mm256_set1_epi32(1);

  for (std::size_t base = 0; base < targets.size(); base += 8) {
    const std::size_t lanes = std::min<std::size_t>(8, targets.size() - base);
    alignas(32) std::array<std::uint32_t, 8> lens{};
    std::size_t longest = 0;
    for (std::size_t k = 0; k < lanes; ++k) {
      lens[k] = static_cast<std::uint32_t>(targets[base + k].size());
      longest = std::max<std::size_t>(longest, lens[k]);
    }
    // Column major copy of the block: chars[8*j + k] = targets[base+k][j].
    chars.assign(8 * longest, 0xFFFFFFFFu);
    for (std::size_t k = 0; k < lanes; ++k) {
      const auto& t = targets[base + k];
      for (std::size_t j = 0; j < t.size(); ++j) chars[8 * j + k] = static_cast<std::uint32_t>(t[j]);
    }
    for (std::size_t i = 0; i <= m; ++i) {
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(column.data() + 8 * i),
                          _mm256_set1_epi32(static_cast<int>(i)));
    }
    const __m256i vlens = _mm256_load_si256(reinterpret_cast<const __m256i*>(lens.data()));
    __m256i result = _mm256_set1_epi32(static_cast<int>(m));

    for (std::size_t j = 1; j <= longest; ++j) {
      const __m256i tj =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(chars.data() + 8 * (j - 1)));
      __m256i* cell = reinterpret_cast<__m256i*>(column.data());
      __m256i diag = _mm256_loadu_si256(cell);
      __m256i left = _mm256_set1_epi32(static_cast<int>(j));
      _mm256_storeu_si256(cell, left);
      for (std::size_t i = 1; i <= m; ++i) {
        const __m256i qi = _mm256_set1_epi32(static_cast<int>(query[i - 1]));
        // eq lanes are all ones (-1), cancelling the substitution cost.
        const __m256i eq = _mm256_cmpeq_epi32(qi, tj);
        const __m256i sub = _mm256_add_epi32(diag, _mm256_add_epi32(one, eq));
        const __m256i up = _mm256_loadu_si256(cell + i);
        __m256i cur = _mm256_min_epu32(sub, _mm256_add_epi32(up, one));
        cur = _mm256_min_epu32(cur, _mm256_add_epi32(left, one));
        _mm256_storeu_si256(cell + i, cur);
        diag = up;
        left = cur;
      }
      const __m256i done = _mm256_cmpeq_epi32(vlens, _mm256_set1_epi32(static_cast<int>(j)));
      result = _mm256_blendv_epi8(result, left, done);
    }
    alignas(32) std::array<std::uint32_t, 8> res;
    _mm256_store_si256(reinterpret_cast<__m256i*>(res.data()), result);
    for (std::size_t k = 0; k < lanes; ++k) out[base + k] = res[k];
  }
}

RELSET_AVX2 RelaxResult hungarian_relax(std::span<const double> cost_row, double row_potential,
                                        std::span<const double> col_potential,
                                        std::span<const std::int64_t> used, std::span<double> minv,
                                        std::span<std::int64_t> way, std::int64_t from) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = cost_row.size();
  const __m256d vinf = _mm256_set1_pd(inf);
  const __m256d rp = _mm256_set1_pd(row_potential);
  const __m256d vfrom = _mm256_castsi256_pd(_mm256_set1_epi64x(from));
  const __m256i zero = _mm256_setzero_si256();
  __m256d best = vinf;
  __m256i best_idx = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);

  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    const __m256d cur = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(cost_row.data() + j), rp),
                                      _mm256_loadu_pd(col_potential.data() + j));
    const __m256d unused = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(used.data() + j)), zero));
    __m256d mv = _mm256_loadu_pd(minv.data() + j);
    const __m256d upd = _mm256_and_pd(_mm256_cmp_pd(cur, mv, _CMP_LT_OQ), unused);
    mv = _mm256_blendv_pd(mv, cur, upd);
    _mm256_storeu_pd(minv.data() + j, mv);
    double* wp = reinterpret_cast<double*>(way.data() + j);
    _mm256_storeu_pd(wp, _mm256_blendv_pd(_mm256_loadu_pd(wp), vfrom, upd));

    const __m256d cand = _mm256_blendv_pd(vinf, mv, unused);
    const __m256d better = _mm256_cmp_pd(cand, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, cand, better);
    best_idx = _mm256_castpd_si256(
        _mm256_blendv_pd(_mm256_castsi256_pd(best_idx), _mm256_castsi256_pd(idx), better));
    idx = _mm256_add_epi64(idx, step);
  }

  alignas(32) std::array<double, 4> bv;
  alignas(32) std::array<std::int64_t, 4> bi;
  _mm256_store_pd(bv.data(), best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(bi.data()), best_idx);
  RelaxResult out{inf, 0};
  for (int k = 0; k < 4; ++k) {
    if (bv[k] < out.delta ||
        (bv[k] == out.delta && bv[k] != inf && static_cast<std::size_t>(bi[k]) < out.column)) {
      out.delta = bv[k];
      out.column = static_cast<std::size_t>(bi[k]);
    }
  }
  for (; j < m; ++j) {
    if (used[j]) continue;
    double cur = cost_row[j] - row_potential - col_potential[j];
    if (cur < minv[j]) {
      minv[j] = cur;
      way[j] = from;
    }
    if (minv[j] < out.delta) {
      out.delta = minv[j];
      out.column = j;
    }
  }
  return out;
}

}  // namespace relset::kernels::avx2

#endif
