#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "relset/kernels.hpp"
#include "support.hpp"

namespace relset::kernels {
namespace {

std::vector<std::uint32_t> random_sorted(std::mt19937_64& rng, std::size_t n, std::uint32_t universe) {
  std::set<std::uint32_t> s;
  while (s.size() < std::min<std::size_t>(n, universe)) s.insert(rng() % universe);
  return {s.begin(), s.end()};
}

std::u32string random_text(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  std::u32string s(rng() % (max_len + 1), U'a');
  for (auto& c : s) c = U'a' + static_cast<char32_t>(rng() % alphabet);
  return s;
}

bool have_avx2() { return detected_level() == SimdLevel::Avx2; }

TEST(Dispatch, ClampsToDetectedLevel) {
  const SimdLevel before = active_level();
  EXPECT_EQ(set_active_level(SimdLevel::Scalar), SimdLevel::Scalar);
  EXPECT_EQ(active_level(), SimdLevel::Scalar);
  EXPECT_EQ(set_active_level(SimdLevel::Avx2), detected_level());
  set_active_level(before);
}

TEST(IntersectCount, ScalarMatchesStd) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    auto a = random_sorted(rng, rng() % 40, 64), b = random_sorted(rng, rng() % 40, 64);
    std::vector<std::uint32_t> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    ASSERT_EQ(scalar::intersect_count(a, b), inter.size());
  }
}

#ifdef RELSET_HAVE_AVX2_KERNELS
TEST(IntersectCount, Avx2MatchesScalar) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2";
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20000; ++k) {
    const std::uint32_t universe = k % 3 == 0 ? 40 : k % 3 == 1 ? 300 : 100000;
    auto a = random_sorted(rng, rng() % 70, universe), b = random_sorted(rng, rng() % 70, universe);
    ASSERT_EQ(avx2::intersect_count(a, b), scalar::intersect_count(a, b)) << a.size() << " " << b.size();
  }
  // Values near the type limit must not collide with any padding.
  std::vector<std::uint32_t> hi = {0, 1, 0xFFFFFFFEu, 0xFFFFFFFFu};
  std::vector<std::uint32_t> hi2 = {0xFFFFFFFFu};
  EXPECT_EQ(avx2::intersect_count(hi, hi2), 1u);
  EXPECT_EQ(avx2::intersect_count(hi2, hi), 1u);
  EXPECT_EQ(avx2::intersect_count(hi, hi), 4u);
  EXPECT_EQ(avx2::intersect_count({}, hi), 0u);
}

TEST(LevenshteinMany, Avx2MatchesScalar) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2";
  std::mt19937_64 rng(13);
  for (int k = 0; k < 800; ++k) {
    auto q = random_text(rng, 30, 4);
    std::vector<std::u32string> ts;
    const std::size_t n = rng() % 20;
    for (std::size_t j = 0; j < n; ++j) ts.push_back(random_text(rng, 30, 4));
    std::vector<std::u32string_view> views(ts.begin(), ts.end());
    std::vector<std::uint32_t> a(n), b(n);
    scalar::levenshtein_many(q, views, a);
    avx2::levenshtein_many(q, views, b);
    ASSERT_EQ(a, b);
    for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(a[j], testing::oracle_levenshtein(q, ts[j]));
  }
}

TEST(HungarianRelax, Avx2MatchesScalar) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2";
  std::mt19937_64 rng(14);
  const double inf = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5000; ++k) {
    const std::size_t n = 1 + rng() % 19;
    std::vector<double> cost(n), pot(n), minv(n);
    std::vector<std::int64_t> used(n), way(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
      // Small integer grids force ties.
      cost[j] = -static_cast<double>(rng() % 4) / 4.0;
      pot[j] = static_cast<double>(rng() % 3) / 8.0;
      minv[j] = rng() % 3 == 0 ? inf : static_cast<double>(rng() % 5) / 8.0 - 0.5;
      used[j] = rng() % 4 == 0;
    }
    if (std::all_of(used.begin(), used.end(), [](auto u) { return u != 0; })) used[0] = 0;
    auto minv2 = minv;
    auto way2 = way;
    const double u = static_cast<double>(rng() % 3) / 8.0;
    auto ra = scalar::hungarian_relax(cost, u, pot, used, minv, way, 7);
    auto rb = avx2::hungarian_relax(cost, u, pot, used, minv2, way2, 7);
    ASSERT_EQ(ra.column, rb.column);
    ASSERT_EQ(ra.delta, rb.delta);
    ASSERT_EQ(minv, minv2);
    ASSERT_EQ(way, way2);
  }
}
#endif

}  // namespace
}  // namespace relset::kernels
