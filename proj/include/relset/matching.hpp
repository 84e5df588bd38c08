#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row major

  WeightMatrix() = default;
  WeightMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct MatchingResult {
  double score = 0.0;
  // (row, col) pairs with positive weight, ordered by row.
  std::vector<std::pair<std::size_t, std::size_t>> assignment;
};

// Maximum weight bipartite matching over non-negative weights.
MatchingResult max_weight_matching(const WeightMatrix& w);

WeightMatrix similarity_matrix(const SetRecord& r, const SetRecord& s, const SimConfig& cfg);

// Throws std::invalid_argument on an empty set.
MatchingResult matching_score(const SetRecord& r, const SetRecord& s, const SimConfig& cfg);
// Identical elements are matched one to one before solving the residue.
// Only valid for alpha = 0 and a metric similarity (jac, eds).
MatchingResult reduced_matching_score(const SetRecord& r, const SetRecord& s, const SimConfig& cfg);

double similar(double m, std::size_t r_size, std::size_t s_size);
double contain(double m, std::size_t r_size);
double relatedness(Metric metric, double m, std::size_t r_size, std::size_t s_size);
// relatedness >= delta up to kVerifyEpsilon.
bool is_related(double relatedness_value, double delta);

}  // namespace relset
