#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "relset/tokenize.hpp"
#include "relset/types.hpp"

namespace relset {

double jaccard(std::span<const TokenId> x, std::span<const TokenId> y);

std::size_t levenshtein(std::u32string_view x, std::u32string_view y);
// Exact distance when it is at most k, otherwise any value above k.
std::size_t levenshtein_bounded(std::u32string_view x, std::u32string_view y, std::size_t k);

double eds_from_distance(std::size_t lx, std::size_t ly, std::size_t d);
double neds_from_distance(std::size_t lx, std::size_t ly, std::size_t d);
double eds(std::u32string_view x, std::u32string_view y);
double neds(std::u32string_view x, std::u32string_view y);

inline double threshold_alpha(double value, double alpha) { return value >= alpha ? value : 0.0; }

double phi(SimKind kind, const Element& x, const Element& y);
double phi_alpha(const SimConfig& cfg, const Element& x, const Element& y);
// out[k] = phi_alpha(cfg, x, *ys[k]).
void phi_alpha_row(const SimConfig& cfg, const Element& x, std::span<const Element* const> ys,
                   std::span<double> out);

}  // namespace relset
