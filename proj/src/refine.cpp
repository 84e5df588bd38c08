#include "relset/refine.hpp"

#include <algorithm>
#include <unordered_map>

#include "relset/simfn.hpp"

namespace relset {

namespace {

double check_threshold(const ElementSignature& es, double alpha) {
  return alpha > 0.0 ? std::min(alpha, es.weighted_bound) : es.weighted_bound;
}

struct Work {
  std::vector<bool> admitted;
  std::vector<double> best;
};

}  // namespace

Selection select_and_check(const SetRecord& r, const Signature& sig,
                           std::span<const SetRecord> data, const InvertedIndex& index,
                           const SimConfig& sim, const CheckOptions& opts,
                           const SetPredicate& eligible) {
  const std::size_t n = r.size();
  std::unordered_map<SetIndex, Work> work;
  std::unordered_map<SetIndex, bool> eligible_memo;
  std::unordered_map<std::uint64_t, double> memo;

  auto is_eligible = [&](SetIndex s) {
    auto [it, inserted] = eligible_memo.try_emplace(s, false);
    if (inserted) it->second = !eligible || eligible(s);
    return it->second;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& es = sig.elements[i];
    const double threshold = check_threshold(es, sim.alpha);
    memo.clear();
    for (TokenId t : es.tokens) {
      for (const Posting& p : index.postings(t)) {
        if (!is_eligible(p.set)) continue;
        auto [wit, fresh] = work.try_emplace(p.set);
        Work& w = wit->second;
        if (fresh) {
          w.admitted.assign(n, false);
          w.best.assign(n, -1.0);
        }
        if (!opts.check) {
          w.admitted[i] = true;
          continue;
        }
        double v;
        const std::uint64_t key = (std::uint64_t{p.set} << 32) | p.element;
        auto mit = opts.memoize ? memo.find(key) : memo.end();
        if (mit != memo.end()) {
          v = mit->second;
        } else {
          v = phi(sim.kind, r.elements[i], data[p.set].elements[p.element]);
          if (opts.memoize) memo.emplace(key, v);
        }
        if (v >= threshold) {
          w.admitted[i] = true;
          w.best[i] = std::max(w.best[i], v);
        }
      }
    }
  }

  Selection out;
  out.reached = work.size();
  for (auto& [set, w] : work) {
    Candidate c;
    c.set = set;
    for (std::size_t i = 0; i < n; ++i) {
      if (!w.admitted[i]) continue;
      c.matched.push_back(static_cast<ElementIndex>(i));
      if (opts.check) c.best_sim.push_back(w.best[i]);
    }
    if (!c.matched.empty()) out.candidates.push_back(std::move(c));
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.set < b.set; });
  return out;
}

double nn_search(const Element& r, const SetRecord& s, SetIndex s_index,
                 const InvertedIndex& index, const SimConfig& sim) {
  std::vector<bool> touched(s.size(), false);
  std::vector<const Element*> hits;
  for (TokenId t : r.tokens) {
    for (const Posting& p : index.postings_in_set(t, s_index)) {
      if (!touched[p.element]) {
        touched[p.element] = true;
        hits.push_back(&s.elements[p.element]);
      }
    }
  }
  double best = 0.0;
  if (!hits.empty()) {
    std::vector<double> vals(hits.size());
    phi_alpha_row(sim, r, hits, vals);
    best = *std::max_element(vals.begin(), vals.end());
  }
  if (sim.kind != SimKind::Jaccard && hits.size() < s.size()) {
    const double len = static_cast<double>(r.length());
    const double untouched = len / (len + static_cast<double>(r.chunks.size()));
    best = std::max(best, threshold_alpha(untouched, sim.alpha));
  }
  return best;
}

bool nn_filter(const SetRecord& r, const Signature& sig, const Candidate& cand,
               const SetRecord& s, const InvertedIndex& index, const SimConfig& sim,
               double threshold, const NNOptions& opts) {
  const std::size_t n = r.size();
  double total = sig.bound_sum();
  std::vector<bool> matched(n, false);
  for (std::size_t k = 0; k < cand.matched.size(); ++k) {
    const std::size_t i = cand.matched[k];
    matched[i] = true;
    const double b = sig.elements[i].bound;
    double nn;
    if (cand.has_best()) {
      // Pairs that were not admitted are bounded by b_i.
      nn = std::max(threshold_alpha(cand.best_sim[k], sim.alpha), b);
    } else {
      nn = nn_search(r.elements[i], s, cand.set, index, sim);
    }
    total += nn - b;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matched[i]) continue;
    const double b = sig.elements[i].bound;
    if (b <= 0.0) continue;
    total += nn_search(r.elements[i], s, cand.set, index, sim) - b;
    if (opts.early_termination && total < threshold) return false;
  }
  return total >= threshold;
}

}  // namespace relset
