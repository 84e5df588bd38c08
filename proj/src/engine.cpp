#include "relset/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

#include "relset/matching.hpp"

namespace relset {

void RelatednessConfig::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  if (!(sim.alpha >= 0.0 && sim.alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
  const bool edit = sim.kind != SimKind::Jaccard;
  Scheme s = scheme;
  if (sim.alpha == 0.0) {
    if (s == Scheme::Skyline || s == Scheme::Dichotomy) s = Scheme::Weighted;
    if (s == Scheme::CombinedUnweighted) s = Scheme::Unweighted;
  }
  if (edit && s == Scheme::Unweighted) {
    throw ConfigError(std::string("scheme ") + to_string(scheme) +
                      " is not available for edit similarity with alpha = 0");
  }
  if (reduction) {
    if (sim.alpha != 0.0) throw ConfigError("reduction requires alpha = 0");
    if (sim.kind == SimKind::NEds) throw ConfigError("reduction cannot be used with neds");
  }
  if (edit) {
    const unsigned mq = max_q(delta, sim.alpha);
    if (q != 0 && q > mq) {
      throw ConfigError("q = " + std::to_string(q) + " exceeds the largest valid q-gram length " +
                        std::to_string(mq));
    }
  }
}

RelatednessConfig RelatednessConfig::normalized() const {
  validate();
  RelatednessConfig c = *this;
  if (c.sim.alpha == 0.0) {
    if (c.scheme == Scheme::Skyline || c.scheme == Scheme::Dichotomy) c.scheme = Scheme::Weighted;
    if (c.scheme == Scheme::CombinedUnweighted) c.scheme = Scheme::Unweighted;
  }
  if (c.sim.kind == SimKind::Jaccard) {
    c.q = 0;
  } else if (c.q == 0) {
    const unsigned mq = max_q(delta, sim.alpha);
    c.q = mq == kUnboundedQ ? 3 : mq;
  }
  if (c.workers == 0) c.workers = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

PassStats& PassStats::operator+=(const PassStats& o) {
  passes += o.passes;
  sets_scanned += o.sets_scanned;
  size_filtered += o.size_filtered;
  candidates_initial += o.candidates_initial;
  after_check += o.after_check;
  after_nn += o.after_nn;
  matchings_computed += o.matchings_computed;
  verified += o.verified;
  degenerate_signatures += o.degenerate_signatures;
  signature_seconds += o.signature_seconds;
  selection_seconds += o.selection_seconds;
  nn_seconds += o.nn_seconds;
  verify_seconds += o.verify_seconds;
  return *this;
}

bool passes_size_filter(Metric metric, double delta, std::size_t r_size, std::size_t s_size) {
  const double d = delta - kVerifyEpsilon;
  const double nr = static_cast<double>(r_size), ns = static_cast<double>(s_size);
  if (metric == Metric::Containment) return ns >= d * nr - 1e-9;
  return std::min(nr, ns) >= d * std::max(nr, ns) - 1e-9;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool in_scope(const PassScope& scope, SetIndex s) {
  if (!scope.self) return true;
  return scope.only_later ? s > *scope.self : s != *scope.self;
}

MatchingResult score(const SetRecord& r, const SetRecord& s, const RelatednessConfig& cfg) {
  return cfg.reduction ? reduced_matching_score(r, s, cfg.sim) : matching_score(r, s, cfg.sim);
}

void sort_pairs(std::vector<RelatedPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const RelatedPair& a, const RelatedPair& b) {
    return a.r_id != b.r_id ? a.r_id < b.r_id : a.s_id < b.s_id;
  });
}

// Runs job(k) for k in [0, n) on up to workers threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) job(k);
    });
  }
}

SearchResult merge(std::vector<SearchResult>& parts) {
  SearchResult out;
  for (auto& p : parts) {
    out.stats += p.stats;
    out.pairs.insert(out.pairs.end(), std::make_move_iterator(p.pairs.begin()),
                     std::make_move_iterator(p.pairs.end()));
  }
  sort_pairs(out.pairs);
  return out;
}

}  // namespace

Engine::Engine(std::span<const SetRecord> data, TokenDictionary& dict,
               const RelatednessConfig& cfg)
    : cfg_(cfg.normalized()), data_(data), index_(data, dict) {}

SearchResult Engine::search(const SetRecord& r, const PassScope& scope) const {
  SearchResult out;
  PassStats& st = out.stats;
  st.passes = 1;
  if (r.size() == 0) return out;
  const auto& cfg = cfg_;
  const double threshold = pruning_threshold(r, cfg.delta);

  st.sets_scanned = data_.size();
  if (cfg.filters.size) {
    std::size_t passing = 0;
    for (auto [sz, count] : index_.size_histogram()) {
      if (passes_size_filter(cfg.metric, cfg.delta, r.size(), sz)) passing += count;
    }
    st.size_filtered = data_.size() - passing;
  }
  auto eligible = [&](SetIndex s) {
    if (!in_scope(scope, s)) return false;
    return !cfg.filters.size ||
           passes_size_filter(cfg.metric, cfg.delta, r.size(), data_[s].size());
  };

  auto t0 = Clock::now();
  const Signature sig = make_signature(cfg.scheme, r, index_, cfg.delta, cfg.sim);
  st.signature_seconds = seconds_since(t0);

  std::vector<SetIndex> survivors;
  if (sig.degenerate) {
    st.degenerate_signatures = 1;
    t0 = Clock::now();
    for (SetIndex s = 0; s < data_.size(); ++s) {
      if (eligible(s)) survivors.push_back(s);
    }
    st.selection_seconds = seconds_since(t0);
    st.candidates_initial = st.after_check = st.after_nn = survivors.size();
  } else {
    t0 = Clock::now();
    CheckOptions copts{cfg.filters.check, cfg.memoize};
    Selection sel = select_and_check(r, sig, data_, index_, cfg.sim, copts, eligible);
    st.selection_seconds = seconds_since(t0);
    st.candidates_initial = sel.reached;
    st.after_check = sel.candidates.size();

    t0 = Clock::now();
    NNOptions nopts{cfg.early_termination};
    for (const auto& c : sel.candidates) {
      if (!cfg.filters.nn ||
          nn_filter(r, sig, c, data_[c.set], index_, cfg.sim, threshold, nopts)) {
        survivors.push_back(c.set);
      }
    }
    st.nn_seconds = seconds_since(t0);
    st.after_nn = survivors.size();
  }

  t0 = Clock::now();
  for (SetIndex s : survivors) {
    const SetRecord& set = data_[s];
    const MatchingResult m = score(r, set, cfg);
    ++st.matchings_computed;
    const double rel = relatedness(cfg.metric, m.score, r.size(), set.size());
    if (is_related(rel, cfg.delta)) out.pairs.push_back({r.id, set.id, m.score, rel});
  }
  st.verify_seconds = seconds_since(t0);
  st.verified = out.pairs.size();
  sort_pairs(out.pairs);
  return out;
}

SearchResult Engine::discover(std::span<const SetRecord> refs) const {
  std::vector<SearchResult> parts(refs.size());
  parallel_for(refs.size(), cfg_.workers, [&](std::size_t k) { parts[k] = search(refs[k]); });
  return merge(parts);
}

SearchResult Engine::discover_self() const {
  std::vector<SearchResult> parts(data_.size());
  const bool only_later = cfg_.metric == Metric::Similarity;
  parallel_for(data_.size(), cfg_.workers, [&](std::size_t k) {
    parts[k] = search(data_[k], PassScope{static_cast<SetIndex>(k), only_later});
  });
  return merge(parts);
}

namespace {

SearchResult brute_pass(const SetRecord& r, std::span<const SetRecord> data,
                        const RelatednessConfig& cfg, const PassScope& scope) {
  SearchResult out;
  out.stats.passes = 1;
  out.stats.sets_scanned = data.size();
  for (SetIndex s = 0; s < data.size(); ++s) {
    if (!in_scope(scope, s) || r.size() == 0 || data[s].size() == 0) continue;
    const MatchingResult m = matching_score(r, data[s], cfg.sim);
    ++out.stats.matchings_computed;
    const double rel = relatedness(cfg.metric, m.score, r.size(), data[s].size());
    if (is_related(rel, cfg.delta)) out.pairs.push_back({r.id, data[s].id, m.score, rel});
  }
  out.stats.verified = out.pairs.size();
  return out;
}

}  // namespace

SearchResult brute_force(std::span<const SetRecord> refs, std::span<const SetRecord> data,
                         const RelatednessConfig& cfg) {
  const RelatednessConfig c = cfg.normalized();
  std::vector<SearchResult> parts(refs.size());
  parallel_for(refs.size(), c.workers,
               [&](std::size_t k) { parts[k] = brute_pass(refs[k], data, c, {}); });
  return merge(parts);
}

SearchResult brute_force_self(std::span<const SetRecord> data, const RelatednessConfig& cfg) {
  const RelatednessConfig c = cfg.normalized();
  const bool only_later = c.metric == Metric::Similarity;
  std::vector<SearchResult> parts(data.size());
  parallel_for(data.size(), c.workers, [&](std::size_t k) {
    parts[k] = brute_pass(data[k], data, c, PassScope{static_cast<SetIndex>(k), only_later});
  });
  return merge(parts);
}

SearchResult brute_force_search(const SetRecord& r, std::span<const SetRecord> data,
                                const RelatednessConfig& cfg) {
  SearchResult out = brute_pass(r, data, cfg.normalized(), {});
  sort_pairs(out.pairs);
  return out;
}

}  // namespace relset
