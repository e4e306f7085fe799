#include "drivemotif/discovery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"

namespace drivemotif {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Group = std::vector<std::size_t>;

double pair_distance(DtwWorkspace& ws, std::span<const double> a, std::span<const double> b,
                     const DistanceOptions& opts) {
  try {
    return ws(a, b, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BandInfeasible) throw;
    return kInf;
  }
}

// Pairwise normalized DTW between occurrences, row-major k x k.
std::vector<double> distance_matrix(std::span<const Segment> occ, std::span<const double> series,
                                    const DistanceOptions& opts) {
  const std::size_t k = occ.size();
  std::vector<double> d(k * k, 0.0);
  DtwWorkspace ws;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      d[i * k + j] = d[j * k + i] = pair_distance(ws, slice(series, occ[i]), slice(series, occ[j]), opts);
    }
  }
  return d;
}

// Size of the largest set of pairwise non-overlapping segments (earliest-end greedy).
std::size_t max_disjoint(std::span<const Segment> segs) {
  std::vector<Segment> s(segs.begin(), segs.end());
  std::sort(s.begin(), s.end(), [](const Segment& a, const Segment& b) { return a.end() < b.end(); });
  std::size_t count = 0, free_from = 0;
  for (const auto& x : s) {
    if (count == 0 || x.start >= free_from) {
      ++count;
      free_from = x.end();
    }
  }
  return count;
}

// DTW frontiers of long occurrence pairs, keyed by the word positions of both
// occurrences. Level p + 1 extends level p occurrences by one word each, so a
// stored frontier lets the next level evaluate only the new cells.
class FrontierCache {
 public:
  static constexpr std::size_t kMinCells = 4096;
  static constexpr std::size_t kBudgetBytes = std::size_t{256} << 20;

  using Entry = std::pair<std::uint64_t, DtwFrontier>;

  const DtwFrontier* find(std::uint64_t key) const {
    const auto it = current_.find(key);
    return it == current_.end() ? nullptr : &it->second;
  }

  bool reserve(std::size_t bytes) {
    std::size_t used = pending_bytes_.load(std::memory_order_relaxed);
    do {
      if (used + bytes > kBudgetBytes) return false;
    } while (!pending_bytes_.compare_exchange_weak(used, used + bytes, std::memory_order_relaxed));
    return true;
  }

  // Replaces the stored level with the entries produced while scanning it.
  void advance(std::vector<std::vector<Entry>>& produced) {
    current_.clear();
    for (auto& batch : produced) {
      for (auto& [key, f] : batch) current_.emplace(key, std::move(f));
    }
    pending_bytes_.store(0, std::memory_order_relaxed);
  }

 private:
  std::unordered_map<std::uint64_t, DtwFrontier> current_;
  std::atomic<std::size_t> pending_bytes_{0};
};

std::vector<double> pattern_matrix(const CandidatePattern& cp, std::size_t word_count,
                                   std::span<const double> series, const DistanceOptions& opts,
                                   FrontierCache& cache,
                                   std::vector<FrontierCache::Entry>& produced) {
  if (opts.band) return distance_matrix(cp.occurrences, series, opts);
  const auto& occ = cp.occurrences;
  const std::size_t k = occ.size();
  std::vector<double> d(k * k, 0.0);
  DtwWorkspace ws;
  for (std::size_t i = 0; i < k; ++i) {
    const auto a = slice(series, occ[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto b = slice(series, occ[j]);
      const std::uint64_t key = cp.positions[i] * word_count + cp.positions[j];
      const DtwFrontier* from = cache.find(key);
      const bool keep = a.size() * b.size() >= FrontierCache::kMinCells;
      double v;
      if (from || keep) {
        DtwFrontier to;
        v = dtw_extend(a, b, from, to).normalized();
        if (keep && cache.reserve(to.bytes())) produced.emplace_back(key, std::move(to));
      } else {
        v = ws(a, b, opts);
      }
      d[i * k + j] = d[j * k + i] = v;
    }
  }
  return d;
}

// Greedy trivial-match removal over `active`. Returns kept indices sorted by start.
std::vector<std::size_t> keep_non_overlapping(std::span<const Segment> segs,
                                              std::span<const std::size_t> active,
                                              const std::function<double(std::size_t)>& dist,
                                              std::size_t center) {
  std::vector<std::size_t> order(active.begin(), active.end());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if ((a == center) != (b == center)) return a == center;
    const double da = dist(a), db = dist(b);
    if (da != db) return da < db;
    return segs[a].start < segs[b].start;
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const bool clash = std::any_of(kept.begin(), kept.end(),
                                   [&](std::size_t k) { return overlap(segs[k], segs[idx]); });
    if (!clash) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end(),
            [&](std::size_t a, std::size_t b) { return segs[a] < segs[b]; });
  return kept;
}

// Medoid/radius fixed point, optionally interleaved with trivial-match removal,
// so the returned center is the medoid of exactly the returned members.
std::optional<Motif> settle(std::span<const Segment> occ, std::span<const double> d, double radius,
                            bool prune_trivial) {
  const std::size_t k = occ.size();
  if (k < 2) return std::nullopt;

  std::vector<std::size_t> active(k);
  std::iota(active.begin(), active.end(), 0);
  std::size_t center = 0;
  for (;;) {
    center = active[medoid(d, k, active)];
    std::vector<std::size_t> keep;
    for (std::size_t j : active) {
      if (d[center * k + j] <= radius) keep.push_back(j);
    }
    if (keep.size() < 2) return std::nullopt;
    if (keep.size() != active.size()) {
      active = std::move(keep);
      continue;
    }
    if (prune_trivial) {
      auto kept = keep_non_overlapping(
          occ, active, [&](std::size_t j) { return d[center * k + j]; }, center);
      if (kept.size() < 2) return std::nullopt;
      if (kept.size() != active.size()) {
        active = std::move(kept);
        continue;
      }
    }
    break;
  }

  std::sort(active.begin(), active.end(),
            [&](std::size_t a, std::size_t b) { return occ[a] < occ[b]; });
  Motif m;
  m.center = occ[center];
  for (std::size_t j : active) {
    m.members.push_back(occ[j]);
    m.distances.push_back(d[center * k + j]);
  }
  return m;
}

}  // namespace

MdlContext mdl_context(std::span<const ModifiedWord> words) {
  std::map<SaxWord, int> distinct;
  for (const auto& w : words) distinct.emplace(w.word, 0);
  return {words.size(), distinct.size()};
}

Segment pattern_span(std::span<const ModifiedWord> words, std::size_t first, std::size_t count) {
  const auto& last = words[first + count - 1];
  return {words[first].start, last.start + last.span - words[first].start};
}

void for_each_pattern(std::span<const ModifiedWord> words, std::size_t min_pattern_words,
                      const std::function<void(std::vector<CandidatePattern>&&)>& visit_level) {
  const std::size_t n = words.size();
  if (n == 0) return;

  std::map<SaxWord, std::uint32_t> ids;
  std::vector<std::uint32_t> id(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = ids.emplace(words[i].word, static_cast<std::uint32_t>(ids.size())).first->second;
  }

  // Level 1: positions bucketed by word, in order of first appearance.
  std::vector<Group> groups(ids.size());
  for (std::size_t i = 0; i < n; ++i) groups[id[i]].push_back(i);

  const auto keep_repeated = [](std::vector<Group>& gs) {
    std::erase_if(gs, [](const Group& g) { return g.size() < 2; });
    std::sort(gs.begin(), gs.end(), [](const Group& a, const Group& b) { return a[0] < b[0]; });
  };
  keep_repeated(groups);

  for (std::size_t p = 1; !groups.empty(); ++p) {
    if (p >= min_pattern_words) {
      std::vector<CandidatePattern> level;
      level.reserve(groups.size());
      for (const auto& g : groups) {
        CandidatePattern cp;
        for (std::size_t k = 0; k < p; ++k) cp.words.push_back(words[g[0] + k].word);
        cp.positions = g;
        for (std::size_t pos : g) cp.occurrences.push_back(pattern_span(words, pos, p));
        level.push_back(std::move(cp));
      }
      visit_level(std::move(level));
    }

    // Extend every repeated p-pattern by the word that follows each occurrence.
    std::vector<Group> next;
    std::vector<std::pair<std::uint32_t, std::size_t>> keyed;
    for (const auto& g : groups) {
      keyed.clear();
      for (std::size_t pos : g) {
        if (pos + p < n) keyed.emplace_back(id[pos + p], pos);
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i;
        Group sub;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) sub.push_back(keyed[j++].second);
        if (sub.size() >= 2) next.push_back(std::move(sub));
        i = j;
      }
    }
    keep_repeated(next);
    groups = std::move(next);
  }
}

std::vector<CandidatePattern> enumerate_patterns(std::span<const ModifiedWord> words,
                                                 std::size_t min_pattern_words) {
  std::vector<CandidatePattern> out;
  for_each_pattern(words, min_pattern_words, [&](std::vector<CandidatePattern>&& level) {
    std::move(level.begin(), level.end(), std::back_inserter(out));
  });
  return out;
}

std::size_t medoid(std::span<const double> distance_matrix, std::size_t n,
                   std::span<const std::size_t> active) {
  std::size_t best = 0;
  double best_sum = kInf;
  for (std::size_t a = 0; a < active.size(); ++a) {
    double sum = 0.0;
    for (std::size_t j : active) sum += distance_matrix[active[a] * n + j];
    if (sum < best_sum) {
      best_sum = sum;
      best = a;
    }
  }
  return best;
}

std::optional<Motif> radius_filter(const CandidatePattern& pattern, double radius,
                                   std::span<const double> series, const DistanceOptions& opts) {
  if (pattern.occurrences.size() < 2) return std::nullopt;
  const auto d = distance_matrix(pattern.occurrences, series, opts);
  auto m = settle(pattern.occurrences, d, radius, false);
  if (m) m->pattern = pattern.words;
  return m;
}

Motif trivial_prune(const Motif& motif) {
  std::size_t center = motif.members.size();
  for (std::size_t i = 0; i < motif.members.size(); ++i) {
    if (motif.members[i] == motif.center) center = i;
  }
  std::vector<std::size_t> all(motif.members.size());
  std::iota(all.begin(), all.end(), 0);
  const auto kept = keep_non_overlapping(
      motif.members, all,
      [&](std::size_t j) { return j == center ? 0.0 : motif.distances[j]; }, center);

  Motif out = motif;
  out.members.clear();
  out.distances.clear();
  for (std::size_t j : kept) {
    out.members.push_back(motif.members[j]);
    out.distances.push_back(motif.distances[j]);
  }
  return out;
}

double mdl_cost(std::size_t pattern_words, std::size_t member_count, const MdlContext& ctx) {
  const std::size_t p = pattern_words;
  const std::size_t m = member_count;
  if (p < 1 || m < 2 || ctx.distinct_words < 1 || ctx.distinct_words > ctx.total_words ||
      ctx.total_words < m * p) {
    throw Error(ErrorKind::DegenerateContext,
                "p=" + std::to_string(p) + " m=" + std::to_string(m) +
                    " W=" + std::to_string(ctx.total_words) + " A=" + std::to_string(ctx.distinct_words));
  }
  const double a = static_cast<double>(ctx.distinct_words);
  const double residual = static_cast<double>(ctx.total_words - m * p + m);
  return static_cast<double>(p) * std::log2(a) + residual * std::log2(a + 1.0);
}

bool motif_order(const Motif& a, const Motif& b) {
  if (a.mdl_cost != b.mdl_cost) return a.mdl_cost < b.mdl_cost;
  if (a.size() != b.size()) return a.size() > b.size();
  if (a.center != b.center) return a.center < b.center;
  return a.pattern < b.pattern;
}

DiscoveryResult discover(const TimeSeries& ts, const DiscoveryConfig& cfg) {
  validate(cfg);
  if (ts.size() < cfg.window_size) {
    throw Error(ErrorKind::SeriesTooShort, "series of " + std::to_string(ts.size()) +
                                               " samples shorter than window " +
                                               std::to_string(cfg.window_size));
  }
  DiscoveryResult result;
  result.normalized = zscore_global(ts);
  result.words = modified_sax(result.normalized.series, cfg);
  result.context = mdl_context(result.words);

  const auto series = result.normalized.series.values();
  const DistanceOptions opts{cfg.dtw_band, true};

  const std::size_t word_count = result.words.size();
  FrontierCache cache;

  for_each_pattern(result.words, cfg.min_pattern_words, [&](std::vector<CandidatePattern>&& level) {
    result.patterns_examined += level.size();
    std::vector<std::optional<Motif>> slots(level.size());
    std::vector<std::vector<FrontierCache::Entry>> produced(level.size());
    // Largest patterns first so one big matrix does not trail the whole level.
    std::vector<std::size_t> order(level.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return level[a].occurrences.size() > level[b].occurrences.size();
    });
    detail::parallel_for(level.size(), cfg.threads, [&](std::size_t i) {
      const auto& cp = level[order[i]];
      // Trivial-match removal leaves a pairwise disjoint set, so fewer than
      // two disjoint occurrences can never form a motif.
      if (max_disjoint(cp.occurrences) < 2) return;
      const auto d = pattern_matrix(cp, word_count, series, opts, cache, produced[order[i]]);
      auto m = settle(cp.occurrences, d, cfg.radius_r, true);
      if (!m) return;
      m->pattern = cp.words;
      m->mdl_cost = mdl_cost(cp.words.size(), m->size(), result.context);
      slots[order[i]] = std::move(m);
    });
    for (auto& s : slots) {
      if (s) result.motifs.push_back(std::move(*s));
    }
    cache.advance(produced);
  });

  std::sort(result.motifs.begin(), result.motifs.end(), motif_order);
  return result;
}

}  // namespace drivemotif
