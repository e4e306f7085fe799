#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "drivemotif/core.hpp"
#include "drivemotif/metrics.hpp"
#include "drivemotif/symbolic.hpp"

namespace drivemotif {

/// A run of `words.size()` consecutive modified words that repeats in the trip.
/// `positions` are indices into the modified-word sequence; `occurrences` are
/// the matching sample segments (first word start to last word end).
struct CandidatePattern {
  std::vector<SaxWord> words;
  std::vector<std::size_t> positions;
  std::vector<Segment> occurrences;
};

/// Center plus members (center included), members sorted by start.
/// `distances[i]` is the normalized DTW from `members[i]` to `center`.
struct Motif {
  Segment center;
  std::vector<Segment> members;
  std::vector<double> distances;
  double mdl_cost = 0.0;
  std::vector<SaxWord> pattern;

  std::size_t size() const noexcept { return members.size(); }
};

struct MdlContext {
  std::size_t total_words = 0;     // W
  std::size_t distinct_words = 0;  // A
};

MdlContext mdl_context(std::span<const ModifiedWord> words);

/// Sample segment covered by words[first .. first + count).
Segment pattern_span(std::span<const ModifiedWord> words, std::size_t first, std::size_t count);

/// Calls `visit` once per repeated pattern, for p = min_pattern_words, ...
/// until the first p with no repeats. Patterns of one length arrive together,
/// ordered by their first occurrence.
void for_each_pattern(std::span<const ModifiedWord> words, std::size_t min_pattern_words,
                      const std::function<void(std::vector<CandidatePattern>&&)>& visit_level);

std::vector<CandidatePattern> enumerate_patterns(std::span<const ModifiedWord> words,
                                                 std::size_t min_pattern_words = 1);

/// Index of the member with the smallest total distance; ties go to the lowest index.
std::size_t medoid(std::span<const double> distance_matrix, std::size_t n,
                   std::span<const std::size_t> active);

/// Medoid center, drop occurrences farther than `radius`, repeat until stable.
/// Returns nothing when fewer than two occurrences survive. The returned
/// motif has no MDL cost yet.
std::optional<Motif> radius_filter(const CandidatePattern& pattern, double radius,
                                   std::span<const double> series,
                                   const DistanceOptions& opts = {});

/// Removes trivial matches: members are kept in order of increasing distance to
/// the center (ties: earlier start) unless they overlap an already kept member.
/// The center is always kept.
Motif trivial_prune(const Motif& motif);

/// Substitution encoding: the pattern once over A symbols plus the word
/// sequence, with each occurrence replaced by a single new symbol, over A + 1.
double mdl_cost(std::size_t pattern_words, std::size_t member_count, const MdlContext& ctx);

/// Total order used for discovery output.
bool motif_order(const Motif& a, const Motif& b);

struct DiscoveryResult {
  Normalized normalized;
  std::vector<ModifiedWord> words;
  MdlContext context;
  std::size_t patterns_examined = 0;
  std::vector<Motif> motifs;  // sorted by motif_order
};

/// Full pipeline: normalize, discretize, enumerate, filter, prune, cost, sort.
DiscoveryResult discover(const TimeSeries& ts, const DiscoveryConfig& cfg);

}  // namespace drivemotif
