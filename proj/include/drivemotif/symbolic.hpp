#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "drivemotif/core.hpp"

namespace drivemotif {

/// Fixed-length word over the first `alphabet_size` lowercase letters.
/// Symbols are stored as indices; `str()` renders 0 -> 'a'.
class SaxWord {
 public:
  SaxWord() = default;
  explicit SaxWord(std::vector<unsigned char> symbols) : symbols_(std::move(symbols)) {}
  /// Parses a lowercase word such as "abc".
  static SaxWord from_string(std::string_view text);

  std::span<const unsigned char> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::string str() const;

  friend bool operator==(const SaxWord&, const SaxWord&) = default;
  friend auto operator<=>(const SaxWord&, const SaxWord&) = default;

 private:
  std::vector<unsigned char> symbols_;
};

/// A maximal run of identical consecutive window words, merged. With a sliding
/// step of one sample it covers `window_size + run_count - 1` samples.
struct ModifiedWord {
  SaxWord word;
  std::size_t start = 0;
  std::size_t span = 0;
  std::size_t run_count = 1;

  Segment segment() const noexcept { return {start, span}; }
  friend bool operator==(const ModifiedWord&, const ModifiedWord&) = default;
};

/// Standard-normal quantiles at k / alphabet_size, k = 1 .. alphabet_size - 1.
std::vector<double> breakpoints(std::size_t alphabet_size);

/// Inverse standard-normal CDF, accurate to ~1e-15 on (0, 1).
double normal_quantile(double p);

/// Symbol index for one PAA value; a value equal to a breakpoint maps upward.
unsigned char symbol_for(double value, std::span<const double> cuts) noexcept;

SaxWord sax_word(std::span<const double> values, const Segment& window, std::size_t paa_size,
                 std::span<const double> cuts);

/// Raw SAX word of every window (step 1) over an already normalized series.
std::vector<SaxWord> sax_sequence(std::span<const double> values, const DiscoveryConfig& cfg);

/// Collapses runs of identical consecutive window words.
std::vector<ModifiedWord> merge_runs(std::span<const SaxWord> window_words, std::size_t window_size);

/// Inverse of merge_runs: one word per sliding window.
std::vector<SaxWord> expand_runs(std::span<const ModifiedWord> words);

/// sax_sequence followed by merge_runs. `ts` must already be z-normalized.
std::vector<ModifiedWord> modified_sax(const TimeSeries& ts, const DiscoveryConfig& cfg);

}  // namespace drivemotif
