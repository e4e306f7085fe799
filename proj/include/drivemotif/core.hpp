#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drivemotif/error.hpp"

namespace drivemotif {

/// Uniformly sampled scalar signal. Values are finite; the loader drops
/// anything else before a TimeSeries is built.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::vector<double> values, double sample_rate_hz, std::string name = {});

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  const std::string& name() const noexcept { return name_; }
  double duration_s() const noexcept {
    return static_cast<double>(values_.size()) / sample_rate_hz_;
  }

 private:
  std::vector<double> values_;
  double sample_rate_hz_ = 10.0;
  std::string name_;
};

/// Half-open sample range [start, start + length).
struct Segment {
  std::size_t start = 0;
  std::size_t length = 1;

  std::size_t end() const noexcept { return start + length; }
  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

/// Throws SeriesTooShort when the segment runs past `series_length`.
void check_bounds(const Segment& seg, std::size_t series_length);

inline std::span<const double> slice(std::span<const double> values, const Segment& seg) {
  return values.subspan(seg.start, seg.length);
}

bool overlap(const Segment& a, const Segment& b) noexcept;

struct DiscoveryConfig {
  std::size_t window_size = 20;
  std::size_t paa_size = 2;
  std::size_t alphabet_size = 5;
  double radius_r = 0.1;  // globally z-normalized units
  std::size_t min_pattern_words = 1;
  std::optional<std::size_t> dtw_band;
  std::optional<double> dbscan_eps;  // unset: same as radius_r
  std::size_t dbscan_min_pts = 3;
  std::size_t threads = 0;  // 0: hardware concurrency

  double eps() const noexcept { return dbscan_eps.value_or(radius_r); }
};

/// Throws InvalidConfig naming the first violated constraint.
void validate(const DiscoveryConfig& cfg);

struct Normalized {
  TimeSeries series;
  double mean = 0.0;
  double std = 1.0;
};

/// Global z-normalization with the population standard deviation.
Normalized zscore_global(const TimeSeries& ts);

/// Frame means of `seg` split into `paa_size` equal frames.
std::vector<double> paa(std::span<const double> values, const Segment& seg, std::size_t paa_size);

}  // namespace drivemotif
