#include "drivemotif/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace drivemotif {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConstantSeries: return "ConstantSeries";
    case ErrorKind::IndivisibleSegment: return "IndivisibleSegment";
    case ErrorKind::AlphabetOutOfRange: return "AlphabetOutOfRange";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::BandInfeasible: return "BandInfeasible";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DegenerateContext: return "DegenerateContext";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::FileUnreadable: return "FileUnreadable";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::ColumnMissing: return "ColumnMissing";
    case ErrorKind::SpecInfeasible: return "SpecInfeasible";
    case ErrorKind::WriteFailure: return "WriteFailure";
  }
  return "Unknown";
}

TimeSeries::TimeSeries(std::vector<double> values, double sample_rate_hz, std::string name)
    : values_(std::move(values)), sample_rate_hz_(sample_rate_hz), name_(std::move(name)) {
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw Error(ErrorKind::InvalidConfig, "sample rate must be positive");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteValue, "series contains non-finite values");
  }
}

void check_bounds(const Segment& seg, std::size_t series_length) {
  if (seg.length == 0 || seg.end() > series_length) {
    throw Error(ErrorKind::SeriesTooShort,
                "segment [" + std::to_string(seg.start) + ", " + std::to_string(seg.end()) +
                    ") outside series of length " + std::to_string(series_length));
  }
}

bool overlap(const Segment& a, const Segment& b) noexcept {
  return a.start < b.end() && b.start < a.end();
}

void validate(const DiscoveryConfig& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (cfg.window_size == 0) fail("window_size must be positive");
  if (cfg.paa_size == 0) fail("paa_size must be positive");
  if (cfg.window_size % cfg.paa_size != 0) fail("window_size must be a multiple of paa_size");
  if (cfg.alphabet_size < 2 || cfg.alphabet_size > 26) fail("alphabet_size must be in [2, 26]");
  if (!(cfg.radius_r > 0.0) || !std::isfinite(cfg.radius_r)) fail("radius must be positive");
  if (cfg.min_pattern_words == 0) fail("min_pattern_words must be >= 1");
  if (cfg.dtw_band && *cfg.dtw_band == 0) fail("dtw band must be >= 1");
  if (!(cfg.eps() > 0.0) || !std::isfinite(cfg.eps())) fail("dbscan eps must be positive");
  if (cfg.dbscan_min_pts == 0) fail("dbscan min_pts must be >= 1");
}

Normalized zscore_global(const TimeSeries& ts) {
  const auto v = ts.values();
  if (v.size() < 2) throw Error(ErrorKind::SeriesTooShort, "need at least 2 samples to normalize");

  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  // Relative guard: sums over a constant series leave rounding noise in `mean`.
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
    throw Error(ErrorKind::ConstantSeries, "series '" + ts.name() + "' has zero variance");
  }

  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return {TimeSeries(std::move(out), ts.sample_rate_hz(), ts.name()), mean, sd};
}

std::vector<double> paa(std::span<const double> values, const Segment& seg, std::size_t paa_size) {
  check_bounds(seg, values.size());
  if (paa_size == 0 || seg.length % paa_size != 0) {
    throw Error(ErrorKind::IndivisibleSegment,
                "segment length " + std::to_string(seg.length) + " not divisible by " +
                    std::to_string(paa_size));
  }
  const std::size_t frame = seg.length / paa_size;
  std::vector<double> out(paa_size);
  for (std::size_t i = 0; i < paa_size; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < frame; ++j) sum += values[seg.start + i * frame + j];
    out[i] = sum / static_cast<double>(frame);
  }
  return out;
}

}  // namespace drivemotif
