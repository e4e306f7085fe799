#include "drivemotif/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace drivemotif {

SaxWord SaxWord::from_string(std::string_view text) {
  std::vector<unsigned char> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c < 'a' || c > 'z') throw Error(ErrorKind::AlphabetOutOfRange, "bad SAX symbol");
    symbols.push_back(static_cast<unsigned char>(c - 'a'));
  }
  return SaxWord(std::move(symbols));
}

std::string SaxWord::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) out.push_back(static_cast<char>('a' + s));
  return out;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -INFINITY;
    if (p == 1.0) return INFINITY;
    return NAN;
  }
  // Acklam's rational approximation (rel. error 1.15e-9), then one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p == 0.5) return 0.0;
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

std::vector<double> breakpoints(std::size_t alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 26) {
    throw Error(ErrorKind::AlphabetOutOfRange,
                "alphabet size " + std::to_string(alphabet_size) + " not in [2, 26]");
  }
  std::vector<double> cuts(alphabet_size - 1);
  const double a = static_cast<double>(alphabet_size);
  for (std::size_t k = 0; k + 1 < alphabet_size; ++k) {
    cuts[k] = normal_quantile(static_cast<double>(k + 1) / a);
  }
  // Force exact antisymmetry so that mirrored inputs get mirrored words.
  for (std::size_t k = 0; k < cuts.size() / 2; ++k) {
    const double m = 0.5 * (cuts[cuts.size() - 1 - k] - cuts[k]);
    cuts[k] = -m;
    cuts[cuts.size() - 1 - k] = m;
  }
  if (cuts.size() % 2 == 1) cuts[cuts.size() / 2] = 0.0;
  return cuts;
}

unsigned char symbol_for(double value, std::span<const double> cuts) noexcept {
  // Count of cuts <= value: equality lands in the upper interval.
  return static_cast<unsigned char>(std::upper_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

SaxWord sax_word(std::span<const double> values, const Segment& window, std::size_t paa_size,
                 std::span<const double> cuts) {
  const auto frames = paa(values, window, paa_size);
  std::vector<unsigned char> symbols(frames.size());
  std::transform(frames.begin(), frames.end(), symbols.begin(),
                 [&](double f) { return symbol_for(f, cuts); });
  return SaxWord(std::move(symbols));
}

std::vector<SaxWord> sax_sequence(std::span<const double> values, const DiscoveryConfig& cfg) {
  validate(cfg);
  if (values.size() < cfg.window_size) {
    throw Error(ErrorKind::SeriesTooShort,
                "series of " + std::to_string(values.size()) + " samples shorter than window " +
                    std::to_string(cfg.window_size));
  }
  const auto cuts = breakpoints(cfg.alphabet_size);
  const std::size_t count = values.size() - cfg.window_size + 1;
  const std::size_t frame = cfg.window_size / cfg.paa_size;

  // Frame sums via prefix sums; every window frame is a difference of two entries.
  std::vector<double> prefix(values.size() + 1, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];

  std::vector<SaxWord> out;
  out.reserve(count);
  std::vector<unsigned char> symbols(cfg.paa_size);
  for (std::size_t w = 0; w < count; ++w) {
    for (std::size_t f = 0; f < cfg.paa_size; ++f) {
      const std::size_t lo = w + f * frame;
      // Direct summation keeps results identical to paa(); the prefix sum only
      // decides which frames are far enough from a cut to skip it.
      const double approx = (prefix[lo + frame] - prefix[lo]) / static_cast<double>(frame);
      const auto guess = symbol_for(approx, cuts);
      bool near_cut = false;
      for (double c : cuts) near_cut |= std::abs(approx - c) < 1e-9;
      if (!near_cut) {
        symbols[f] = guess;
        continue;
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < frame; ++j) sum += values[lo + j];
      symbols[f] = symbol_for(sum / static_cast<double>(frame), cuts);
    }
    out.emplace_back(symbols);
  }
  return out;
}

std::vector<ModifiedWord> merge_runs(std::span<const SaxWord> window_words, std::size_t window_size) {
  std::vector<ModifiedWord> out;
  for (std::size_t i = 0; i < window_words.size(); ++i) {
    if (!out.empty() && out.back().word == window_words[i]) {
      ++out.back().run_count;
      ++out.back().span;
    } else {
      out.push_back({window_words[i], i, window_size, 1});
    }
  }
  return out;
}

std::vector<SaxWord> expand_runs(std::span<const ModifiedWord> words) {
  std::vector<SaxWord> out;
  for (const auto& w : words) out.insert(out.end(), w.run_count, w.word);
  return out;
}

std::vector<ModifiedWord> modified_sax(const TimeSeries& ts, const DiscoveryConfig& cfg) {
  const auto raw = sax_sequence(ts.values(), cfg);
  return merge_runs(raw, cfg.window_size);
}

}  // namespace drivemotif
