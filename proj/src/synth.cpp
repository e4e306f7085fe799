#include "drivemotif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace drivemotif {

std::string_view to_string(Maneuver kind) {
  switch (kind) {
    case Maneuver::Brake: return "brake";
    case Maneuver::Acceleration: return "acceleration";
    case Maneuver::BrakeAccelerate: return "brake_accelerate";
    case Maneuver::LaneChange: return "lane_change";
  }
  return "brake";
}

Maneuver parse_maneuver(std::string_view name) {
  if (name == "brake") return Maneuver::Brake;
  if (name == "acceleration") return Maneuver::Acceleration;
  if (name == "brake_accelerate") return Maneuver::BrakeAccelerate;
  if (name == "lane_change") return Maneuver::LaneChange;
  throw Error(ErrorKind::InvalidConfig, "unknown maneuver '" + std::string(name) + "'");
}

EventKind event_kind(Maneuver kind) {
  switch (kind) {
    case Maneuver::Brake:
    case Maneuver::BrakeAccelerate: return EventKind::Brake;
    case Maneuver::Acceleration: return EventKind::Acceleration;
    case Maneuver::LaneChange: return EventKind::Turn;
  }
  return EventKind::Other;
}

std::vector<double> maneuver_shape(Maneuver kind, std::size_t duration) {
  std::vector<double> out(duration, 0.0);
  if (duration < 2) return out;
  const double last = static_cast<double>(duration - 1);
  const auto lobe = [](double u) { return std::sin(std::numbers::pi * u); };  // u in [0, 1]
  for (std::size_t i = 0; i < duration; ++i) {
    const double u = static_cast<double>(i) / last;
    switch (kind) {
      case Maneuver::Brake:
      case Maneuver::Acceleration:
        out[i] = lobe(u);
        break;
      case Maneuver::BrakeAccelerate:
        // Longer braking lobe, shorter and weaker recovery lobe of opposite sign.
        out[i] = u < 0.6 ? lobe(u / 0.6) : -0.7 * lobe((u - 0.6) / 0.4);
        break;
      case Maneuver::LaneChange:
        out[i] = std::sin(2.0 * std::numbers::pi * u);
        break;
    }
  }
  return out;
}

SynthTrip synth_trip(const SynthSpec& spec, std::uint64_t seed) {
  if (!(spec.sample_rate_hz > 0.0)) throw Error(ErrorKind::InvalidConfig, "sample rate must be positive");
  if (spec.noise_sigma < 0.0) throw Error(ErrorKind::InvalidConfig, "noise sigma must be >= 0");
  if (spec.min_gap == 0) throw Error(ErrorKind::SpecInfeasible, "min_gap must be >= 1");
  for (const auto& t : spec.templates) {
    if (t.min_duration < 2 || t.max_duration < t.min_duration) {
      throw Error(ErrorKind::SpecInfeasible, "template durations must satisfy 2 <= min <= max");
    }
    if (!(t.amplitude != 0.0) || !std::isfinite(t.amplitude)) {
      throw Error(ErrorKind::SpecInfeasible, "template amplitude must be non-zero");
    }
  }

  std::mt19937_64 rng(seed);

  struct Instance {
    Maneuver kind;
    double amplitude;
    std::size_t duration;
  };
  std::vector<Instance> instances;
  for (const auto& t : spec.templates) {
    std::uniform_int_distribution<std::size_t> dur(t.min_duration, t.max_duration);
    for (std::size_t c = 0; c < t.count; ++c) instances.push_back({t.kind, t.amplitude, dur(rng)});
  }
  std::shuffle(instances.begin(), instances.end(), rng);

  const std::size_t k = instances.size();
  std::size_t occupied = (k + 1) * spec.min_gap;
  for (const auto& inst : instances) occupied += inst.duration;
  if (occupied > spec.samples) {
    throw Error(ErrorKind::SpecInfeasible, std::to_string(k) + " templates need " +
                                               std::to_string(occupied) + " samples, trip has " +
                                               std::to_string(spec.samples));
  }

  // Spread the free samples over the k + 1 gaps with random weights.
  const std::size_t slack = spec.samples - occupied;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights(k + 1);
  for (auto& w : weights) w = unit(rng);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> extra(k + 1, 0);
  std::size_t given = 0;
  for (std::size_t g = 0; g < k; ++g) {
    extra[g] = static_cast<std::size_t>(std::floor(static_cast<double>(slack) * weights[g] / total));
    given += extra[g];
  }
  extra[k] = slack - given;

  std::vector<double> values(spec.samples, spec.baseline);
  if (spec.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (auto& v : values) v += noise(rng);
  }

  SynthTrip trip;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < k; ++i) {
    cursor += spec.min_gap + extra[i];
    const auto& inst = instances[i];
    const auto shape = maneuver_shape(inst.kind, inst.duration);
    for (std::size_t j = 0; j < inst.duration; ++j) values[cursor + j] += inst.amplitude * shape[j];
    trip.truth.push_back({{cursor, inst.duration}, inst.kind});
    cursor += inst.duration;
  }
  trip.series = TimeSeries(std::move(values), spec.sample_rate_hz, "synthetic");
  return trip;
}

}  // namespace drivemotif
