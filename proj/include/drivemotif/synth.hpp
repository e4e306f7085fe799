#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "drivemotif/core.hpp"
#include "drivemotif/io.hpp"

namespace drivemotif {

enum class Maneuver { Brake, Acceleration, BrakeAccelerate, LaneChange };

std::string_view to_string(Maneuver kind);
Maneuver parse_maneuver(std::string_view name);
/// Label kind a planted maneuver starts with (brake for brake-then-accelerate).
EventKind event_kind(Maneuver kind);

/// `count` instances of one template. Durations are drawn uniformly from
/// [min_duration, max_duration]; the template is scaled by `amplitude`.
struct TemplateSpec {
  Maneuver kind = Maneuver::Brake;
  std::size_t count = 1;
  double amplitude = -0.3;
  std::size_t min_duration = 20;
  std::size_t max_duration = 20;
};

struct SynthSpec {
  std::size_t samples = 12000;
  double sample_rate_hz = 10.0;
  double noise_sigma = 0.02;
  double baseline = 0.0;
  /// Minimum flat gap between templates and before/after the first/last one.
  std::size_t min_gap = 20;
  std::vector<TemplateSpec> templates;
};

struct PlantedManeuver {
  Segment segment;
  Maneuver kind = Maneuver::Brake;
};

struct SynthTrip {
  TimeSeries series;
  std::vector<PlantedManeuver> truth;  // sorted by start
};

/// Template shape on `duration` samples with unit amplitude.
std::vector<double> maneuver_shape(Maneuver kind, std::size_t duration);

/// Deterministic for a given (spec, seed). Throws SpecInfeasible when the
/// templates and gaps do not fit in `samples`.
SynthTrip synth_trip(const SynthSpec& spec, std::uint64_t seed);

}  // namespace drivemotif
