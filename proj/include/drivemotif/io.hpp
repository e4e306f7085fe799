#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drivemotif/core.hpp"

namespace drivemotif {

/// Where a trip's samples live. Column indices are 0-based. A space delimiter
/// means "any run of whitespace", which is how UAH-DriveSet files are laid out.
struct TripSource {
  std::filesystem::path path;
  char delimiter = ' ';
  std::size_t value_column = 0;
  std::optional<std::size_t> timestamp_column;
  double sample_rate_hz = 10.0;
};

/// Named column layouts. UAH-DriveSet RAW_ACCELEROMETERS.txt carries the
/// Kalman-filtered y (lateral) and z (longitudinal) axes in columns 6 and 7.
struct Preset {
  std::string_view name;
  char delimiter;
  std::size_t value_column;
  std::optional<std::size_t> timestamp_column;
};

std::optional<Preset> find_preset(std::string_view name);
void apply(const Preset& preset, TripSource& src);

struct LoadedTrip {
  TimeSeries series;
  std::size_t total_rows = 0;
  std::size_t dropped_rows = 0;
  /// First retained timestamp when a timestamp column is configured, else 0.
  double time_origin_s = 0.0;
};

/// Reads `value_column` row by row. Blank, short, unparseable and non-finite
/// rows are dropped and counted; the sampling rate is taken from `src`.
LoadedTrip load_trip(const TripSource& src, std::size_t min_samples = 1);

enum class EventKind { Brake, Acceleration, Turn, Other };

std::string_view to_string(EventKind kind);
/// Accepts names ("brake", "braking", ...) and UAH event codes (1 brake, 2 turn, 3 acceleration).
EventKind parse_event_kind(std::string_view token);

struct EventLabel {
  double time_s = 0.0;
  EventKind kind = EventKind::Other;

  friend bool operator==(const EventLabel&, const EventLabel&) = default;
};

/// One label per row: time in seconds, then kind. Matches the UAH
/// EVENTS_INERTIAL.txt layout with the default columns.
std::vector<EventLabel> load_labels(const std::filesystem::path& path, char delimiter = ' ',
                                    std::size_t time_column = 0, std::size_t kind_column = 1);

/// Splits one text row. A space delimiter collapses whitespace runs.
std::vector<std::string_view> split_fields(std::string_view line, char delimiter);

/// Strict double parse of a whole field; nullopt for junk or non-finite values.
std::optional<double> parse_number(std::string_view field);

}  // namespace drivemotif
