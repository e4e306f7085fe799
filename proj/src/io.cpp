#include "drivemotif/io.hpp"

#include <array>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace drivemotif {

namespace {

constexpr std::array<Preset, 2> kPresets{{
    {"uah-lat", ' ', 6, 0},
    {"uah-lon", ' ', 7, 0},
}};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in || std::filesystem::is_directory(path)) {
    throw Error(ErrorKind::FileUnreadable, "cannot read '" + path.string() + "'");
  }
  return in;
}

}  // namespace

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

void apply(const Preset& preset, TripSource& src) {
  src.delimiter = preset.delimiter;
  src.value_column = preset.value_column;
  src.timestamp_column = preset.timestamp_column;
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  if (delimiter == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

LoadedTrip load_trip(const TripSource& src, std::size_t min_samples) {
  auto in = open_or_throw(src.path);
  std::vector<double> values;
  LoadedTrip out;
  bool any_row_has_column = false;
  bool origin_set = false;

  std::string line;
  while (std::getline(in, line)) {
    ++out.total_rows;
    const auto fields = split_fields(line, src.delimiter);
    if (fields.size() > src.value_column) any_row_has_column = true;

    std::optional<double> value;
    std::optional<double> stamp;
    if (fields.size() > src.value_column) value = parse_number(fields[src.value_column]);
    if (src.timestamp_column) {
      if (fields.size() > *src.timestamp_column) stamp = parse_number(fields[*src.timestamp_column]);
      if (!stamp) value.reset();
    }
    if (!value) {
      ++out.dropped_rows;
      continue;
    }
    if (stamp && !origin_set) {
      out.time_origin_s = *stamp;
      origin_set = true;
    }
    values.push_back(*value);
  }

  if (out.total_rows > 0 && !any_row_has_column) {
    throw Error(ErrorKind::ColumnMissing, "no row of '" + src.path.string() + "' has column " +
                                              std::to_string(src.value_column));
  }
  if (values.size() < std::max<std::size_t>(min_samples, 1)) {
    throw Error(ErrorKind::TooFewSamples, "'" + src.path.string() + "' has " +
                                              std::to_string(values.size()) +
                                              " usable samples, need " + std::to_string(min_samples));
  }
  out.series = TimeSeries(std::move(values), src.sample_rate_hz, src.path.stem().string());
  return out;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Brake: return "brake";
    case EventKind::Acceleration: return "acceleration";
    case EventKind::Turn: return "turn";
    case EventKind::Other: return "other";
  }
  return "other";
}

EventKind parse_event_kind(std::string_view token) {
  token = trim(token);
  if (token == "brake" || token == "braking" || token == "1") return EventKind::Brake;
  if (token == "turn" || token == "turning" || token == "2") return EventKind::Turn;
  if (token == "acceleration" || token == "accelerate" || token == "3") return EventKind::Acceleration;
  return EventKind::Other;
}

std::vector<EventLabel> load_labels(const std::filesystem::path& path, char delimiter,
                                    std::size_t time_column, std::size_t kind_column) {
  auto in = open_or_throw(path);
  std::vector<EventLabel> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto fields = split_fields(line, delimiter);
    if (fields.size() <= std::max(time_column, kind_column)) continue;
    const auto t = parse_number(fields[time_column]);
    if (!t) continue;
    out.push_back({*t, parse_event_kind(fields[kind_column])});
  }
  return out;
}

}  // namespace drivemotif
