#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drivemotif/discovery.hpp"
#include "drivemotif/io.hpp"
#include "drivemotif/selection.hpp"

namespace drivemotif {

struct MemberEntry {
  Segment segment;
  double start_s = 0.0;
  double end_s = 0.0;  // exclusive
  double distance = 0.0;
  std::vector<std::size_t> labels;  // indices into MotifReport::labels
  std::vector<double> values;       // normalized samples; filled for k-motifs only
};

struct MotifEntry {
  std::size_t rank = 0;  // 1-based MDL rank among all candidates
  std::optional<std::size_t> pruned_rank;
  double mdl_cost = 0.0;
  std::vector<std::string> pattern;
  Segment center;
  double center_start_s = 0.0;
  double center_duration_s = 0.0;
  int cluster = ClusterAssignment::kOutlier;
  std::vector<MemberEntry> members;
};

struct TripInfo {
  std::string name;
  std::string source;
  double sample_rate_hz = 10.0;
  std::size_t samples = 0;
  std::size_t total_rows = 0;
  std::size_t dropped_rows = 0;
  double time_origin_s = 0.0;
  double duration_s = 0.0;
  double mean = 0.0;
  double std = 1.0;
};

struct ReportCounts {
  std::size_t candidates = 0;
  std::size_t pruned = 0;
  std::size_t clusters = 0;
  std::size_t outliers = 0;
};

/// Everything a discover run produced, in seconds for people and samples for
/// programs. `pruned` and `outliers` index into `motifs`.
struct MotifReport {
  TripInfo trip;
  DiscoveryConfig config;
  std::optional<std::uint64_t> seed;
  std::string note;
  std::size_t modified_words = 0;
  std::size_t distinct_words = 0;
  std::size_t patterns_examined = 0;
  ReportCounts counts;
  std::vector<MotifEntry> motifs;
  std::vector<std::size_t> pruned;
  std::vector<std::size_t> outliers;
  std::vector<EventLabel> labels;
  std::vector<std::size_t> unmatched_labels;
  std::size_t labels_out_of_range = 0;
};

/// Report with trip metadata and config only, for runs that found nothing.
MotifReport empty_report(const LoadedTrip& trip, const std::string& source,
                         const DiscoveryConfig& cfg, std::string note);

MotifReport build_report(const LoadedTrip& trip, const std::string& source,
                         const DiscoveryConfig& cfg, const DiscoveryResult& result,
                         const PrunedMotifSet& pruned, const ClusterAssignment& clusters);

/// Attaches each label to the members whose time span contains it. Labels
/// outside the trip are counted and dropped; motifs and members are untouched.
MotifReport overlay_labels(MotifReport report, std::span<const EventLabel> labels);

std::string to_json_text(const MotifReport& report);
MotifReport report_from_json_text(const std::string& text);
MotifReport read_report(const std::filesystem::path& path);

/// CSV with the per-trip counts: candidates, pruned, clusters, outliers.
std::string summary_csv(const MotifReport& report);

/// SVG overlay of the members of the k-motif with 1-based `pruned_rank`.
std::string render_motif_svg(const MotifReport& report, std::size_t pruned_rank);

inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kSummaryFile = "summary.csv";

/// Writes motif_NNN.svg for the first `top_k` k-motifs (all when unset).
std::vector<std::filesystem::path> render_plots(const MotifReport& report,
                                                const std::filesystem::path& out_dir,
                                                std::optional<std::size_t> top_k = std::nullopt);

/// report.json, summary.csv and the plots. Returns every file written.
std::vector<std::filesystem::path> emit_report(const MotifReport& report,
                                               const std::filesystem::path& out_dir,
                                               std::optional<std::size_t> top_k = std::nullopt);

}  // namespace drivemotif
