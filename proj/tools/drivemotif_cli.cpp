// drivemotif: variable-length motif discovery for vehicle telematics trips.
//
//   drivemotif discover <input> --column N [--preset uah-lon|uah-lat] [--out DIR] ...
//   drivemotif synth --spec FILE --seed S --out DIR
//   drivemotif report --in DIR
//
// Exit codes: 0 success, 2 input error, 3 config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "drivemotif/discovery.hpp"
#include "drivemotif/io.hpp"
#include "drivemotif/report.hpp"
#include "drivemotif/selection.hpp"
#include "drivemotif/synth.hpp"

namespace dm = drivemotif;
namespace fs = std::filesystem;

namespace {

constexpr int kInputError = 2;
constexpr int kConfigError = 3;

int exit_code(dm::ErrorKind kind) {
  switch (kind) {
    case dm::ErrorKind::InvalidConfig:
    case dm::ErrorKind::AlphabetOutOfRange:
    case dm::ErrorKind::IndivisibleSegment:
    case dm::ErrorKind::BandInfeasible:
    case dm::ErrorKind::SpecInfeasible:
      return kConfigError;
    default:
      return kInputError;
  }
}

struct DiscoverArgs {
  std::string input;
  std::size_t column = 0;
  std::optional<std::size_t> timestamp_column;
  std::string delimiter = " ";
  std::string preset;
  double rate = 10.0;
  dm::DiscoveryConfig cfg;
  std::optional<std::size_t> band;
  std::optional<double> eps;
  std::string labels;
  std::string out = "drivemotif_out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> top_k;
};

int run_discover(DiscoverArgs a) {
  dm::TripSource src;
  src.path = a.input;
  src.value_column = a.column;
  src.timestamp_column = a.timestamp_column;
  src.sample_rate_hz = a.rate;
  if (a.delimiter == "\\t" || a.delimiter == "tab") a.delimiter = "\t";
  if (a.delimiter.size() != 1) throw dm::Error(dm::ErrorKind::InvalidConfig, "delimiter must be one character");
  src.delimiter = a.delimiter[0];
  if (!a.preset.empty()) {
    const auto preset = dm::find_preset(a.preset);
    if (!preset) throw dm::Error(dm::ErrorKind::InvalidConfig, "unknown preset '" + a.preset + "'");
    dm::apply(*preset, src);
  }
  a.cfg.dtw_band = a.band;
  a.cfg.dbscan_eps = a.eps;
  dm::validate(a.cfg);

  const auto trip = dm::load_trip(src, a.cfg.window_size);
  if (trip.dropped_rows > 0) {
    std::cerr << "warning: dropped " << trip.dropped_rows << " of " << trip.total_rows
              << " rows without a usable value\n";
  }
  std::vector<dm::EventLabel> labels;
  if (!a.labels.empty()) labels = dm::load_labels(a.labels);

  dm::MotifReport report;
  try {
    const auto result = dm::discover(trip.series, a.cfg);
    const auto series = result.normalized.series.values();
    const dm::DistanceOptions opts{a.cfg.dtw_band, true};
    const auto pruned = dm::prune_k_motifs(result.motifs, a.cfg.radius_r, series, opts);
    const auto clusters = dm::dbscan_motifs(result.motifs, series, a.cfg.eps(), a.cfg.dbscan_min_pts,
                                            opts, a.cfg.threads);
    report = dm::build_report(trip, a.input, a.cfg, result, pruned, clusters);
  } catch (const dm::Error& e) {
    if (e.kind() != dm::ErrorKind::ConstantSeries) throw;
    report = dm::empty_report(trip, a.input, a.cfg, "constant series: no motifs");
  }
  report.seed = a.seed;
  report = dm::overlay_labels(std::move(report), labels);
  dm::emit_report(report, a.out, a.top_k);

  std::cout << "trip " << report.trip.name << ": " << report.counts.candidates << " motifs, "
            << report.counts.pruned << " after pruning, " << report.counts.clusters
            << " DBSCAN clusters, " << report.counts.outliers << " outliers -> " << a.out << "\n";
  if (!report.note.empty()) std::cout << report.note << "\n";
  return 0;
}

dm::SynthSpec parse_synth_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw dm::Error(dm::ErrorKind::FileUnreadable, "cannot read '" + path.string() + "'");
  dm::SynthSpec spec;
  try {
    const auto j = nlohmann::json::parse(in);
    spec.samples = j.value("samples", spec.samples);
    spec.sample_rate_hz = j.value("sample_rate_hz", spec.sample_rate_hz);
    spec.noise_sigma = j.value("noise_sigma", spec.noise_sigma);
    spec.baseline = j.value("baseline", spec.baseline);
    spec.min_gap = j.value("min_gap", spec.min_gap);
    for (const auto& t : j.value("templates", nlohmann::json::array())) {
      dm::TemplateSpec ts;
      ts.kind = dm::parse_maneuver(t.value("kind", std::string("brake")));
      ts.count = t.value("count", ts.count);
      ts.amplitude = t.value("amplitude", ts.amplitude);
      ts.min_duration = t.value("min_duration", ts.min_duration);
      ts.max_duration = t.value("max_duration", ts.max_duration);
      spec.templates.push_back(ts);
    }
  } catch (const nlohmann::json::exception& e) {
    throw dm::Error(dm::ErrorKind::InvalidConfig, std::string("bad synth spec: ") + e.what());
  }
  return spec;
}

int run_synth(const std::string& spec_path, std::uint64_t seed, const fs::path& out) {
  const auto spec = parse_synth_spec(spec_path);
  const auto trip = dm::synth_trip(spec, seed);
  std::error_code ec;
  fs::create_directories(out, ec);

  std::ostringstream data;
  data.precision(17);
  const double dt = 1.0 / trip.series.sample_rate_hz();
  for (std::size_t i = 0; i < trip.series.size(); ++i) {
    data << static_cast<double>(i) * dt << ' ' << trip.series[i] << '\n';
  }
  std::ostringstream labels;
  labels.precision(17);
  nlohmann::ordered_json truth = nlohmann::ordered_json::array();
  for (const auto& t : trip.truth) {
    labels << static_cast<double>(t.segment.start) * dt << ' ' << dm::to_string(dm::event_kind(t.kind)) << '\n';
    truth.push_back({{"kind", dm::to_string(t.kind)}, {"start", t.segment.start}, {"length", t.segment.length}});
  }
  const std::pair<const char*, std::string> files[] = {
      {"trip.txt", data.str()}, {"labels.txt", labels.str()}, {"truth.json", truth.dump(1) + "\n"}};
  for (const auto& [name, text] : files) {
    std::ofstream f(out / name, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw dm::Error(dm::ErrorKind::WriteFailure, "cannot write '" + (out / name).string() + "'");
  }
  std::cout << "wrote " << trip.series.size() << " samples with " << trip.truth.size()
            << " planted maneuvers to " << out.string() << " (value column 1)\n";
  return 0;
}

int run_report(const fs::path& dir, std::optional<std::size_t> top_k) {
  const auto report = dm::read_report(dir / dm::kReportFile);
  const auto plots = dm::render_plots(report, dir, top_k);
  std::cout << "rendered " << plots.size() << " plots in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-length motif discovery for 1-D telematics signals"};
  app.require_subcommand(1);

  DiscoverArgs d;
  auto* discover = app.add_subcommand("discover", "find, rank, prune and cluster motifs in one trip");
  discover->add_option("input", d.input, "delimited text file, one sample per row")->required();
  discover->add_option("--column", d.column, "0-based value column");
  discover->add_option("--timestamp-column", d.timestamp_column, "0-based timestamp column");
  discover->add_option("--delimiter", d.delimiter, "field delimiter; a space matches any whitespace run");
  discover->add_option("--preset", d.preset, "named column layout")->check(CLI::IsMember({"uah-lon", "uah-lat"}));
  discover->add_option("--rate", d.rate, "sampling rate in Hz");
  discover->add_option("--window", d.cfg.window_size, "SAX window size (samples)");
  discover->add_option("--paa", d.cfg.paa_size, "PAA frames per word");
  discover->add_option("--alphabet", d.cfg.alphabet_size, "SAX alphabet size");
  discover->add_option("--radius", d.cfg.radius_r, "motif radius R (z-normalized units)");
  discover->add_option("--min-pattern-words", d.cfg.min_pattern_words, "shortest pattern length in words");
  discover->add_option("--band", d.band, "Sakoe-Chiba half-width for DTW");
  discover->add_option("--eps", d.eps, "DBSCAN neighborhood radius (default R)");
  discover->add_option("--min-pts", d.cfg.dbscan_min_pts, "DBSCAN core-point threshold");
  discover->add_option("--threads", d.cfg.threads, "worker threads, 0 for all cores");
  discover->add_option("--labels", d.labels, "event labels: time_s kind per row");
  discover->add_option("--out", d.out, "output directory");
  discover->add_option("--seed", d.seed, "recorded in the report; the pipeline itself is deterministic");
  discover->add_option("--top-k", d.top_k, "plot only the first K k-motifs");

  std::string spec_path;
  std::uint64_t seed = 0;
  std::string synth_out = "synth_out";
  auto* synth = app.add_subcommand("synth", "generate a synthetic trip with planted maneuvers");
  synth->add_option("--spec", spec_path, "JSON trip description")->required();
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--out", synth_out, "output directory");

  std::string report_dir;
  std::optional<std::size_t> report_top_k;
  auto* report = app.add_subcommand("report", "re-render plots from a saved report");
  report->add_option("--in", report_dir, "directory holding report.json")->required();
  report->add_option("--top-k", report_top_k, "plot only the first K k-motifs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*discover) return run_discover(d);
    if (*synth) return run_synth(spec_path, seed, synth_out);
    if (*report) return run_report(report_dir, report_top_k);
  } catch (const dm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
