#include <doctest.h>

#include <fstream>
#include <sstream>

#include "drivemotif/report.hpp"
#include "drivemotif/synth.hpp"
#include "oracles.hpp"

using namespace drivemotif;

namespace {

LoadedTrip flat_trip(std::size_t n, double rate = 10.0) {
  LoadedTrip t;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i % 7);
  t.series = TimeSeries(v, rate, "flat");
  t.total_rows = n;
  return t;
}

MemberEntry member(std::size_t start, std::size_t len, double rate = 10.0) {
  MemberEntry m;
  m.segment = {start, len};
  m.start_s = static_cast<double>(start) / rate;
  m.end_s = static_cast<double>(start + len) / rate;
  return m;
}

// Report with `k` motifs of two members each, all of them k-motifs.
MotifReport synthetic_report(std::size_t k) {
  auto r = empty_report(flat_trip(600), "mem", DiscoveryConfig{}, {});
  for (std::size_t i = 0; i < k; ++i) {
    MotifEntry e;
    e.rank = i + 1;
    e.pruned_rank = i + 1;
    e.mdl_cost = 10.0 + static_cast<double>(i);
    e.pattern = {"cc", "bd"};
    e.center = {100 * i, 20};
    e.center_start_s = 10.0 * static_cast<double>(i);
    e.center_duration_s = 2.0;
    e.members = {member(100 * i, 20), member(100 * i + 50, 22)};
    for (auto& m : e.members) m.values.assign(m.segment.length, 0.5);
    r.motifs.push_back(e);
    r.pruned.push_back(i);
  }
  r.counts = {k, k, 0, 0};
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> svg_files(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".svg") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("overlay attaches labels by containment") {
  auto r = empty_report(flat_trip(600), "mem", DiscoveryConfig{}, {});
  MotifEntry e;
  e.rank = 1;
  e.members = {member(115, 25), member(300, 25)};  // 11.5-14.0 s and 30.0-32.5 s
  r.motifs.push_back(e);
  r.counts.candidates = 1;
  const std::vector<EventLabel> labels{
      {12.0, EventKind::Brake}, {50.0, EventKind::Acceleration}, {100.0, EventKind::Turn}, {14.0, EventKind::Brake}};
  const auto o = overlay_labels(r, labels);
  REQUIRE(o.labels.size() == 3);
  CHECK(o.labels_out_of_range == 1);
  CHECK(o.motifs[0].members[0].labels == std::vector<std::size_t>{0});
  // The near-identical second member carries no label; both stay in the motif.
  CHECK(o.motifs[0].members[1].labels.empty());
  CHECK(o.motifs[0].members.size() == 2);
  CHECK(o.unmatched_labels == std::vector<std::size_t>{1, 2});
  CHECK(o.counts.candidates == r.counts.candidates);
  CHECK(o.motifs[0].members[1].segment == r.motifs[0].members[1].segment);
  // Overlay replaces, never accumulates.
  const auto twice = overlay_labels(o, labels);
  CHECK(to_json_text(twice) == to_json_text(o));
}

TEST_CASE("json round trip is lossless") {
  auto r = synthetic_report(3);
  r.seed = 42;
  r.note = "hello";
  r.outliers = {1};
  r.motifs[1].cluster = -1;
  r.motifs[0].cluster = 0;
  r = overlay_labels(r, std::vector<EventLabel>{{1.0, EventKind::Brake}, {55.0, EventKind::Other}});
  const auto text = to_json_text(r);
  CHECK(text.find("\"format\"") != std::string::npos);
  const auto back = report_from_json_text(text);
  CHECK(to_json_text(back) == text);
  CHECK(back.seed == 42u);
  CHECK(back.motifs[1].members[1].segment == Segment{150, 22});
  CHECK(back.motifs[0].members[0].labels == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(report_from_json_text("{not json"), Error);
}

TEST_CASE("summary table") {
  const auto r = synthetic_report(2);
  const auto csv = summary_csv(r);
  CHECK(csv == "trip,motifs,motifs_after_pruning,dbscan_clusters,dbscan_outliers\nflat,2,2,0,0\n");
}

TEST_CASE("emit_report with no motifs writes no plots") {
  const auto dir = oracle::scratch_dir("report_empty");
  const auto files = emit_report(empty_report(flat_trip(100), "mem", DiscoveryConfig{}, "nothing"), dir);
  CHECK(std::filesystem::exists(dir / kReportFile));
  CHECK(std::filesystem::exists(dir / kSummaryFile));
  CHECK(svg_files(dir).empty());
  CHECK(files.size() == 2);
  CHECK(read_report(dir / kReportFile).note == "nothing");
}

TEST_CASE("one plot per k-motif, rank ordered") {
  const auto dir = oracle::scratch_dir("report_three");
  emit_report(synthetic_report(3), dir);
  CHECK(svg_files(dir) == std::vector<std::string>{"motif_001.svg", "motif_002.svg", "motif_003.svg"});
  const auto svg = slurp(dir / "motif_002.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // A smaller re-render removes stale plots.
  render_plots(synthetic_report(3), dir, 1);
  CHECK(svg_files(dir) == std::vector<std::string>{"motif_001.svg"});
}

TEST_CASE("label markers appear in plots") {
  auto r = overlay_labels(synthetic_report(1), std::vector<EventLabel>{{1.0, EventKind::Brake}});
  const auto svg = render_motif_svg(r, 1);
  CHECK(svg.find("brake") != std::string::npos);
  CHECK_THROWS_AS(render_motif_svg(r, 2), Error);
}

TEST_CASE("build_report is consistent and deterministic") {
  SynthSpec spec;
  spec.samples = 1500;
  spec.noise_sigma = 0.01;
  spec.templates = {{Maneuver::Brake, 4, -0.3, 20, 22}};
  const auto synth = synth_trip(spec, 4);
  LoadedTrip trip;
  trip.series = synth.series;
  trip.total_rows = synth.series.size();
  DiscoveryConfig cfg;
  const auto make = [&] {
    const auto res = discover(trip.series, cfg);
    const auto series = res.normalized.series.values();
    const auto pruned = prune_k_motifs(res.motifs, cfg.radius_r, series);
    const auto clusters = dbscan_motifs(res.motifs, series, cfg.eps(), cfg.dbscan_min_pts);
    return build_report(trip, "synthetic", cfg, res, pruned, clusters);
  };
  const auto a = make();
  CHECK(to_json_text(a) == to_json_text(make()));
  CHECK(a.counts.candidates == a.motifs.size());
  CHECK(a.counts.pruned == a.pruned.size());
  CHECK(a.counts.outliers == a.outliers.size());
  for (std::size_t k = 0; k < a.pruned.size(); ++k) CHECK(a.motifs[a.pruned[k]].pruned_rank == k + 1);
  for (const auto& e : a.motifs) {
    for (const auto& m : e.members) {
      CHECK(m.start_s >= 0.0);
      CHECK(m.end_s <= a.trip.duration_s + 1e-9);
      CHECK(m.values.size() == (e.pruned_rank ? m.segment.length : 0));
    }
  }
}
