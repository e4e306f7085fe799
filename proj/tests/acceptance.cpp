// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drivemotif/io.hpp"
#include "drivemotif/report.hpp"
#include "drivemotif/synth.hpp"
#include "invariants.hpp"
#include "oracles.hpp"

namespace dm = drivemotif;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  failures += !ok;
}

bool covers(const dm::Segment& member, const dm::Segment& planted) {
  const std::size_t lo = std::max(member.start, planted.start);
  const std::size_t hi = std::min(member.end(), planted.end());
  return hi > lo && 2 * (hi - lo) >= planted.length;
}

std::size_t coverage(const dm::Motif& m, const std::vector<dm::PlantedManeuver>& truth) {
  std::size_t n = 0;
  for (const auto& t : truth) {
    n += std::any_of(m.members.begin(), m.members.end(),
                     [&](const dm::Segment& s) { return covers(s, t.segment); });
  }
  return n;
}

dm::SynthSpec recall_spec() {
  dm::SynthSpec spec;
  spec.samples = 12000;
  spec.sample_rate_hz = 10.0;
  spec.noise_sigma = 0.02;
  spec.templates = {{dm::Maneuver::Brake, 8, -0.3, 18, 24}};
  return spec;
}

struct RecallRun {
  dm::SynthTrip trip;
  dm::DiscoveryResult result;
  dm::PrunedMotifSet pruned;
  double seconds = 0.0;
};

RecallRun recall_run() {
  RecallRun r{dm::synth_trip(recall_spec(), 2024), {}, {}, 0.0};
  dm::DiscoveryConfig cfg;  // window 20, PAA 2, alphabet 5, R 0.1
  const auto t0 = std::chrono::steady_clock::now();
  r.result = dm::discover(r.trip.series, cfg);
  r.pruned = dm::prune_k_motifs(r.result.motifs, cfg.radius_r, r.result.normalized.series.values());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void criterion1(const RecallRun& r) {
  std::size_t best_pruned = 0, best_any = 0;
  for (const auto& m : r.pruned.motifs) best_pruned = std::max(best_pruned, coverage(m, r.trip.truth));
  for (const auto& m : r.result.motifs) best_any = std::max(best_any, coverage(m, r.trip.truth));
  std::ostringstream d;
  d << "best k-motif covers " << best_pruned << "/8 planted dips (any candidate: " << best_any
    << "/8), " << r.result.motifs.size() << " candidates, " << r.seconds << " s";
  verdict(1, best_pruned >= 6 && r.seconds < 60.0, d.str());
}

void criterion2(const RecallRun& r) {
  std::size_t widest = 0;
  for (const auto& m : r.result.motifs) {
    for (const auto& a : m.members)
      for (const auto& b : m.members)
        widest = std::max(widest, a.length > b.length ? a.length - b.length : 0);
  }
  verdict(2, widest >= 2, "largest member length difference within one motif: " + std::to_string(widest));
}

void criterion3(const RecallRun& r) {
  const std::size_t cand = r.result.motifs.size(), pruned = r.pruned.motifs.size();
  // An empty candidate list would satisfy the inequalities without pruning anything.
  bool ok = cand > 0 && pruned <= 20 && cand >= 100 * pruned;
  std::ostringstream d;
  d << "synthetic trip: " << cand << " candidates -> " << pruned << " k-motifs";
  if (const char* uah = std::getenv("DRIVEMOTIF_UAH_TRIP")) {
    dm::TripSource src;
    src.path = uah;
    dm::apply(*dm::find_preset("uah-lon"), src);
    const auto trip = dm::load_trip(src, 20);
    dm::DiscoveryConfig cfg;
    const auto res = dm::discover(trip.series, cfg);
    const auto p = dm::prune_k_motifs(res.motifs, cfg.radius_r, res.normalized.series.values());
    d << "; UAH trip: " << res.motifs.size() << " -> " << p.motifs.size();
    ok = ok && p.motifs.size() <= 20 && res.motifs.size() >= 100 * p.motifs.size();
  } else {
    d << "; no UAH trip configured (DRIVEMOTIF_UAH_TRIP)";
  }
  verdict(3, ok, d.str());
}

void criterion4() {
  std::mt19937_64 rng(4242);
  std::size_t trips = 0, motifs = 0, kmotifs = 0;
  std::vector<std::string> problems;
  for (int t = 0; t < 50; ++t) {
    dm::SynthSpec spec;
    spec.samples = 1500 + rng() % 2500;
    spec.noise_sigma = std::vector<double>{0.002, 0.005, 0.01, 0.02}[rng() % 4];
    spec.min_gap = 20 + rng() % 40;
    const auto kinds = {dm::Maneuver::Brake, dm::Maneuver::Acceleration, dm::Maneuver::BrakeAccelerate,
                        dm::Maneuver::LaneChange};
    for (auto kind : kinds) {
      if (rng() % 2) continue;
      const std::size_t lo = 16 + rng() % 20;
      spec.templates.push_back({kind, 2 + rng() % 4, (rng() % 2 ? 1.0 : -1.0) * (0.1 + 0.05 * (rng() % 5)),
                                lo, lo + rng() % 8});
    }
    const auto trip = dm::synth_trip(spec, rng());
    dm::DiscoveryConfig cfg;
    const auto res = dm::discover(trip.series, cfg);
    const auto series = res.normalized.series.values();
    auto bad = invariants::check_discovery(res, cfg);
    const auto pruned = dm::prune_k_motifs(res.motifs, cfg.radius_r, series);
    for (auto& b : invariants::check_pruned(pruned, series, cfg.radius_r, {})) bad.push_back(b);

    const auto raw = dm::sax_sequence(series, cfg);
    if (dm::expand_runs(res.words) != raw) bad.push_back("round trip differs");
    std::size_t runs = 0;
    for (const auto& w : res.words) runs += w.run_count;
    if (runs != series.size() - cfg.window_size + 1) bad.push_back("run counts do not sum to window count");

    for (auto& b : bad) problems.push_back("trip " + std::to_string(t) + ": " + b);
    ++trips;
    motifs += res.motifs.size();
    kmotifs += pruned.motifs.size();
  }
  std::ostringstream d;
  d << trips << " trips, " << motifs << " motifs, " << kmotifs << " k-motifs checked, " << problems.size()
    << " violations";
  if (!problems.empty()) d << " (first: " << problems.front() << ")";
  verdict(4, problems.empty() && motifs > 0 && kmotifs > 0, d.str());
}

void criterion5() {
  std::mt19937_64 rng(5);
  std::size_t dtw_ok = 0;
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::dyadic_sequence(rng, 1 + rng() % 6);
    const auto b = oracle::dyadic_sequence(rng, 1 + rng() % 6);
    const auto expect = oracle::dtw_enumerate(a, b);
    const auto got = dm::dtw_path(a, b);
    dtw_ok += got.cost == expect.cost && got.path_length == expect.length &&
              dm::dtw(a, b) == expect.cost / static_cast<double>(expect.length);
  }

  std::size_t db_ok = 0;
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    // Motif centers on a random walk; distances are the real center DTW.
    std::vector<double> v(3000);
    double walk = 0.0;
    for (auto& x : v) x = (walk = 0.97 * walk + 0.25 * nd(rng));
    const std::size_t n = 2 + rng() % 49;
    std::vector<dm::Motif> ms(n);
    for (auto& m : ms) {
      m.center = {rng() % 2950, 15 + rng() % 30};
      m.center.start = std::min(m.center.start, v.size() - m.center.length);
    }
    const auto d = dm::center_distances(ms, v);
    std::vector<double> all;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) all.push_back(d(i, j));
    std::sort(all.begin(), all.end());
    const double eps = all[all.size() * (5 + rng() % 30) / 100];
    const std::size_t min_pts = 2 + rng() % 4;
    const auto got = dm::dbscan(d, eps, min_pts);
    db_ok += oracle::same_up_to_renaming(got.labels, oracle::dbscan_reference(d, eps, min_pts));
  }
  verdict(5, dtw_ok == 20 && db_ok == 20,
          "DTW exact on " + std::to_string(dtw_ok) + "/20 cases, DBSCAN matches oracle on " +
              std::to_string(db_ok) + "/20 sets");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DRIVEMOTIF_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion6(const RecallRun& r) {
  const auto dir = oracle::scratch_dir("acceptance_determinism");
  {
    std::ofstream f(dir / "trip.txt");
    f.precision(17);
    for (double x : r.trip.series.values()) f << x << "\n";
  }
  const std::string base = "discover " + (dir / "trip.txt").string() + " --column 0 --seed 7 --out ";
  const int a = run_cli(base + (dir / "a").string());
  const int b = run_cli(base + (dir / "b").string());
  const auto ra = slurp(dir / "a" / dm::kReportFile), rb = slurp(dir / "b" / dm::kReportFile);
  const bool same = a == 0 && b == 0 && !ra.empty() && ra == rb &&
                    slurp(dir / "a" / dm::kSummaryFile) == slurp(dir / "b" / dm::kSummaryFile);
  verdict(6, same, "two CLI runs: exit " + std::to_string(a) + "/" + std::to_string(b) + ", report " +
                       std::to_string(ra.size()) + " bytes, " + (ra == rb ? "identical" : "different"));
}

}  // namespace

int main() {
  try {
    const auto r = recall_run();
    criterion1(r);
    criterion2(r);
    criterion3(r);
    criterion4();
    criterion5();
    criterion6(r);
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
