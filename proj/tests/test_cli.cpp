#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drivemotif/report.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
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

fs::path write_spec(const fs::path& dir, double sigma) {
  const auto p = dir / "spec.json";
  std::ofstream(p) << R"({"samples": 1500, "noise_sigma": )" << sigma
                   << R"(, "templates": [{"kind": "brake", "count": 4, "amplitude": -0.3,
                         "min_duration": 18, "max_duration": 24}]})";
  return p;
}

}  // namespace

TEST_CASE("synth, discover and report round trip") {
  const auto dir = oracle::scratch_dir("cli_flow");
  const auto spec = write_spec(dir, 0.01);
  REQUIRE(run("synth --spec " + spec.string() + " --seed 3 --out " + (dir / "trip").string()) == 0);
  CHECK(fs::exists(dir / "trip" / "trip.txt"));
  CHECK(fs::exists(dir / "trip" / "labels.txt"));
  CHECK(fs::exists(dir / "trip" / "truth.json"));

  const std::string common = (dir / "trip" / "trip.txt").string() +
                             " --column 1 --rate 10 --window 20 --paa 2 --alphabet 5 --radius 0.1"
                             " --labels " + (dir / "trip" / "labels.txt").string() + " --seed 3";
  REQUIRE(run("discover " + common + " --out " + (dir / "a").string()) == 0);
  REQUIRE(run("discover " + common + " --out " + (dir / "b").string()) == 0);
  CHECK(slurp(dir / "a" / drivemotif::kReportFile) == slurp(dir / "b" / drivemotif::kReportFile));
  CHECK(slurp(dir / "a" / drivemotif::kSummaryFile) == slurp(dir / "b" / drivemotif::kSummaryFile));

  const auto report = drivemotif::read_report(dir / "a" / drivemotif::kReportFile);
  CHECK(report.seed == 3u);
  CHECK(report.labels.size() == 4);
  CHECK(report.config.window_size == 20);

  std::size_t plots = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) plots += e.path().extension() == ".svg";
  CHECK(plots == report.pruned.size());

  for (const auto& e : fs::directory_iterator(dir / "a"))
    if (e.path().extension() == ".svg") fs::remove(e.path());
  CHECK(run("report --in " + (dir / "a").string()) == 0);
  std::size_t again = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) again += e.path().extension() == ".svg";
  CHECK(again == plots);
}

TEST_CASE("exit codes") {
  const auto dir = oracle::scratch_dir("cli_codes");
  CHECK(run("discover " + (dir / "missing.txt").string() + " --out " + dir.string()) == 2);
  {
    std::ofstream(dir / "short.txt") << "1\n2\n3\n";
  }
  CHECK(run("discover " + (dir / "short.txt").string() + " --out " + (dir / "o").string()) == 2);
  {
    std::ofstream f(dir / "ok.txt");
    for (int i = 0; i < 200; ++i) f << (i % 13) * 0.1 << "\n";
  }
  const std::string ok = (dir / "ok.txt").string();
  CHECK(run("discover " + ok + " --window 21 --paa 2 --out " + (dir / "o").string()) == 3);
  CHECK(run("discover " + ok + " --alphabet 30 --out " + (dir / "o").string()) == 3);
  CHECK(run("discover " + ok + " --radius -1 --out " + (dir / "o").string()) == 3);
  CHECK(run("discover " + ok + " --preset nonsense --out " + (dir / "o").string()) == 3);
  CHECK(run("discover " + ok + " --column 4 --out " + (dir / "o").string()) == 2);
  CHECK(run("discover " + ok + " --out " + (dir / "o").string()) == 0);
  CHECK(run("report --in " + (dir / "nowhere").string()) == 2);
  CHECK(run("synth --spec " + (dir / "nospec.json").string() + " --out " + (dir / "s").string()) == 2);
  CHECK(run("frobnicate") == 3);
}

TEST_CASE("constant input yields an empty report") {
  const auto dir = oracle::scratch_dir("cli_constant");
  {
    std::ofstream f(dir / "flat.txt");
    for (int i = 0; i < 100; ++i) f << "0.5\n";
  }
  REQUIRE(run("discover " + (dir / "flat.txt").string() + " --out " + (dir / "o").string()) == 0);
  const auto r = drivemotif::read_report(dir / "o" / drivemotif::kReportFile);
  CHECK(r.motifs.empty());
  CHECK_FALSE(r.note.empty());
}
