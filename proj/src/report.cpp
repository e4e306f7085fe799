#include "drivemotif/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace drivemotif {

using Json = nlohmann::ordered_json;

namespace {

double seconds(const TripInfo& trip, std::size_t sample) {
  return trip.time_origin_s + static_cast<double>(sample) / trip.sample_rate_hz;
}

TripInfo trip_info(const LoadedTrip& trip, const std::string& source) {
  TripInfo info;
  info.name = trip.series.name();
  info.source = source;
  info.sample_rate_hz = trip.series.sample_rate_hz();
  info.samples = trip.series.size();
  info.total_rows = trip.total_rows;
  info.dropped_rows = trip.dropped_rows;
  info.time_origin_s = trip.time_origin_s;
  info.duration_s = trip.series.duration_s();
  return info;
}

Json segment_json(const Segment& s) { return Json{{"start", s.start}, {"length", s.length}}; }
Segment segment_from(const Json& j) {
  return {j.at("start").get<std::size_t>(), j.at("length").get<std::size_t>()};
}

Json config_json(const DiscoveryConfig& c) {
  Json j;
  j["window_size"] = c.window_size;
  j["paa_size"] = c.paa_size;
  j["alphabet_size"] = c.alphabet_size;
  j["radius_r"] = c.radius_r;
  j["min_pattern_words"] = c.min_pattern_words;
  j["dtw_band"] = c.dtw_band ? Json(*c.dtw_band) : Json(nullptr);
  j["dbscan_eps"] = c.eps();
  j["dbscan_min_pts"] = c.dbscan_min_pts;
  return j;
}

DiscoveryConfig config_from(const Json& j) {
  DiscoveryConfig c;
  c.window_size = j.at("window_size").get<std::size_t>();
  c.paa_size = j.at("paa_size").get<std::size_t>();
  c.alphabet_size = j.at("alphabet_size").get<std::size_t>();
  c.radius_r = j.at("radius_r").get<double>();
  c.min_pattern_words = j.at("min_pattern_words").get<std::size_t>();
  if (!j.at("dtw_band").is_null()) c.dtw_band = j.at("dtw_band").get<std::size_t>();
  c.dbscan_eps = j.at("dbscan_eps").get<double>();
  c.dbscan_min_pts = j.at("dbscan_min_pts").get<std::size_t>();
  return c;
}

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* label_color(EventKind kind) {
  switch (kind) {
    case EventKind::Brake: return "#d62728";
    case EventKind::Acceleration: return "#2ca02c";
    case EventKind::Turn: return "#1f77b4";
    case EventKind::Other: return "#7f7f7f";
  }
  return "#7f7f7f";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::WriteFailure, "cannot write '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::WriteFailure, "cannot create directory '" + dir.string() + "'");
  }
}

}  // namespace

MotifReport empty_report(const LoadedTrip& trip, const std::string& source,
                         const DiscoveryConfig& cfg, std::string note) {
  MotifReport r;
  r.trip = trip_info(trip, source);
  r.config = cfg;
  r.note = std::move(note);
  return r;
}

MotifReport build_report(const LoadedTrip& trip, const std::string& source,
                         const DiscoveryConfig& cfg, const DiscoveryResult& result,
                         const PrunedMotifSet& pruned, const ClusterAssignment& clusters) {
  MotifReport r = empty_report(trip, source, cfg, {});
  r.trip.mean = result.normalized.mean;
  r.trip.std = result.normalized.std;
  r.modified_words = result.context.total_words;
  r.distinct_words = result.context.distinct_words;
  r.patterns_examined = result.patterns_examined;

  const auto series = result.normalized.series.values();
  const double rate = r.trip.sample_rate_hz;
  r.motifs.reserve(result.motifs.size());
  for (std::size_t i = 0; i < result.motifs.size(); ++i) {
    const Motif& m = result.motifs[i];
    MotifEntry e;
    e.rank = i + 1;
    e.mdl_cost = m.mdl_cost;
    for (const auto& w : m.pattern) e.pattern.push_back(w.str());
    e.center = m.center;
    e.center_start_s = seconds(r.trip, m.center.start);
    e.center_duration_s = static_cast<double>(m.center.length) / rate;
    if (i < clusters.labels.size()) e.cluster = clusters.labels[i];
    for (std::size_t k = 0; k < m.members.size(); ++k) {
      MemberEntry me;
      me.segment = m.members[k];
      me.start_s = seconds(r.trip, me.segment.start);
      me.end_s = seconds(r.trip, me.segment.end());
      me.distance = m.distances[k];
      e.members.push_back(std::move(me));
    }
    r.motifs.push_back(std::move(e));
  }

  for (std::size_t k = 0; k < pruned.source_index.size(); ++k) {
    const std::size_t idx = pruned.source_index[k];
    r.pruned.push_back(idx);
    auto& e = r.motifs[idx];
    e.pruned_rank = k + 1;
    for (auto& me : e.members) {
      const auto v = slice(series, me.segment);
      me.values.assign(v.begin(), v.end());
    }
  }
  r.outliers = clusters.outliers();
  r.counts = {r.motifs.size(), r.pruned.size(), clusters.cluster_count, r.outliers.size()};
  return r;
}

MotifReport overlay_labels(MotifReport report, std::span<const EventLabel> labels) {
  const double lo = report.trip.time_origin_s;
  const double hi = lo + report.trip.duration_s;
  report.labels.clear();
  report.unmatched_labels.clear();
  report.labels_out_of_range = 0;
  for (auto& e : report.motifs) {
    for (auto& me : e.members) me.labels.clear();
  }

  for (const auto& label : labels) {
    if (label.time_s < lo || label.time_s > hi) {
      ++report.labels_out_of_range;
      continue;
    }
    const std::size_t idx = report.labels.size();
    report.labels.push_back(label);
    bool matched = false;
    for (auto& e : report.motifs) {
      for (auto& me : e.members) {
        if (label.time_s >= me.start_s && label.time_s < me.end_s) {
          me.labels.push_back(idx);
          matched = true;
        }
      }
    }
    if (!matched) report.unmatched_labels.push_back(idx);
  }
  return report;
}

std::string to_json_text(const MotifReport& r) {
  Json j;
  j["format"] = "drivemotif-report/1";
  j["trip"] = {{"name", r.trip.name},
               {"source", r.trip.source},
               {"sample_rate_hz", r.trip.sample_rate_hz},
               {"samples", r.trip.samples},
               {"total_rows", r.trip.total_rows},
               {"dropped_rows", r.trip.dropped_rows},
               {"time_origin_s", r.trip.time_origin_s},
               {"duration_s", r.trip.duration_s},
               {"mean", r.trip.mean},
               {"std", r.trip.std}};
  j["config"] = config_json(r.config);
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["note"] = r.note;
  j["modified_words"] = r.modified_words;
  j["distinct_words"] = r.distinct_words;
  j["patterns_examined"] = r.patterns_examined;
  j["counts"] = {{"candidates", r.counts.candidates},
                 {"pruned", r.counts.pruned},
                 {"clusters", r.counts.clusters},
                 {"outliers", r.counts.outliers}};

  Json labels = Json::array();
  for (const auto& l : r.labels) labels.push_back({{"time_s", l.time_s}, {"kind", to_string(l.kind)}});
  j["labels"] = std::move(labels);
  j["unmatched_labels"] = r.unmatched_labels;
  j["labels_out_of_range"] = r.labels_out_of_range;
  j["pruned"] = r.pruned;
  j["outliers"] = r.outliers;

  Json motifs = Json::array();
  for (const auto& e : r.motifs) {
    Json m;
    m["rank"] = e.rank;
    m["pruned_rank"] = e.pruned_rank ? Json(*e.pruned_rank) : Json(nullptr);
    m["mdl_cost"] = e.mdl_cost;
    m["pattern"] = e.pattern;
    m["center"] = segment_json(e.center);
    m["center_start_s"] = e.center_start_s;
    m["center_duration_s"] = e.center_duration_s;
    m["cluster"] = e.cluster;
    Json members = Json::array();
    for (const auto& me : e.members) {
      Json x = segment_json(me.segment);
      x["start_s"] = me.start_s;
      x["end_s"] = me.end_s;
      x["distance"] = me.distance;
      x["labels"] = me.labels;
      if (!me.values.empty()) x["values"] = me.values;
      members.push_back(std::move(x));
    }
    m["members"] = std::move(members);
    motifs.push_back(std::move(m));
  }
  j["motifs"] = std::move(motifs);
  return j.dump(1) + "\n";
}

MotifReport report_from_json_text(const std::string& text) {
  MotifReport r;
  try {
    const Json j = Json::parse(text);
    const auto& t = j.at("trip");
    r.trip.name = t.at("name").get<std::string>();
    r.trip.source = t.at("source").get<std::string>();
    r.trip.sample_rate_hz = t.at("sample_rate_hz").get<double>();
    r.trip.samples = t.at("samples").get<std::size_t>();
    r.trip.total_rows = t.at("total_rows").get<std::size_t>();
    r.trip.dropped_rows = t.at("dropped_rows").get<std::size_t>();
    r.trip.time_origin_s = t.at("time_origin_s").get<double>();
    r.trip.duration_s = t.at("duration_s").get<double>();
    r.trip.mean = t.at("mean").get<double>();
    r.trip.std = t.at("std").get<double>();
    r.config = config_from(j.at("config"));
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.note = j.at("note").get<std::string>();
    r.modified_words = j.at("modified_words").get<std::size_t>();
    r.distinct_words = j.at("distinct_words").get<std::size_t>();
    r.patterns_examined = j.at("patterns_examined").get<std::size_t>();
    const auto& c = j.at("counts");
    r.counts = {c.at("candidates").get<std::size_t>(), c.at("pruned").get<std::size_t>(),
                c.at("clusters").get<std::size_t>(), c.at("outliers").get<std::size_t>()};
    for (const auto& l : j.at("labels")) {
      r.labels.push_back({l.at("time_s").get<double>(), parse_event_kind(l.at("kind").get<std::string>())});
    }
    r.unmatched_labels = j.at("unmatched_labels").get<std::vector<std::size_t>>();
    r.labels_out_of_range = j.at("labels_out_of_range").get<std::size_t>();
    r.pruned = j.at("pruned").get<std::vector<std::size_t>>();
    r.outliers = j.at("outliers").get<std::vector<std::size_t>>();
    for (const auto& m : j.at("motifs")) {
      MotifEntry e;
      e.rank = m.at("rank").get<std::size_t>();
      if (!m.at("pruned_rank").is_null()) e.pruned_rank = m.at("pruned_rank").get<std::size_t>();
      e.mdl_cost = m.at("mdl_cost").get<double>();
      e.pattern = m.at("pattern").get<std::vector<std::string>>();
      e.center = segment_from(m.at("center"));
      e.center_start_s = m.at("center_start_s").get<double>();
      e.center_duration_s = m.at("center_duration_s").get<double>();
      e.cluster = m.at("cluster").get<int>();
      for (const auto& x : m.at("members")) {
        MemberEntry me;
        me.segment = segment_from(x);
        me.start_s = x.at("start_s").get<double>();
        me.end_s = x.at("end_s").get<double>();
        me.distance = x.at("distance").get<double>();
        me.labels = x.at("labels").get<std::vector<std::size_t>>();
        if (x.contains("values")) me.values = x.at("values").get<std::vector<double>>();
        e.members.push_back(std::move(me));
      }
      r.motifs.push_back(std::move(e));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::FileUnreadable, std::string("malformed report: ") + e.what());
  }
  for (std::size_t idx : r.pruned) {
    if (idx >= r.motifs.size()) throw Error(ErrorKind::FileUnreadable, "pruned index out of range");
  }
  return r;
}

MotifReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileUnreadable, "cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json_text(buf.str());
}

std::string summary_csv(const MotifReport& r) {
  std::string out = "trip,motifs,motifs_after_pruning,dbscan_clusters,dbscan_outliers\n";
  std::string name = r.trip.name;
  std::replace(name.begin(), name.end(), ',', '_');
  out += name + "," + std::to_string(r.counts.candidates) + "," + std::to_string(r.counts.pruned) +
         "," + std::to_string(r.counts.clusters) + "," + std::to_string(r.counts.outliers) + "\n";
  return out;
}

std::string render_motif_svg(const MotifReport& r, std::size_t pruned_rank) {
  if (pruned_rank == 0 || pruned_rank > r.pruned.size()) {
    throw Error(ErrorKind::InvalidConfig, "no k-motif with rank " + std::to_string(pruned_rank));
  }
  const MotifEntry& e = r.motifs[r.pruned[pruned_rank - 1]];

  constexpr double W = 720, H = 400, left = 60, right = 170, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;

  double t_max = 0.0, v_min = 0.0, v_max = 0.0;
  bool first = true;
  for (const auto& me : e.members) {
    t_max = std::max(t_max, me.end_s - me.start_s);
    for (double v : me.values) {
      v_min = first ? v : std::min(v_min, v);
      v_max = first ? v : std::max(v_max, v);
      first = false;
    }
  }
  if (t_max <= 0.0) t_max = 1.0;
  if (v_max - v_min < 1e-9) {
    v_min -= 0.5;
    v_max += 0.5;
  }
  const double pad = 0.05 * (v_max - v_min);
  v_min -= pad;
  v_max += pad;
  const auto px = [&](double t) { return left + pw * t / t_max; };
  const auto py = [&](double v) { return top + ph * (v_max - v) / (v_max - v_min); };

  static constexpr std::array<const char*, 8> palette{"#1f77b4", "#ff7f0e", "#9467bd", "#8c564b",
                                                      "#e377c2", "#17becf", "#bcbd22", "#393b79"};
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left << "\" y=\"22\" font-size=\"14\">" << xml_escape(r.trip.name)
    << " - k-motif " << pruned_rank << " (rank " << e.rank << ", MDL " << fmt(e.mdl_cost)
    << " bits, " << e.members.size() << " members)</text>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = t_max * k / 4.0;
    const double v = v_min + (v_max - v_min) * k / 4.0;
    s << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(top + ph + 16)
      << "\" text-anchor=\"middle\">" << fmt(t, 1) << "</text>\n";
    s << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(py(v) + 4)
      << "\" text-anchor=\"end\">" << fmt(v, 2) << "</text>\n";
  }
  s << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(H - 10)
    << "\" text-anchor=\"middle\">time since member start (s)</text>\n";
  s << "<text x=\"14\" y=\"" << fmt(top + ph / 2) << "\" transform=\"rotate(-90 14 " << fmt(top + ph / 2)
    << ")\" text-anchor=\"middle\">z-normalized value</text>\n";

  for (std::size_t k = 0; k < e.members.size(); ++k) {
    const auto& me = e.members[k];
    const char* color = palette[k % palette.size()];
    const double dt = 1.0 / r.trip.sample_rate_hz;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < me.values.size(); ++i) {
      s << (i ? " " : "") << fmt(px(static_cast<double>(i) * dt)) << ',' << fmt(py(me.values[i]));
    }
    s << "\"/>\n";
    for (std::size_t li : me.labels) {
      const auto& label = r.labels[li];
      const double rel = label.time_s - me.start_s;
      auto i = static_cast<std::size_t>(std::floor(rel * r.trip.sample_rate_hz));
      if (me.values.empty()) continue;
      i = std::min(i, me.values.size() - 1);
      s << "<circle cx=\"" << fmt(px(rel)) << "\" cy=\"" << fmt(py(me.values[i]))
        << "\" r=\"4\" fill=\"" << label_color(label.kind) << "\"><title>"
        << to_string(label.kind) << " at " << fmt(label.time_s) << " s</title></circle>\n";
    }
    const double ly = top + 12 + 16.0 * static_cast<double>(k);
    s << "<line x1=\"" << fmt(W - right + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
      << fmt(W - right + 28) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << fmt(W - right + 32) << "\" y=\"" << fmt(ly) << "\">" << fmt(me.start_s, 1)
      << " s, " << fmt(me.end_s - me.start_s, 1) << " s" << (me.segment == e.center ? " *" : "")
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> render_plots(const MotifReport& report,
                                                const std::filesystem::path& out_dir,
                                                std::optional<std::size_t> top_k) {
  ensure_dir(out_dir);
  // Stale plots from an earlier run would break the one-file-per-k-motif contract.
  for (const auto& entry : std::filesystem::directory_iterator(out_dir)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("motif_") && name.ends_with(".svg")) std::filesystem::remove(entry.path());
  }
  const std::size_t n = std::min(report.pruned.size(), top_k.value_or(report.pruned.size()));
  std::vector<std::filesystem::path> written;
  for (std::size_t k = 1; k <= n; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "motif_%03zu.svg", k);
    const auto path = out_dir / name;
    write_file(path, render_motif_svg(report, k));
    written.push_back(path);
  }
  return written;
}

std::vector<std::filesystem::path> emit_report(const MotifReport& report,
                                               const std::filesystem::path& out_dir,
                                               std::optional<std::size_t> top_k) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written{out_dir / kReportFile, out_dir / kSummaryFile};
  write_file(written[0], to_json_text(report));
  write_file(written[1], summary_csv(report));
  auto plots = render_plots(report, out_dir, top_k);
  written.insert(written.end(), plots.begin(), plots.end());
  return written;
}

}  // namespace drivemotif
