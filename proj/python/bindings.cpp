#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "drivemotif/discovery.hpp"
#include "drivemotif/io.hpp"
#include "drivemotif/metrics.hpp"
#include "drivemotif/selection.hpp"
#include "drivemotif/symbolic.hpp"
#include "drivemotif/synth.hpp"

namespace py = pybind11;
namespace dm = drivemotif;

namespace {

dm::TimeSeries as_series(const std::vector<double>& values, double rate) {
  return dm::TimeSeries(values, rate);
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

dm::DistanceOptions options(std::optional<std::size_t> band, bool normalize = true) {
  return dm::DistanceOptions{band, normalize};
}

}  // namespace

PYBIND11_MODULE(_drivemotif, m) {
  m.doc() = "Bindings for the drivemotif C++ library";

  static py::exception<dm::Error> error(m, "DrivemotifError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dm::Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      inst.attr("kind") = py::str(std::string(dm::to_string(e.kind())));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<dm::Segment>(m, "Segment")
      .def(py::init<>())
      .def(py::init([](std::size_t start, std::size_t length) { return dm::Segment{start, length}; }),
           py::arg("start"), py::arg("length"))
      .def_readwrite("start", &dm::Segment::start)
      .def_readwrite("length", &dm::Segment::length)
      .def_property_readonly("end", &dm::Segment::end)
      .def(py::self == py::self)
      .def("__repr__", [](const dm::Segment& s) {
        return "Segment(start=" + std::to_string(s.start) + ", length=" + std::to_string(s.length) + ")";
      });

  py::class_<dm::DiscoveryConfig>(m, "DiscoveryConfig")
      .def(py::init<>())
      .def_readwrite("window_size", &dm::DiscoveryConfig::window_size)
      .def_readwrite("paa_size", &dm::DiscoveryConfig::paa_size)
      .def_readwrite("alphabet_size", &dm::DiscoveryConfig::alphabet_size)
      .def_readwrite("radius_r", &dm::DiscoveryConfig::radius_r)
      .def_readwrite("min_pattern_words", &dm::DiscoveryConfig::min_pattern_words)
      .def_readwrite("dtw_band", &dm::DiscoveryConfig::dtw_band)
      .def_readwrite("dbscan_eps", &dm::DiscoveryConfig::dbscan_eps)
      .def_readwrite("dbscan_min_pts", &dm::DiscoveryConfig::dbscan_min_pts)
      .def_readwrite("threads", &dm::DiscoveryConfig::threads)
      .def("eps", &dm::DiscoveryConfig::eps)
      .def("validate", [](const dm::DiscoveryConfig& c) { dm::validate(c); });

  py::class_<dm::ModifiedWord>(m, "ModifiedWord")
      .def_property_readonly("word", [](const dm::ModifiedWord& w) { return w.word.str(); })
      .def_readonly("start", &dm::ModifiedWord::start)
      .def_readonly("span", &dm::ModifiedWord::span)
      .def_readonly("run_count", &dm::ModifiedWord::run_count);

  py::class_<dm::Motif>(m, "Motif")
      .def_readonly("center", &dm::Motif::center)
      .def_readonly("members", &dm::Motif::members)
      .def_readonly("distances", &dm::Motif::distances)
      .def_readonly("mdl_cost", &dm::Motif::mdl_cost)
      .def_property_readonly("pattern", [](const dm::Motif& mo) {
        std::vector<std::string> out;
        for (const auto& w : mo.pattern) out.push_back(w.str());
        return out;
      });

  py::class_<dm::DiscoveryResult>(m, "DiscoveryResult")
      .def_property_readonly("normalized",
                             [](const dm::DiscoveryResult& r) { return to_vector(r.normalized.series.values()); })
      .def_property_readonly("mean", [](const dm::DiscoveryResult& r) { return r.normalized.mean; })
      .def_property_readonly("std", [](const dm::DiscoveryResult& r) { return r.normalized.std; })
      .def_readonly("words", &dm::DiscoveryResult::words)
      .def_readonly("patterns_examined", &dm::DiscoveryResult::patterns_examined)
      .def_readonly("motifs", &dm::DiscoveryResult::motifs);

  py::class_<dm::PrunedMotifSet>(m, "PrunedMotifSet")
      .def_readonly("motifs", &dm::PrunedMotifSet::motifs)
      .def_readonly("source_index", &dm::PrunedMotifSet::source_index);

  py::class_<dm::TemplateSpec>(m, "TemplateSpec")
      .def(py::init([](const std::string& kind, std::size_t count, double amplitude, std::size_t lo,
                       std::size_t hi) {
             return dm::TemplateSpec{dm::parse_maneuver(kind), count, amplitude, lo, hi};
           }),
           py::arg("kind") = "brake", py::arg("count") = 1, py::arg("amplitude") = -0.3,
           py::arg("min_duration") = 20, py::arg("max_duration") = 20)
      .def_property_readonly("kind", [](const dm::TemplateSpec& t) { return std::string(dm::to_string(t.kind)); })
      .def_readwrite("count", &dm::TemplateSpec::count)
      .def_readwrite("amplitude", &dm::TemplateSpec::amplitude)
      .def_readwrite("min_duration", &dm::TemplateSpec::min_duration)
      .def_readwrite("max_duration", &dm::TemplateSpec::max_duration);

  py::class_<dm::SynthSpec>(m, "SynthSpec")
      .def(py::init<>())
      .def_readwrite("samples", &dm::SynthSpec::samples)
      .def_readwrite("sample_rate_hz", &dm::SynthSpec::sample_rate_hz)
      .def_readwrite("noise_sigma", &dm::SynthSpec::noise_sigma)
      .def_readwrite("baseline", &dm::SynthSpec::baseline)
      .def_readwrite("min_gap", &dm::SynthSpec::min_gap)
      .def_readwrite("templates", &dm::SynthSpec::templates);

  py::class_<dm::SynthTrip>(m, "SynthTrip")
      .def_property_readonly("values", [](const dm::SynthTrip& t) { return to_vector(t.series.values()); })
      .def_property_readonly("truth", [](const dm::SynthTrip& t) {
        py::list out;
        for (const auto& p : t.truth)
          out.append(py::make_tuple(p.segment, std::string(dm::to_string(p.kind))));
        return out;
      });

  m.def("zscore", [](const std::vector<double>& v) {
    const auto n = dm::zscore_global(as_series(v, 10.0));
    return py::make_tuple(to_vector(n.series.values()), n.mean, n.std);
  }, py::arg("values"), "Global z-normalization. Returns (values, mean, std).");

  m.def("paa", [](const std::vector<double>& v, std::size_t start, std::size_t length, std::size_t paa_size) {
    return dm::paa(v, dm::Segment{start, length}, paa_size);
  }, py::arg("values"), py::arg("start"), py::arg("length"), py::arg("paa_size"));

  m.def("breakpoints", &dm::breakpoints, py::arg("alphabet_size"));

  m.def("sax_word", [](const std::vector<double>& v, std::size_t start, std::size_t length, std::size_t paa_size,
                       std::size_t alphabet_size) {
    return dm::sax_word(v, dm::Segment{start, length}, paa_size, dm::breakpoints(alphabet_size)).str();
  }, py::arg("values"), py::arg("start"), py::arg("length"), py::arg("paa_size"), py::arg("alphabet_size"));

  m.def("modified_sax", [](const std::vector<double>& v, const dm::DiscoveryConfig& cfg) {
    return dm::modified_sax(as_series(v, 10.0), cfg);
  }, py::arg("values"), py::arg("config") = dm::DiscoveryConfig{});

  m.def("dtw", [](const std::vector<double>& a, const std::vector<double>& b, std::optional<std::size_t> band,
                  bool normalize) { return dm::dtw(a, b, options(band, normalize)); },
        py::arg("a"), py::arg("b"), py::arg("band") = py::none(), py::arg("normalize") = true);

  m.def("dtw_path", [](const std::vector<double>& a, const std::vector<double>& b,
                       std::optional<std::size_t> band) {
    const auto r = dm::dtw_path(a, b, band);
    return py::make_tuple(r.cost, r.path_length);
  }, py::arg("a"), py::arg("b"), py::arg("band") = py::none(), "Returns (cost, path_length).");

  m.def("euclid", [](const std::vector<double>& a, const std::vector<double>& b) { return dm::euclid(a, b); },
        py::arg("a"), py::arg("b"));

  m.def("discover", [](const std::vector<double>& v, const dm::DiscoveryConfig& cfg, double rate) {
    py::gil_scoped_release release;
    return dm::discover(as_series(v, rate), cfg);
  }, py::arg("values"), py::arg("config") = dm::DiscoveryConfig{}, py::arg("sample_rate_hz") = 10.0);

  m.def("prune_k_motifs", [](const dm::DiscoveryResult& r, double radius, std::optional<std::size_t> band) {
    return dm::prune_k_motifs(r.motifs, radius, r.normalized.series.values(), options(band));
  }, py::arg("result"), py::arg("radius"), py::arg("band") = py::none());

  m.def("dbscan", [](const std::vector<std::vector<double>>& d, double eps, std::size_t min_pts) {
    dm::DistanceMatrix dist(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i].size() != d.size()) throw dm::Error(dm::ErrorKind::LengthMismatch, "distance matrix is not square");
      for (std::size_t j = i + 1; j < d.size(); ++j) dist.set(i, j, d[i][j]);
    }
    return dm::dbscan(dist, eps, min_pts).labels;
  }, py::arg("distances"), py::arg("eps"), py::arg("min_pts"), "Cluster labels; -1 marks outliers.");

  m.def("dbscan_motifs", [](const dm::DiscoveryResult& r, double eps, std::size_t min_pts,
                            std::optional<std::size_t> band) {
    return dm::dbscan_motifs(r.motifs, r.normalized.series.values(), eps, min_pts, options(band)).labels;
  }, py::arg("result"), py::arg("eps"), py::arg("min_pts") = 3, py::arg("band") = py::none());

  m.def("synth_trip", &dm::synth_trip, py::arg("spec"), py::arg("seed"));

  m.def("load_trip", [](const std::filesystem::path& path, std::size_t column, std::optional<std::string> preset,
                        double rate) {
    dm::TripSource src;
    src.path = path;
    src.value_column = column;
    src.sample_rate_hz = rate;
    if (preset) {
      const auto p = dm::find_preset(*preset);
      if (!p) throw dm::Error(dm::ErrorKind::InvalidConfig, "unknown preset " + *preset);
      dm::apply(*p, src);
    }
    const auto t = dm::load_trip(src);
    return py::make_tuple(to_vector(t.series.values()), t.dropped_rows);
  }, py::arg("path"), py::arg("column") = 0, py::arg("preset") = py::none(), py::arg("sample_rate_hz") = 10.0,
     "Returns (values, dropped_rows).");
}
