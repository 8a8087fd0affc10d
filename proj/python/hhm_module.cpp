#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>
#include <vector>

#include "hhm/bench.hpp"
#include "hhm/hierarchical_matrix.hpp"
#include "hhm/report.hpp"
#include "hhm/streamgen.hpp"

namespace py = pybind11;

namespace {

using PyTriple = std::tuple<hhm::Index, hhm::Index, std::int64_t>;

std::vector<hhm::EdgeTriple> to_triples(const std::vector<PyTriple>& in) {
  std::vector<hhm::EdgeTriple> out;
  out.reserve(in.size());
  for (const auto& [r, c, v] : in) out.push_back({r, c, v});
  return out;
}

std::vector<PyTriple> to_tuples(const std::vector<hhm::EdgeTriple>& in) {
  std::vector<PyTriple> out;
  out.reserve(in.size());
  for (const auto& t : in) out.emplace_back(t.row, t.col, t.val);
  return out;
}

py::dict to_dict(const hhm::HypersparseMatrix::SumMap& sums) {
  py::dict d;
  for (const auto& [k, v] : sums) d[py::int_(k)] = py::int_(v);
  return d;
}

py::object json_to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_hhm, m) {
  m.doc() = "Hierarchical hypersparse matrices for streaming inserts";

  auto base = py::register_exception<hhm::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<hhm::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<hhm::OverflowError>(m, "OverflowError", base.ptr());
  py::register_exception<hhm::ParseError>(m, "ParseError", base.ptr());
  // Bounds and dimension errors surface as the builtin Python types.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const hhm::IndexError& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    } catch (const hhm::InvalidDimensionError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const hhm::DimensionMismatchError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const hhm::IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  py::class_<hhm::CutSchedule>(m, "CutSchedule")
      .def(py::init<>())
      .def(py::init<std::vector<std::uint64_t>>(), py::arg("cuts"))
      .def_static("defaults", &hhm::CutSchedule::defaults)
      .def_static("parse", &hhm::CutSchedule::parse)
      .def_property_readonly("cuts", [](const hhm::CutSchedule& c) {
        return std::vector<std::uint64_t>(c.cuts().begin(), c.cuts().end());
      })
      .def_property_readonly("levels", &hhm::CutSchedule::levels)
      .def("__repr__", [](const hhm::CutSchedule& c) {
        return "CutSchedule([" + c.to_string() + "])";
      });
  py::implicitly_convertible<std::vector<std::uint64_t>, hhm::CutSchedule>();

  py::class_<hhm::HypersparseMatrix>(m, "HypersparseMatrix")
      .def(py::init<hhm::Index, hhm::Index>(), py::arg("nrows"), py::arg("ncols"))
      .def_static(
          "build",
          [](hhm::Index nrows, hhm::Index ncols, const std::vector<PyTriple>& t) {
            const auto triples = to_triples(t);
            return hhm::HypersparseMatrix::build(nrows, ncols, triples);
          },
          py::arg("nrows"), py::arg("ncols"), py::arg("triples"))
      .def_property_readonly("nrows", &hhm::HypersparseMatrix::nrows)
      .def_property_readonly("ncols", &hhm::HypersparseMatrix::ncols)
      .def_property_readonly("nnz", &hhm::HypersparseMatrix::nnz)
      .def("get", &hhm::HypersparseMatrix::get, py::arg("row"), py::arg("col"))
      .def("add_assign", &hhm::HypersparseMatrix::add_assign, py::arg("other"))
      .def("__add__", [](const hhm::HypersparseMatrix& a,
                         const hhm::HypersparseMatrix& b) { return hhm::ewise_add(a, b); })
      .def("clear", &hhm::HypersparseMatrix::clear)
      .def("extract_triples", [](const hhm::HypersparseMatrix& a) {
        return to_tuples(a.extract_triples());
      })
      .def("row_sums", [](const hhm::HypersparseMatrix& a) { return to_dict(a.row_sums()); })
      .def("col_sums", [](const hhm::HypersparseMatrix& a) { return to_dict(a.col_sums()); })
      .def("value_sum", &hhm::HypersparseMatrix::value_sum)
      .def("__eq__", &hhm::HypersparseMatrix::equals)
      .def("__len__", &hhm::HypersparseMatrix::nnz);

  py::class_<hhm::CascadeStats>(m, "CascadeStats")
      .def_readonly("updates_applied", &hhm::CascadeStats::updates_applied)
      .def_readonly("cascades_per_level", &hhm::CascadeStats::cascades_per_level)
      .def_readonly("entries_promoted_per_level",
                    &hhm::CascadeStats::entries_promoted_per_level);

  py::class_<hhm::HierarchicalMatrix>(m, "HierarchicalMatrix")
      .def(py::init<hhm::Index, hhm::Index, hhm::CutSchedule>(), py::arg("nrows"),
           py::arg("ncols"), py::arg("cuts") = hhm::CutSchedule::defaults())
      .def(
          "update",
          [](hhm::HierarchicalMatrix& h, const std::vector<PyTriple>& t) {
            const auto triples = to_triples(t);
            h.update(triples);
          },
          py::arg("batch"))
      .def("flatten", &hhm::HierarchicalMatrix::flatten)
      .def("compact", &hhm::HierarchicalMatrix::compact)
      .def("stats", &hhm::HierarchicalMatrix::stats)
      .def("layer_nnz", &hhm::HierarchicalMatrix::layer_nnz)
      .def("quiescent", &hhm::HierarchicalMatrix::quiescent)
      .def_property_readonly("levels", &hhm::HierarchicalMatrix::levels);

  py::class_<hhm::StreamConfig>(m, "StreamConfig")
      .def(py::init<>())
      .def_readwrite("scale", &hhm::StreamConfig::scale)
      .def_readwrite("batch_size", &hhm::StreamConfig::batch_size)
      .def_readwrite("num_batches", &hhm::StreamConfig::num_batches)
      .def_readwrite("seed", &hhm::StreamConfig::seed)
      .def_property(
          "skew",
          [](const hhm::StreamConfig& c) {
            return std::make_tuple(c.skew.a, c.skew.b, c.skew.c, c.skew.d);
          },
          [](hhm::StreamConfig& c, std::tuple<double, double, double, double> s) {
            c.skew = {std::get<0>(s), std::get<1>(s), std::get<2>(s), std::get<3>(s)};
          })
      .def_property(
          "value_mode",
          [](const hhm::StreamConfig& c) { return hhm::to_string(c.value_mode); },
          [](hhm::StreamConfig& c, const std::string& s) {
            c.value_mode = hhm::parse_value_mode(s);
          })
      .def("validate", &hhm::StreamConfig::validate)
      .def_property_readonly("total_triples", &hhm::StreamConfig::total_triples);

  m.def(
      "generate_batch",
      [](const hhm::StreamConfig& cfg, std::uint64_t index) {
        return to_tuples(hhm::generate_batch(cfg, index));
      },
      py::arg("config"), py::arg("batch_index"));

  m.def(
      "degree_histogram",
      [](const std::vector<PyTriple>& t) {
        const auto triples = to_triples(t);
        return hhm::degree_histogram(triples);
      },
      py::arg("triples"));

  m.def(
      "run_bench",
      [](std::uint32_t workers, const hhm::StreamConfig& stream,
         const hhm::CutSchedule& cuts, const std::string& mode,
         std::uint64_t warmup, bool pregen) {
        hhm::BenchConfig cfg;
        cfg.workers = workers;
        cfg.stream = stream;
        cfg.cuts = cuts;
        cfg.mode = hhm::parse_mode(mode);
        cfg.warmup_batches = warmup;
        cfg.pregen = pregen;
        hhm::BenchReport report;
        {
          py::gil_scoped_release release;
          report = hhm::run_bench(cfg);
        }
        return json_to_python(hhm::to_json(report));
      },
      py::arg("workers") = 1, py::arg("stream") = hhm::default_bench_stream(),
      py::arg("cuts") = hhm::CutSchedule::defaults(), py::arg("mode") = "hierarchical",
      py::arg("warmup") = 10, py::arg("pregen") = true,
      "Run the streaming-insert benchmark; returns the JSON report as a dict.");

  m.def(
      "run_verify",
      [](const hhm::StreamConfig& stream, const hhm::CutSchedule& cuts,
         bool inject_fault) {
        hhm::VerifyConfig cfg;
        cfg.stream = stream;
        cfg.cuts = cuts;
        cfg.inject_fault = inject_fault;
        const auto r = hhm::run_verify(cfg);
        py::dict d;
        d["passed"] = r.passed;
        d["triples"] = r.triples;
        d["cascades_per_level"] = r.cascades_per_level;
        d["layer_nnz"] = r.layer_nnz;
        d["diagnostic"] = r.diagnostic;
        return d;
      },
      py::arg("stream"), py::arg("cuts") = hhm::CutSchedule::defaults(),
      py::arg("inject_fault") = false);

  m.def(
      "run_ingest",
      [](const std::string& path, const hhm::CutSchedule& cuts, unsigned scale) {
        if (scale < 1 || scale > 63) throw hhm::ConfigError("scale must be in [1, 63]");
        hhm::IngestConfig cfg;
        cfg.cuts = cuts;
        cfg.nrows = cfg.ncols = hhm::Index{1} << scale;
        const auto s = hhm::run_ingest(path, cfg);
        py::dict d;
        d["triples"] = s.triples;
        d["nnz"] = s.nnz;
        d["value_sum"] = s.value_sum;
        d["top_rows"] = s.top_rows;
        d["top_cols"] = s.top_cols;
        d["wall_seconds"] = s.wall_seconds;
        d["updates_per_second"] = s.updates_per_second;
        return d;
      },
      py::arg("path"), py::arg("cuts") = hhm::CutSchedule::defaults(),
      py::arg("scale") = 32);
}
