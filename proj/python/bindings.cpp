#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ftdecomp/benchmark_db.hpp"
#include "ftdecomp/catalog.hpp"
#include "ftdecomp/error.hpp"
#include "ftdecomp/mapper.hpp"
#include "ftdecomp/metrics.hpp"
#include "ftdecomp/report.hpp"
#include "ftdecomp/service_api.hpp"
#include "ftdecomp/weight_engine.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace ftdecomp;

namespace {

// Documents cross the boundary as plain dicts/lists via the json module;
// the C++ side already owns every schema.
json to_json(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object from_json(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

FeatureCatalog catalog_arg(const py::object& obj) {
  return obj.is_none() ? default_catalog() : catalog_from_json(to_json(obj));
}

Tenths tenths_arg(double value, const char* what) {
  Tenths t;
  if (!tenths_from_double(value, t))
    throw Error(ErrorCode::Validation, std::string(what) + " must have at most one decimal digit");
  return t;
}

PyObject* g_error_type = nullptr;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Feature Table decomposition of monoliths into microservice candidates";

  g_error_type = PyErr_NewException("ftdecomp._core.FtdecompError", PyExc_RuntimeError, nullptr);
  m.add_object("FtdecompError", py::handle(g_error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_steal<py::object>(PyObject_CallFunction(g_error_type, "s", e.what()));
      inst.attr("code") = to_string(e.code());
      inst.attr("subject") = e.subject();
      PyErr_SetObject(g_error_type, inst.ptr());
    }
  });

  m.attr("__version__") = kToolVersion;

  m.def(
      "round_tenths", [](std::int64_t num, std::int64_t den) { return round_tenths(num, den).str(); },
      py::arg("num"), py::arg("den"), "num/den rounded to one decimal, ties away from zero, as text.");

  m.def("default_catalog", [] { return from_json(catalog_to_json(default_catalog())); });
  m.def("load_catalog", [](const std::filesystem::path& p) { return from_json(catalog_to_json(load_catalog(p))); });
  m.def("validate_catalog", [](const py::object& catalog) {
    std::vector<std::string> out;
    for (const auto& v : validate_catalog(catalog_from_json(to_json(catalog)))) out.push_back(v.message);
    return out;
  });
  m.def(
      "render_card",
      [](const std::string& name, const py::object& catalog) { return render_card(lookup_feature(catalog_arg(catalog), name)); },
      py::arg("name"), py::arg("catalog") = py::none());

  m.def(
      "evaluate",
      [](const std::set<std::string>& annotation, const py::object& catalog, double threshold) {
        return from_json(evaluation_to_json(evaluate_function(annotation, catalog_arg(catalog), tenths_arg(threshold, "threshold"))));
      },
      py::arg("annotation"), py::arg("catalog") = py::none(), py::arg("threshold") = 50.0);

  m.def(
      "update_weight",
      [](const py::object& db, const py::object& catalog) {
        const auto cat = catalog_arg(catalog);
        const auto update = update_weight(database_from_json(to_json(db)), cat);
        json stats = json::array();
        for (const auto& s : update.statistics)
          stats.push_back({{"feature", s.feature},
                           {"m", s.containing},
                           {"n", s.suitable},
                           {"weight", card_weight_to_json(s.weight)},
                           {"stale", s.stale}});
        return from_json({{"catalog", catalog_to_json(update.catalog)}, {"statistics", std::move(stats)}});
      },
      py::arg("db"), py::arg("catalog") = py::none());

  m.def(
      "load_database",
      [](const std::filesystem::path& p, const py::object& catalog) {
        return from_json(database_to_json(load_database(p, catalog_arg(catalog))));
      },
      py::arg("path"), py::arg("catalog") = py::none());

  m.def("slug", [](const std::string& text) { return slug(text); });
  m.def("generate_url", &generate_url, py::arg("host"), py::arg("port"), py::arg("module"), py::arg("function"),
        py::arg("parameters"));

  m.def(
      "analyze",
      [](const py::object& model, const py::object& db, const py::object& catalog, double threshold, int base_port) {
        const Database database = db.is_none() ? Database{} : database_from_json(to_json(db));
        const auto report = ftdecomp::analyze(model_from_json(to_json(model)), database, catalog_arg(catalog),
                                              tenths_arg(threshold, "threshold"), base_port);
        return from_json(report_to_json(report));
      },
      py::arg("model"), py::arg("db") = py::none(), py::arg("catalog") = py::none(), py::arg("threshold") = 50.0,
      py::arg("base_port") = kDefaultBasePort,
      "Evaluate, partition, scaffold and measure a model; returns the machine report.");

  m.def(
      "metrics",
      [](const py::object& graph, const std::vector<std::string>& services) {
        return from_json(metrics_to_json(metrics_report(graph_from_json(to_json(graph)), services)));
      },
      py::arg("graph"), py::arg("services") = std::vector<std::string>{});

  m.def("instability", [](std::int64_t ca, std::int64_t ce) { return instability(ca, ce).as_double(); });
  m.def("weights_view", [](const py::object& catalog) { return from_json(weights_view(catalog_arg(catalog))); },
        py::arg("catalog") = py::none());
}
