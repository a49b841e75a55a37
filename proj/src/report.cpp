#include "ftdecomp/report.hpp"

#include <sstream>

#include "ftdecomp/error.hpp"

namespace ftdecomp {

AnalysisReport analyze(const ApplicationModel& model, const Database& db, const FeatureCatalog& catalog,
                       Tenths threshold, int base_port, std::string model_source) {
  AnalysisReport report;
  report.app_name = model.app_name;
  report.model_source = std::move(model_source);
  report.catalog_version = catalog.version();
  report.threshold = threshold;
  report.workflow = run_workflow(model, db, catalog, threshold, base_port);
  try {
    report.metrics = metrics_report(scaffold_to_graph(report.workflow.manifest));
  } catch (const Error& e) {
    throw StageError("metrics", e);
  }
  return report;
}

nlohmann::json report_to_json(const AnalysisReport& report) {
  return {{"tool_version", kToolVersion},
          {"catalog_version", report.catalog_version},
          {"model", {{"app_name", report.app_name}, {"source", report.model_source}}},
          {"threshold", report.threshold.as_double()},
          {"feature_table", table_to_json(report.workflow.table)},
          {"plan", plan_to_json(report.workflow.plan)},
          {"scaffold", manifest_to_json(report.workflow.manifest)},
          {"metrics", metrics_to_json(report.metrics)}};
}

std::string render_report(const AnalysisReport& report) {
  std::ostringstream os;
  os << "Feature Table of " << report.app_name << " (threshold " << report.threshold.str() << ", catalog v"
     << report.catalog_version << ")\n\n";
  os << render_feature_table(report.workflow.table) << "\n";
  os << render_plan(report.workflow.plan) << "\n";
  if (!report.workflow.manifest.empty()) {
    os << "Endpoints\n";
    for (const auto& s : report.workflow.manifest) {
      os << "  " << s.service_name << " (port " << s.port << ")\n";
      for (const auto& ep : s.controller) os << "    " << ep.url << "\n";
    }
    os << "\n";
    os << render_metrics(report.metrics);
  }
  return os.str();
}

}  // namespace ftdecomp
