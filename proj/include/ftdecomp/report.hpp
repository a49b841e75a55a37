#pragma once

#include <string>

#include "ftdecomp/mapper.hpp"
#include "ftdecomp/metrics.hpp"
#include "json.hpp"

namespace ftdecomp {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything one analysis run produces, cross-referenced to its model.
struct AnalysisReport {
  std::string app_name;
  std::string model_source;
  std::int64_t catalog_version = 0;
  Tenths threshold = kDefaultThreshold;
  WorkflowResult workflow;
  MetricsReport metrics;
};

/// run_workflow, then scaffold_to_graph and metrics_report over the result.
AnalysisReport analyze(const ApplicationModel& model, const Database& db, const FeatureCatalog& catalog,
                       Tenths threshold = kDefaultThreshold, int base_port = kDefaultBasePort,
                       std::string model_source = {});

/// Deterministic: equal inputs give byte-identical dumps.
nlohmann::json report_to_json(const AnalysisReport& report);

/// Feature table, plan, endpoints and metrics as console tables.
std::string render_report(const AnalysisReport& report);

}  // namespace ftdecomp
