#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ftdecomp/app_model.hpp"
#include "ftdecomp/benchmark_db.hpp"
#include "ftdecomp/weight_engine.hpp"
#include "json.hpp"

namespace ftdecomp {

enum class ExclusionReason { GateFailed, BelowThreshold };

std::string_view exclusion_reason_name(ExclusionReason reason);

struct ServiceCandidate {
  std::string service_name;  // "<Module>Service"
  std::string source_module;
  std::vector<std::string> functions;
  std::set<std::string> entities;

  bool operator==(const ServiceCandidate&) const = default;
};

struct Exclusion {
  std::string module;
  std::string function;
  ExclusionReason reason;

  bool operator==(const Exclusion&) const = default;
};

struct ServicePlan {
  std::string app_name;
  std::vector<ServiceCandidate> services;
  std::vector<Exclusion> excluded;

  bool operator==(const ServicePlan&) const = default;
};

struct EndpointSpec {
  std::string url;
  std::string function;
  std::vector<std::string> parameters;

  bool operator==(const EndpointSpec&) const = default;
};

/// One microservice module laid out as main / controller / service / dao /
/// entities.
struct ServiceScaffold {
  std::string service_name;
  int port = 0;
  std::string main_class_name;
  std::vector<EndpointSpec> controller;
  std::vector<std::string> service_layer;
  std::vector<std::string> dao;
  std::vector<EntitySpec> entities;

  bool operator==(const ServiceScaffold&) const = default;
};

using ScaffoldManifest = std::vector<ServiceScaffold>;

/// Lowercase, whitespace and every other non-alphanumeric character removed.
std::string slug(std::string_view text);

/// "http://host:port/<slug(module)>/<slug(function)>/" + parameters joined by
/// "/". An empty parameter list leaves the trailing slash.
std::string generate_url(std::string_view host, int port, std::string_view module, std::string_view function,
                         const std::vector<std::string>& parameters);

/// Groups candidate functions by functional module, in model order. The
/// table must list exactly the model's functions in model order.
ServicePlan partition(const ApplicationModel& model, const FeatureTable& table);

inline constexpr int kDefaultBasePort = 8001;
inline constexpr const char* kDefaultHost = "localhost";

/// Ports are assigned base_port, base_port + 1, ... in service order. Shared
/// entities are copied into every service that references them.
ScaffoldManifest generate_scaffold(const ServicePlan& plan, const ApplicationModel& model,
                                   int base_port = kDefaultBasePort, std::string_view host = kDefaultHost);

struct WorkflowResult {
  FeatureTable table;
  ServicePlan plan;
  ScaffoldManifest manifest;
};

/// validate -> evaluate -> partition -> scaffold. Failures come back as
/// StageError tagged with the stage that raised them.
WorkflowResult run_workflow(const ApplicationModel& model, const Database& db, const FeatureCatalog& catalog,
                            Tenths threshold = kDefaultThreshold, int base_port = kDefaultBasePort);

nlohmann::json plan_to_json(const ServicePlan& plan);
ServicePlan plan_from_json(const nlohmann::json& doc);
nlohmann::json manifest_to_json(const ScaffoldManifest& manifest);
ScaffoldManifest manifest_from_json(const nlohmann::json& doc);

std::string render_plan(const ServicePlan& plan);

}  // namespace ftdecomp
