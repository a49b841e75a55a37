#include "ftdecomp/mapper.hpp"

#include <cctype>
#include <sstream>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

namespace {

// "View details for cargo" -> "viewDetailsForCargo"
std::string method_name(std::string_view function) {
  std::string out;
  bool upper_next = false;
  for (unsigned char c : function) {
    if (!std::isalnum(c)) {
      upper_next = !out.empty();
      continue;
    }
    if (out.empty()) out += static_cast<char>(std::tolower(c));
    else out += static_cast<char>(upper_next ? std::toupper(c) : c);
    upper_next = false;
  }
  return out;
}

std::vector<std::string> dao_operations(const std::string& entity) {
  return {"save" + entity, "find" + entity, "update" + entity, "delete" + entity};
}

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

std::string_view exclusion_reason_name(ExclusionReason reason) {
  return reason == ExclusionReason::GateFailed ? "gate-failed" : "below-threshold";
}

std::string slug(std::string_view text) {
  std::string out;
  for (unsigned char c : text)
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
  return out;
}

std::string generate_url(std::string_view host, int port, std::string_view module, std::string_view function,
                         const std::vector<std::string>& parameters) {
  const std::string m = slug(module);
  const std::string f = slug(function);
  if (m.empty()) throw Error(ErrorCode::Validation, "module name \"" + std::string(module) + "\" is empty after slugging");
  if (f.empty())
    throw Error(ErrorCode::Validation, "function name \"" + std::string(function) + "\" is empty after slugging");
  std::string url = "http://" + std::string(host) + ":" + std::to_string(port) + "/" + m + "/" + f + "/";
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i) url += '/';
    url += parameters[i];
  }
  return url;
}

ServicePlan partition(const ApplicationModel& model, const FeatureTable& table) {
  if (table.size() != model.function_count())
    throw Error(ErrorCode::Mismatch, "feature table has " + std::to_string(table.size()) + " rows but the model has " +
                                         std::to_string(model.function_count()) + " functions");
  ServicePlan plan;
  plan.app_name = model.app_name;
  std::size_t row = 0;
  for (const auto& m : model.modules) {
    ServiceCandidate service{m.name + "Service", m.name, {}, {}};
    for (const auto& f : m.functions) {
      const auto& result = table[row++];
      if (result.function_ref.module != m.name || result.function_ref.function != f.name)
        throw Error(ErrorCode::Mismatch,
                    "feature table row (" + result.function_ref.module + ", " + result.function_ref.function +
                        ") does not match model function (" + m.name + ", " + f.name + ")",
                    f.name);
      if (result.candidate) {
        service.functions.push_back(f.name);
        service.entities.insert(f.entities.begin(), f.entities.end());
      } else {
        plan.excluded.push_back(
            {m.name, f.name, result.gated ? ExclusionReason::BelowThreshold : ExclusionReason::GateFailed});
      }
    }
    if (!service.functions.empty()) plan.services.push_back(std::move(service));
  }
  return plan;
}

ScaffoldManifest generate_scaffold(const ServicePlan& plan, const ApplicationModel& model, int base_port,
                                   std::string_view host) {
  if (base_port < 0 || static_cast<long long>(base_port) + static_cast<long long>(plan.services.size()) - 1 > 65535)
    throw Error(ErrorCode::Validation, "port range starting at " + std::to_string(base_port) + " overflows 65535");

  ScaffoldManifest manifest;
  int port = base_port;
  for (const auto& service : plan.services) {
    const FunctionalModule* module = nullptr;
    for (const auto& m : model.modules)
      if (m.name == service.source_module) module = &m;
    if (!module)
      throw Error(ErrorCode::Mismatch, "plan references unknown module \"" + service.source_module + "\"",
                  service.source_module);

    ServiceScaffold s;
    s.service_name = service.service_name;
    s.main_class_name = service.service_name;
    s.port = port++;
    for (const auto& fname : service.functions) {
      const FunctionSpec* fn = nullptr;
      for (const auto& f : module->functions)
        if (f.name == fname) fn = &f;
      if (!fn) throw Error(ErrorCode::Mismatch, "plan references unknown function \"" + fname + "\"", fname);
      s.controller.push_back({generate_url(host, s.port, module->name, fn->name, fn->parameters), fn->name, fn->parameters});
      s.service_layer.push_back(method_name(fn->name));
    }
    for (const auto& entity_name : service.entities) {
      const EntitySpec* entity = model.find_entity(entity_name);
      if (!entity) throw Error(ErrorCode::Mismatch, "plan references unknown entity \"" + entity_name + "\"", entity_name);
      s.entities.push_back(*entity);
      for (auto& op : dao_operations(entity->name)) s.dao.push_back(std::move(op));
    }
    manifest.push_back(std::move(s));
  }
  return manifest;
}

WorkflowResult run_workflow(const ApplicationModel& model, const Database& db, const FeatureCatalog& catalog,
                            Tenths threshold, int base_port) {
  in_stage("app-model", [&] {
    check_model_structure(model);
    const auto findings = validate_model(model, catalog);
    for (const auto& finding : findings) {
      // Parameter findings only affect URLs; unknown features and empty
      // annotations make the function unscorable.
      if (finding.kind == ModelFindingKind::UnknownFeature)
        throw Error(ErrorCode::UnknownFeature,
                    "(" + finding.module + ", " + finding.function + "): unknown feature \"" + finding.detail + "\"",
                    finding.detail);
    }
    return 0;
  });
  in_stage("benchmark-db", [&] {
    if (db.catalog_version_applied > catalog.version())
      throw Error(ErrorCode::InvalidState, "catalog version " + std::to_string(catalog.version()) +
                                               " predates the weights applied to the database (version " +
                                               std::to_string(db.catalog_version_applied) + ")");
    return 0;
  });
  WorkflowResult out;
  out.table = in_stage("weight-engine", [&] { return evaluate_application(model, catalog, threshold); });
  out.plan = in_stage("mapper", [&] { return partition(model, out.table); });
  out.manifest = in_stage("mapper", [&] { return generate_scaffold(out.plan, model, base_port); });
  return out;
}

nlohmann::json plan_to_json(const ServicePlan& plan) {
  nlohmann::json services = nlohmann::json::array();
  for (const auto& s : plan.services) {
    services.push_back({{"service_name", s.service_name},
                        {"source_module", s.source_module},
                        {"functions", s.functions},
                        {"entities", s.entities}});
  }
  nlohmann::json excluded = nlohmann::json::array();
  for (const auto& e : plan.excluded)
    excluded.push_back({{"module", e.module}, {"function", e.function}, {"reason", std::string(exclusion_reason_name(e.reason))}});
  return {{"app_name", plan.app_name}, {"services", std::move(services)}, {"excluded", std::move(excluded)}};
}

ServicePlan plan_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  ServicePlan plan;
  plan.app_name = require_string(doc, "app_name", "plan");
  for (const auto& s : require(doc, "services", "plan")) {
    ServiceCandidate c;
    c.service_name = require_string(s, "service_name", "plan.services");
    c.source_module = require_string(s, "source_module", "plan.services");
    c.functions = require(s, "functions", "plan.services").get<std::vector<std::string>>();
    c.entities = require(s, "entities", "plan.services").get<std::set<std::string>>();
    plan.services.push_back(std::move(c));
  }
  for (const auto& e : require(doc, "excluded", "plan")) {
    const std::string reason = require_string(e, "reason", "plan.excluded");
    if (reason != "gate-failed" && reason != "below-threshold")
      throw Error(ErrorCode::Parse, "plan.excluded: unknown reason \"" + reason + "\"");
    plan.excluded.push_back({require_string(e, "module", "plan.excluded"), require_string(e, "function", "plan.excluded"),
                             reason == "gate-failed" ? ExclusionReason::GateFailed : ExclusionReason::BelowThreshold});
  }
  return plan;
}

nlohmann::json manifest_to_json(const ScaffoldManifest& manifest) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : manifest) {
    nlohmann::json controller = nlohmann::json::array();
    for (const auto& ep : s.controller)
      controller.push_back({{"url", ep.url}, {"function", ep.function}, {"parameters", ep.parameters}});
    nlohmann::json entities = nlohmann::json::array();
    for (const auto& e : s.entities) entities.push_back({{"name", e.name}, {"attributes", e.attributes}, {"note", e.note}});
    out.push_back({{"service_name", s.service_name},
                   {"port", s.port},
                   {"main", s.main_class_name},
                   {"controller", std::move(controller)},
                   {"service_layer", s.service_layer},
                   {"dao", s.dao},
                   {"entities", std::move(entities)}});
  }
  return out;
}

ScaffoldManifest manifest_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  if (!doc.is_array()) throw Error(ErrorCode::Parse, "scaffold manifest must be an array");
  ScaffoldManifest manifest;
  for (const auto& s : doc) {
    ServiceScaffold out;
    out.service_name = require_string(s, "service_name", "manifest");
    out.port = require(s, "port", "manifest").get<int>();
    out.main_class_name = require_string(s, "main", "manifest");
    for (const auto& ep : require(s, "controller", "manifest"))
      out.controller.push_back({require_string(ep, "url", "manifest.controller"),
                                require_string(ep, "function", "manifest.controller"),
                                require(ep, "parameters", "manifest.controller").get<std::vector<std::string>>()});
    out.service_layer = require(s, "service_layer", "manifest").get<std::vector<std::string>>();
    out.dao = require(s, "dao", "manifest").get<std::vector<std::string>>();
    for (const auto& e : require(s, "entities", "manifest")) {
      EntitySpec spec;
      spec.name = require_string(e, "name", "manifest.entities");
      spec.attributes = require(e, "attributes", "manifest.entities").get<std::vector<std::string>>();
      if (auto it = e.find("note"); it != e.end()) spec.note = it->get<std::string>();
      out.entities.push_back(std::move(spec));
    }
    manifest.push_back(std::move(out));
  }
  return manifest;
}

std::string render_plan(const ServicePlan& plan) {
  std::ostringstream os;
  os << "Microservice candidates of " << plan.app_name << " (" << plan.services.size() << ")\n";
  for (const auto& s : plan.services) {
    os << "  " << s.service_name << "\n";
    for (const auto& f : s.functions) os << "    - " << f << "\n";
    if (!s.entities.empty()) {
      os << "    entities:";
      for (const auto& e : s.entities) os << " " << e;
      os << "\n";
    }
  }
  if (!plan.excluded.empty()) {
    os << "Excluded functions\n";
    for (const auto& e : plan.excluded)
      os << "  " << e.module << "." << e.function << " (" << exclusion_reason_name(e.reason) << ")\n";
  }
  return os.str();
}

}  // namespace ftdecomp
