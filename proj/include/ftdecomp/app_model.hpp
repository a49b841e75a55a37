#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ftdecomp/catalog.hpp"
#include "json.hpp"

namespace ftdecomp {

struct EntitySpec {
  std::string name;
  std::vector<std::string> attributes;
  std::string note;

  bool operator==(const EntitySpec&) const = default;
};

struct FunctionSpec {
  std::string name;
  std::string explanation;
  std::set<std::string> entities;
  std::set<std::string> annotation;
  std::vector<std::string> parameters;

  bool operator==(const FunctionSpec&) const = default;
};

struct FunctionalModule {
  std::string name;
  std::vector<FunctionSpec> functions;

  bool operator==(const FunctionalModule&) const = default;
};

/// A monolith described as functional modules, functions and entities.
struct ApplicationModel {
  std::string app_name;
  std::vector<FunctionalModule> modules;
  std::vector<EntitySpec> entities;

  const EntitySpec* find_entity(std::string_view name) const;
  std::size_t function_count() const;
  bool operator==(const ApplicationModel&) const = default;
};

enum class ModelFindingKind { UnknownFeature, Unannotated, MissingParameter, InvalidParameter };

struct ModelFinding {
  ModelFindingKind kind;
  std::string module;
  std::string function;
  std::string detail;
};

/// Structural checks only (duplicates, dangling entity references).
/// Throws Error(Validation) on the first problem.
void check_model_structure(const ApplicationModel& model);

/// Findings that would make the model unfit for evaluation or URL
/// generation. An empty result means the model is evaluable.
///
/// MissingParameter: the explanation mentions `Entity.attribute` for an
/// entity the function references, and `attribute` is not a parameter.
/// InvalidParameter: a parameter that is empty or not alphanumeric, since
/// parameters are copied verbatim into endpoint URLs.
std::vector<ModelFinding> validate_model(const ApplicationModel& model, const FeatureCatalog& catalog);

nlohmann::json model_to_json(const ApplicationModel& model);
/// Decodes and runs check_model_structure.
ApplicationModel model_from_json(const nlohmann::json& doc);
ApplicationModel parse_model(const std::filesystem::path& path);
void save_model(const ApplicationModel& model, const std::filesystem::path& path);

}  // namespace ftdecomp
