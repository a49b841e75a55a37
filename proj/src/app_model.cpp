#include "ftdecomp/app_model.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

namespace {

std::vector<std::string> string_array(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = detail::require(obj, key, where);
  if (!v.is_array()) throw Error(ErrorCode::Parse, where + ": \"" + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw Error(ErrorCode::Parse, where + ": \"" + key + "\" must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool is_alnum_word(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!std::isalnum(c) && c != '_') return false;
  return true;
}

}  // namespace

const EntitySpec* ApplicationModel::find_entity(std::string_view name) const {
  for (const auto& e : entities)
    if (e.name == name) return &e;
  return nullptr;
}

std::size_t ApplicationModel::function_count() const {
  std::size_t n = 0;
  for (const auto& m : modules) n += m.functions.size();
  return n;
}

void check_model_structure(const ApplicationModel& model) {
  std::set<std::string> entity_names;
  for (const auto& e : model.entities) {
    if (e.name.empty()) throw Error(ErrorCode::Validation, "entity with empty name");
    if (!entity_names.insert(e.name).second)
      throw Error(ErrorCode::Duplicate, "duplicate entity \"" + e.name + "\"", e.name);
  }
  std::set<std::string> module_names;
  for (const auto& m : model.modules) {
    if (m.name.empty()) throw Error(ErrorCode::Validation, "module with empty name");
    if (!module_names.insert(m.name).second)
      throw Error(ErrorCode::Duplicate, "duplicate module \"" + m.name + "\"", m.name);
    std::set<std::string> function_names;
    for (const auto& f : m.functions) {
      if (f.name.empty()) throw Error(ErrorCode::Validation, "module \"" + m.name + "\": function with empty name");
      if (!function_names.insert(f.name).second)
        throw Error(ErrorCode::Duplicate, "duplicate function \"" + m.name + "." + f.name + "\"", f.name);
      for (const auto& ref : f.entities) {
        if (!entity_names.contains(ref))
          throw Error(ErrorCode::Validation,
                      "function \"" + m.name + "." + f.name + "\" references unknown entity \"" + ref + "\"", ref);
      }
    }
  }
}

std::vector<ModelFinding> validate_model(const ApplicationModel& model, const FeatureCatalog& catalog) {
  static const std::regex kAttributeRef(R"(\b([A-Za-z_][A-Za-z0-9_]*)\.([A-Za-z_][A-Za-z0-9_]*))");
  std::vector<ModelFinding> out;
  for (const auto& m : model.modules) {
    for (const auto& f : m.functions) {
      if (f.annotation.empty()) out.push_back({ModelFindingKind::Unannotated, m.name, f.name, "no features annotated"});
      for (const auto& feature : f.annotation) {
        if (!catalog.find(feature))
          out.push_back({ModelFindingKind::UnknownFeature, m.name, f.name, feature});
      }
      for (const auto& p : f.parameters) {
        if (!is_alnum_word(p)) out.push_back({ModelFindingKind::InvalidParameter, m.name, f.name, p});
      }
      std::set<std::string> reported;
      for (auto it = std::sregex_iterator(f.explanation.begin(), f.explanation.end(), kAttributeRef);
           it != std::sregex_iterator(); ++it) {
        const std::string entity = (*it)[1];
        const std::string attribute = (*it)[2];
        if (!f.entities.contains(entity)) continue;
        if (std::find(f.parameters.begin(), f.parameters.end(), attribute) != f.parameters.end()) continue;
        if (reported.insert(attribute).second)
          out.push_back({ModelFindingKind::MissingParameter, m.name, f.name, entity + "." + attribute});
      }
    }
  }
  return out;
}

nlohmann::json model_to_json(const ApplicationModel& model) {
  nlohmann::json entities = nlohmann::json::array();
  for (const auto& e : model.entities)
    entities.push_back({{"name", e.name}, {"attributes", e.attributes}, {"note", e.note}});
  nlohmann::json modules = nlohmann::json::array();
  for (const auto& m : model.modules) {
    nlohmann::json functions = nlohmann::json::array();
    for (const auto& f : m.functions) {
      functions.push_back({{"name", f.name},
                           {"explanation", f.explanation},
                           {"entities", f.entities},
                           {"annotation", f.annotation},
                           {"parameters", f.parameters}});
    }
    modules.push_back({{"name", m.name}, {"functions", std::move(functions)}});
  }
  return {{"app_name", model.app_name}, {"entities", std::move(entities)}, {"modules", std::move(modules)}};
}

ApplicationModel model_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  ApplicationModel model;
  model.app_name = require_string(doc, "app_name", "model");

  const auto& entities = require(doc, "entities", "model");
  if (!entities.is_array()) throw Error(ErrorCode::Parse, "model: \"entities\" must be an array");
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const std::string where = "model.entities[" + std::to_string(i) + "]";
    EntitySpec e;
    e.name = require_string(entities[i], "name", where);
    e.attributes = string_array(entities[i], "attributes", where);
    if (auto it = entities[i].find("note"); it != entities[i].end() && it->is_string()) e.note = it->get<std::string>();
    model.entities.push_back(std::move(e));
  }

  const auto& modules = require(doc, "modules", "model");
  if (!modules.is_array()) throw Error(ErrorCode::Parse, "model: \"modules\" must be an array");
  for (std::size_t i = 0; i < modules.size(); ++i) {
    const std::string where = "model.modules[" + std::to_string(i) + "]";
    FunctionalModule m;
    m.name = require_string(modules[i], "name", where);
    const auto& functions = require(modules[i], "functions", where);
    if (!functions.is_array()) throw Error(ErrorCode::Parse, where + ": \"functions\" must be an array");
    for (std::size_t j = 0; j < functions.size(); ++j) {
      const std::string fw = where + ".functions[" + std::to_string(j) + "]";
      const auto& fj = functions[j];
      FunctionSpec f;
      f.name = require_string(fj, "name", fw);
      if (auto it = fj.find("explanation"); it != fj.end() && it->is_string()) f.explanation = it->get<std::string>();
      for (auto& s : string_array(fj, "entities", fw)) f.entities.insert(std::move(s));
      for (auto& s : string_array(fj, "annotation", fw)) f.annotation.insert(std::move(s));
      f.parameters = string_array(fj, "parameters", fw);
      m.functions.push_back(std::move(f));
    }
    model.modules.push_back(std::move(m));
  }
  check_model_structure(model);
  return model;
}

ApplicationModel parse_model(const std::filesystem::path& path) {
  return model_from_json(detail::parse_json(detail::read_file(path), path.string()));
}

void save_model(const ApplicationModel& model, const std::filesystem::path& path) {
  detail::write_file_atomic(path, model_to_json(model).dump(2) + "\n");
}

}  // namespace ftdecomp
