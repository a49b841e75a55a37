#include "ftdecomp/weight_engine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

EvaluationResult evaluate_function(const std::set<std::string>& annotation, const FeatureCatalog& catalog,
                                   Tenths threshold) {
  std::map<FeatureCategory, std::vector<const FeatureCard*>> groups;
  bool gated = false;
  for (const auto& name : annotation) {
    const FeatureCard& card = lookup_feature(catalog, name);
    if (card.stale)
      throw Error(ErrorCode::StaleWeight, "feature \"" + name + "\" has a stale weight; refresh weights first", name);
    if (weight_bearing(card.category)) groups[card.category].push_back(&card);
    else gated = true;
  }

  EvaluationResult result;
  result.gated = gated;
  if (!gated) return result;

  Rational total;
  for (const auto& [category, cards] : groups) {
    std::int64_t sum = 0;
    CategoryBreakdown entry{category, {}, {}};
    for (const FeatureCard* card : cards) {
      sum += card->numeric_weight().value_or(Tenths{}).count;
      entry.features_present.insert(card->name);
    }
    entry.average_weight = round_tenths(sum, 10 * static_cast<std::int64_t>(cards.size()));
    total = total + entry.average_weight.exact();
    result.breakdown.push_back(std::move(entry));
  }
  result.total_weight = round_tenths(total);
  result.candidate = classify_candidate(result.total_weight, threshold);
  return result;
}

FeatureTable evaluate_application(const ApplicationModel& model, const FeatureCatalog& catalog, Tenths threshold) {
  FeatureTable table;
  table.reserve(model.function_count());
  for (const auto& m : model.modules) {
    for (const auto& f : m.functions) {
      try {
        auto row = evaluate_function(f.annotation, catalog, threshold);
        row.function_ref = {m.name, f.name};
        table.push_back(std::move(row));
      } catch (const Error& e) {
        throw Error(e.code(), "(" + m.name + ", " + f.name + "): " + e.what(), e.subject());
      }
    }
  }
  return table;
}

nlohmann::json evaluation_to_json(const EvaluationResult& r) {
  nlohmann::json breakdown = nlohmann::json::array();
  for (const auto& b : r.breakdown) {
    breakdown.push_back({{"category", std::string(category_name(b.category))},
                         {"features", b.features_present},
                         {"average_weight", b.average_weight.as_double()}});
  }
  return {{"module", r.function_ref.module},
          {"function", r.function_ref.function},
          {"gated", r.gated},
          {"breakdown", std::move(breakdown)},
          {"total_weight", r.total_weight.as_double()},
          {"candidate", r.candidate}};
}

EvaluationResult evaluation_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  EvaluationResult r;
  r.function_ref = {require_string(doc, "module", "evaluation"), require_string(doc, "function", "evaluation")};
  r.gated = require(doc, "gated", "evaluation").get<bool>();
  r.candidate = require(doc, "candidate", "evaluation").get<bool>();
  if (!tenths_from_double(require(doc, "total_weight", "evaluation").get<double>(), r.total_weight))
    throw Error(ErrorCode::Parse, "evaluation: total_weight is not a one-decimal value");
  for (const auto& b : require(doc, "breakdown", "evaluation")) {
    CategoryBreakdown entry{};
    const auto cat = parse_category(require_string(b, "category", "evaluation.breakdown"));
    if (!cat) throw Error(ErrorCode::Parse, "evaluation.breakdown: unknown category");
    entry.category = *cat;
    for (const auto& f : require(b, "features", "evaluation.breakdown")) entry.features_present.insert(f.get<std::string>());
    if (!tenths_from_double(require(b, "average_weight", "evaluation.breakdown").get<double>(), entry.average_weight))
      throw Error(ErrorCode::Parse, "evaluation.breakdown: average_weight is not a one-decimal value");
    r.breakdown.push_back(std::move(entry));
  }
  return r;
}

nlohmann::json table_to_json(const FeatureTable& table) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : table) out.push_back(evaluation_to_json(row));
  return out;
}

FeatureTable table_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::Parse, "feature table must be an array");
  FeatureTable table;
  for (const auto& row : doc) table.push_back(evaluation_from_json(row));
  return table;
}

std::string render_feature_table(const FeatureTable& table) {
  std::size_t wm = std::string("Functional Module").size();
  std::size_t wf = std::string("Function").size();
  for (const auto& row : table) {
    wm = std::max(wm, row.function_ref.module.size());
    wf = std::max(wf, row.function_ref.function.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream os;
  os << pad("Functional Module", wm) << " | " << pad("Function", wf) << " | Weight | Candidate\n";
  os << std::string(wm, '-') << "-+-" << std::string(wf, '-') << "-+--------+----------\n";
  std::string last_module;
  for (const auto& row : table) {
    // Like the published layout, the module name appears once per group.
    const std::string module = row.function_ref.module == last_module ? "" : row.function_ref.module;
    last_module = row.function_ref.module;
    std::string weight = row.total_weight.str();
    os << pad(module, wm) << " | " << pad(row.function_ref.function, wf) << " | " << std::string(6 - std::min<std::size_t>(6, weight.size()), ' ')
       << weight << " | " << (row.candidate ? "yes" : "no") << "\n";
  }
  return os.str();
}

}  // namespace ftdecomp
