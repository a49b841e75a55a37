#pragma once

#include <set>
#include <string>
#include <vector>

#include "ftdecomp/app_model.hpp"
#include "ftdecomp/catalog.hpp"
#include "json.hpp"

namespace ftdecomp {

inline constexpr Tenths kDefaultThreshold{500};

struct FunctionRef {
  std::string module;
  std::string function;

  bool operator==(const FunctionRef&) const = default;
};

struct CategoryBreakdown {
  FeatureCategory category;
  std::set<std::string> features_present;
  Tenths average_weight;

  bool operator==(const CategoryBreakdown&) const = default;
};

struct EvaluationResult {
  FunctionRef function_ref;
  bool gated = false;
  std::vector<CategoryBreakdown> breakdown;  // weight-bearing categories present, in category order
  Tenths total_weight;
  bool candidate = false;

  bool operator==(const EvaluationResult&) const = default;
};

/// One row per model function, in model order.
using FeatureTable = std::vector<EvaluationResult>;

/// Strictly greater than.
constexpr bool classify_candidate(Tenths total, Tenths threshold) { return total > threshold; }

/// Scores one annotation:
///  1. no Precondition-category feature -> not gated, total 0;
///  2. weight-bearing features grouped by category, each group averaged
///     over the stored one-decimal weights and rounded to tenths;
///  3. total is the sum of the category averages, candidate if it exceeds
///     `threshold`.
/// Unknown or stale features throw, whether or not the gate passes.
EvaluationResult evaluate_function(const std::set<std::string>& annotation, const FeatureCatalog& catalog,
                                   Tenths threshold = kDefaultThreshold);

/// Evaluates every function. Throws Error naming "(module, function)" of
/// the first function that cannot be scored.
FeatureTable evaluate_application(const ApplicationModel& model, const FeatureCatalog& catalog,
                                  Tenths threshold = kDefaultThreshold);

nlohmann::json evaluation_to_json(const EvaluationResult& result);
EvaluationResult evaluation_from_json(const nlohmann::json& doc);
nlohmann::json table_to_json(const FeatureTable& table);
FeatureTable table_from_json(const nlohmann::json& doc);

/// Functional Module | Function | Weight | Candidate.
std::string render_feature_table(const FeatureTable& table);

}  // namespace ftdecomp
