#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ftdecomp/app_model.hpp"
#include "ftdecomp/benchmark_db.hpp"
#include "ftdecomp/catalog.hpp"
#include "ftdecomp/error.hpp"
#include "ftdecomp/mapper.hpp"
#include "ftdecomp/weight_engine.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace ftdecomp {

enum class Role { User, Manager };

/// Parses the X-Role header value. Missing header means User.
std::optional<Role> parse_role(std::string_view header);

struct StoredAnalysis {
  std::string analysis_id;
  std::string owner;
  ApplicationModel model_snapshot;
  FeatureTable table;
  ServicePlan plan;
  std::string created_at;  // ISO-8601 UTC

  bool operator==(const StoredAnalysis&) const = default;
};

nlohmann::json stored_analysis_to_json(const StoredAnalysis& analysis);
StoredAnalysis stored_analysis_from_json(const nlohmann::json& doc);

/// Catalog names, descriptions, categories and weights. Never contains
/// benchmark records.
nlohmann::json weights_view(const FeatureCatalog& catalog);

/// The analysis tool's two operation groups (statistics for managers,
/// analysis for users) over shared state. Mutations take an exclusive lock;
/// reads take a shared one and return snapshots.
class ToolService {
 public:
  struct Storage {
    std::filesystem::path db_path;
    std::filesystem::path catalog_path;
  };

  ToolService(FeatureCatalog catalog, Database db, std::optional<Storage> storage = std::nullopt);

  // AnalyzeService
  nlohmann::json get_weights() const;
  EvaluationResult evaluate(const std::set<std::string>& annotation, Tenths threshold = kDefaultThreshold) const;
  std::string store_app_data(const std::string& owner, const ApplicationModel& model, const FeatureTable& table,
                             const ServicePlan& plan);
  StoredAnalysis get_app_data(const std::string& analysis_id) const;

  // StatisticsService
  void insert_new_data(Role role, const std::vector<BenchmarkRecord>& records);
  nlohmann::json update_weight(Role role);
  void submit_case(Role role, const Submission& submission);
  void review_case(Role role, const std::string& submission_id, SubmissionStatus verdict, const std::string& note);

  FeatureCatalog catalog() const;
  Database database() const;

  /// Writes database and catalog if storage is configured.
  void flush() const;

 private:
  void require_manager(Role role, const char* operation) const;
  void persist_locked() const;
  std::filesystem::path analyses_dir() const;

  mutable std::shared_mutex mutex_;
  FeatureCatalog catalog_;
  Database db_;
  std::optional<Storage> storage_;
  std::map<std::string, StoredAnalysis> analyses_;
  std::uint64_t next_analysis_ = 1;
};

/// HTTP status for a library error code.
int http_status(ErrorCode code);

/// Registers every route on `server`:
///   GET  /weights                   POST /evaluate
///   POST /appdata                   GET  /appdata/{id}
///   POST /benchmark/insert          POST /weights/update
///   POST /submissions               POST /submissions/{id}/review
void mount_routes(httplib::Server& server, ToolService& service);

}  // namespace ftdecomp
