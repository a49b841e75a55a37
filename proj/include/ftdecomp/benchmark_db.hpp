#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ftdecomp/catalog.hpp"
#include "json.hpp"

namespace ftdecomp {

struct BenchmarkRecord {
  std::string record_id;
  std::string app_name;
  std::string app_domain;
  std::string function_name;
  std::set<std::string> features;
  bool suitable = false;

  bool operator==(const BenchmarkRecord&) const = default;
};

enum class SubmissionStatus { Pending, Approved, Rejected };

std::string_view status_name(SubmissionStatus status);
std::optional<SubmissionStatus> parse_status(std::string_view name);

struct Submission {
  std::string submission_id;
  std::vector<BenchmarkRecord> records;
  std::string submitter;
  SubmissionStatus status = SubmissionStatus::Pending;
  std::string reviewer_note;

  bool operator==(const Submission&) const = default;
};

/// The Microservice Applications Database. A plain value: every mutating
/// operation below returns a new Database and leaves its input untouched.
struct Database {
  std::vector<BenchmarkRecord> records;
  std::vector<Submission> submissions;
  std::int64_t catalog_version_applied = 0;

  const Submission* find_submission(std::string_view id) const;
  bool operator==(const Database&) const = default;
};

/// Per-card outcome of a weight refresh.
struct FeatureStatistic {
  std::string feature;
  std::int64_t containing = 0;  // m
  std::int64_t suitable = 0;    // n
  CardWeight weight;
  bool stale = false;
};

struct WeightUpdate {
  FeatureCatalog catalog;
  std::vector<FeatureStatistic> statistics;  // catalog order, Precondition cards included with m/n counts
};

/// Throws Error(Validation | UnknownFeature) if the record breaks an invariant.
void validate_record(const BenchmarkRecord& record, const FeatureCatalog& catalog);

/// Appends a batch atomically; weights are not touched.
Database insert_new_data(const Database& db, const std::vector<BenchmarkRecord>& records,
                         const FeatureCatalog& catalog);

/// Recomputes every weight-bearing card as round_tenths(100 n / m). Cards
/// with m = 0 keep their weight and come back flagged stale.
WeightUpdate update_weight(const Database& db, const FeatureCatalog& catalog);

/// Records restricted to the given application domains. An empty set keeps
/// everything.
Database filter_by_domain(const Database& db, const std::set<std::string>& domains);

Database submit_case(const Database& db, const Submission& submission, const FeatureCatalog& catalog);

Database review_case(const Database& db, std::string_view submission_id, SubmissionStatus verdict,
                     const std::string& note);

nlohmann::json record_to_json(const BenchmarkRecord& record);
BenchmarkRecord record_from_json(const nlohmann::json& doc, const std::string& where = "record");
nlohmann::json submission_to_json(const Submission& submission);
Submission submission_from_json(const nlohmann::json& doc, const std::string& where = "submission");
nlohmann::json database_to_json(const Database& db);
Database database_from_json(const nlohmann::json& doc);

/// Loads and checks every feature name (records and submissions) against
/// `catalog`.
Database load_database(const std::filesystem::path& path, const FeatureCatalog& catalog);
void save_database(const Database& db, const std::filesystem::path& path);

}  // namespace ftdecomp
