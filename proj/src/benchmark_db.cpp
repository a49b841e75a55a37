#include "ftdecomp/benchmark_db.hpp"

#include <algorithm>
#include <map>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

namespace {

constexpr std::array<std::string_view, 3> kStatusNames = {"pending", "approved", "rejected"};

std::set<std::string> existing_ids(const Database& db) {
  std::set<std::string> ids;
  for (const auto& r : db.records) ids.insert(r.record_id);
  return ids;
}

// Checks ids in `batch` are unique among themselves and absent from `taken`.
void check_fresh_ids(const std::vector<BenchmarkRecord>& batch, std::set<std::string> taken) {
  for (const auto& r : batch) {
    if (!taken.insert(r.record_id).second)
      throw Error(ErrorCode::Duplicate, "duplicate record_id \"" + r.record_id + "\"", r.record_id);
  }
}

}  // namespace

std::string_view status_name(SubmissionStatus status) { return kStatusNames[static_cast<std::size_t>(status)]; }

std::optional<SubmissionStatus> parse_status(std::string_view name) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i)
    if (kStatusNames[i] == name) return static_cast<SubmissionStatus>(i);
  return std::nullopt;
}

const Submission* Database::find_submission(std::string_view id) const {
  for (const auto& s : submissions)
    if (s.submission_id == id) return &s;
  return nullptr;
}

void validate_record(const BenchmarkRecord& record, const FeatureCatalog& catalog) {
  if (record.record_id.empty()) throw Error(ErrorCode::Validation, "record with empty record_id");
  if (record.features.empty())
    throw Error(ErrorCode::Validation, "record \"" + record.record_id + "\" has no features", record.record_id);
  for (const auto& f : record.features) {
    if (!catalog.find(f))
      throw Error(ErrorCode::UnknownFeature, "record \"" + record.record_id + "\": unknown feature \"" + f + "\"", f);
  }
}

Database insert_new_data(const Database& db, const std::vector<BenchmarkRecord>& records,
                         const FeatureCatalog& catalog) {
  for (const auto& r : records) validate_record(r, catalog);
  check_fresh_ids(records, existing_ids(db));
  Database out = db;
  out.records.insert(out.records.end(), records.begin(), records.end());
  return out;
}

WeightUpdate update_weight(const Database& db, const FeatureCatalog& catalog) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>, std::less<>> counts;
  for (const auto& r : db.records) {
    for (const auto& f : r.features) {
      auto& [m, n] = counts[f];
      ++m;
      if (r.suitable) ++n;
    }
  }

  WeightUpdate result;
  std::vector<FeatureCard> cards;
  cards.reserve(catalog.cards().size());
  for (const auto& card : catalog.cards()) {
    FeatureCard next = card;
    auto it = counts.find(card.name);
    const std::int64_t m = it == counts.end() ? 0 : it->second.first;
    const std::int64_t n = it == counts.end() ? 0 : it->second.second;
    if (weight_bearing(card.category)) {
      if (m > 0) {
        next.weight = round_tenths(100 * n, m);
        next.stale = false;
      } else {
        next.stale = true;
      }
    }
    result.statistics.push_back({card.name, m, n, next.weight, next.stale});
    cards.push_back(std::move(next));
  }
  result.catalog = catalog.with_cards(std::move(cards), catalog.version() + 1);
  return result;
}

Database filter_by_domain(const Database& db, const std::set<std::string>& domains) {
  if (domains.empty()) return db;
  Database out = db;
  std::erase_if(out.records, [&](const BenchmarkRecord& r) { return !domains.contains(r.app_domain); });
  return out;
}

Database submit_case(const Database& db, const Submission& submission, const FeatureCatalog& catalog) {
  if (submission.submission_id.empty()) throw Error(ErrorCode::Validation, "submission with empty submission_id");
  if (db.find_submission(submission.submission_id))
    throw Error(ErrorCode::Duplicate, "duplicate submission_id \"" + submission.submission_id + "\"",
                submission.submission_id);
  if (submission.status != SubmissionStatus::Pending)
    throw Error(ErrorCode::InvalidState,
                "submission \"" + submission.submission_id + "\" must enter as pending, not " +
                    std::string(status_name(submission.status)),
                submission.submission_id);
  for (const auto& r : submission.records) validate_record(r, catalog);
  check_fresh_ids(submission.records, existing_ids(db));
  Database out = db;
  out.submissions.push_back(submission);
  return out;
}

Database review_case(const Database& db, std::string_view submission_id, SubmissionStatus verdict,
                     const std::string& note) {
  if (verdict == SubmissionStatus::Pending)
    throw Error(ErrorCode::InvalidState, "review verdict must be approved or rejected", std::string(submission_id));
  const Submission* found = db.find_submission(submission_id);
  if (!found)
    throw Error(ErrorCode::NotFound, "unknown submission \"" + std::string(submission_id) + "\"",
                std::string(submission_id));
  if (found->status != SubmissionStatus::Pending)
    throw Error(ErrorCode::InvalidState,
                "submission \"" + found->submission_id + "\" is already " + std::string(status_name(found->status)),
                found->submission_id);
  if (verdict == SubmissionStatus::Approved) check_fresh_ids(found->records, existing_ids(db));

  Database out = db;
  auto it = std::find_if(out.submissions.begin(), out.submissions.end(),
                         [&](const Submission& s) { return s.submission_id == submission_id; });
  it->status = verdict;
  it->reviewer_note = note;
  if (verdict == SubmissionStatus::Approved) out.records.insert(out.records.end(), it->records.begin(), it->records.end());
  return out;
}

nlohmann::json record_to_json(const BenchmarkRecord& r) {
  return {{"record_id", r.record_id},   {"app_name", r.app_name}, {"app_domain", r.app_domain},
          {"function_name", r.function_name}, {"features", r.features}, {"suitable", r.suitable}};
}

BenchmarkRecord record_from_json(const nlohmann::json& doc, const std::string& where) {
  using detail::require;
  using detail::require_string;
  BenchmarkRecord r;
  r.record_id = require_string(doc, "record_id", where);
  r.app_name = require_string(doc, "app_name", where);
  r.app_domain = require_string(doc, "app_domain", where);
  r.function_name = require_string(doc, "function_name", where);
  const auto& features = require(doc, "features", where);
  if (!features.is_array()) throw Error(ErrorCode::Parse, where + ": \"features\" must be an array");
  for (const auto& f : features) {
    if (!f.is_string()) throw Error(ErrorCode::Parse, where + ": feature names must be strings");
    r.features.insert(f.get<std::string>());
  }
  const auto& suitable = require(doc, "suitable", where);
  if (!suitable.is_boolean()) throw Error(ErrorCode::Parse, where + ": \"suitable\" must be a boolean");
  r.suitable = suitable.get<bool>();
  return r;
}

nlohmann::json submission_to_json(const Submission& s) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : s.records) records.push_back(record_to_json(r));
  return {{"submission_id", s.submission_id},
          {"records", std::move(records)},
          {"submitter", s.submitter},
          {"status", std::string(status_name(s.status))},
          {"reviewer_note", s.reviewer_note}};
}

Submission submission_from_json(const nlohmann::json& doc, const std::string& where) {
  using detail::require;
  using detail::require_string;
  Submission s;
  s.submission_id = require_string(doc, "submission_id", where);
  s.submitter = require_string(doc, "submitter", where);
  const auto status = parse_status(require_string(doc, "status", where));
  if (!status) throw Error(ErrorCode::Parse, where + ": status must be pending, approved or rejected");
  s.status = *status;
  if (auto it = doc.find("reviewer_note"); it != doc.end()) {
    if (!it->is_string()) throw Error(ErrorCode::Parse, where + ": \"reviewer_note\" must be a string");
    s.reviewer_note = it->get<std::string>();
  }
  const auto& records = require(doc, "records", where);
  if (!records.is_array()) throw Error(ErrorCode::Parse, where + ": \"records\" must be an array");
  for (std::size_t i = 0; i < records.size(); ++i)
    s.records.push_back(record_from_json(records[i], where + ".records[" + std::to_string(i) + "]"));
  return s;
}

nlohmann::json database_to_json(const Database& db) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : db.records) records.push_back(record_to_json(r));
  nlohmann::json submissions = nlohmann::json::array();
  for (const auto& s : db.submissions) submissions.push_back(submission_to_json(s));
  return {{"catalog_version_applied", db.catalog_version_applied},
          {"records", std::move(records)},
          {"submissions", std::move(submissions)}};
}

Database database_from_json(const nlohmann::json& doc) {
  using detail::require;
  Database db;
  const auto& version = require(doc, "catalog_version_applied", "database");
  if (!version.is_number_integer())
    throw Error(ErrorCode::Parse, "database: \"catalog_version_applied\" must be an integer");
  db.catalog_version_applied = version.get<std::int64_t>();
  const auto& records = require(doc, "records", "database");
  const auto& submissions = require(doc, "submissions", "database");
  if (!records.is_array() || !submissions.is_array())
    throw Error(ErrorCode::Parse, "database: \"records\" and \"submissions\" must be arrays");
  for (std::size_t i = 0; i < records.size(); ++i)
    db.records.push_back(record_from_json(records[i], "database.records[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < submissions.size(); ++i)
    db.submissions.push_back(submission_from_json(submissions[i], "database.submissions[" + std::to_string(i) + "]"));
  return db;
}

Database load_database(const std::filesystem::path& path, const FeatureCatalog& catalog) {
  Database db = database_from_json(detail::parse_json(detail::read_file(path), path.string()));
  std::set<std::string> ids;
  for (const auto& r : db.records) {
    validate_record(r, catalog);
    if (!ids.insert(r.record_id).second)
      throw Error(ErrorCode::Duplicate, path.string() + ": duplicate record_id \"" + r.record_id + "\"", r.record_id);
  }
  std::set<std::string> sub_ids;
  for (const auto& s : db.submissions) {
    if (!sub_ids.insert(s.submission_id).second)
      throw Error(ErrorCode::Duplicate, path.string() + ": duplicate submission_id \"" + s.submission_id + "\"",
                  s.submission_id);
    for (const auto& r : s.records) validate_record(r, catalog);
  }
  return db;
}

void save_database(const Database& db, const std::filesystem::path& path) {
  detail::write_file_atomic(path, database_to_json(db).dump(2) + "\n");
}

}  // namespace ftdecomp
