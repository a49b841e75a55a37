#include "ftdecomp/service_api.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <mutex>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"
#include "httplib.h"

namespace ftdecomp {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_analysis_id(std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "analysis-%06llu", static_cast<unsigned long long>(n));
  return buf;
}

nlohmann::json error_body(const Error& e) {
  return {{"error", {{"code", to_string(e.code())}, {"message", e.what()}, {"subject", e.subject()}}}};
}

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Role request_role(const httplib::Request& req) {
  if (!req.has_header("X-Role")) return Role::User;
  const auto role = parse_role(req.get_header_value("X-Role"));
  if (!role) throw Error(ErrorCode::Validation, "X-Role must be manager or user", req.get_header_value("X-Role"));
  return *role;
}

nlohmann::json request_body(const httplib::Request& req) {
  return detail::parse_json(req.body, "request body");
}

// Runs `fn`, mapping library errors and malformed JSON to HTTP errors.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_json(res, http_status(e.code()), error_body(e));
  } catch (const nlohmann::json::exception& e) {
    send_json(res, 400, error_body(Error(ErrorCode::Parse, std::string("request body: ") + e.what())));
  }
}

}  // namespace

std::optional<Role> parse_role(std::string_view header) {
  if (header == "manager") return Role::Manager;
  if (header == "user" || header.empty()) return Role::User;
  return std::nullopt;
}

nlohmann::json stored_analysis_to_json(const StoredAnalysis& a) {
  return {{"analysis_id", a.analysis_id},
          {"owner", a.owner},
          {"model", model_to_json(a.model_snapshot)},
          {"table", table_to_json(a.table)},
          {"plan", plan_to_json(a.plan)},
          {"created_at", a.created_at}};
}

StoredAnalysis stored_analysis_from_json(const nlohmann::json& doc) {
  StoredAnalysis a;
  a.analysis_id = detail::require_string(doc, "analysis_id", "analysis");
  a.owner = detail::require_string(doc, "owner", "analysis");
  a.model_snapshot = model_from_json(detail::require(doc, "model", "analysis"));
  a.table = table_from_json(detail::require(doc, "table", "analysis"));
  a.plan = plan_from_json(detail::require(doc, "plan", "analysis"));
  a.created_at = detail::require_string(doc, "created_at", "analysis");
  return a;
}

nlohmann::json weights_view(const FeatureCatalog& catalog) {
  nlohmann::json cards = nlohmann::json::array();
  for (const auto& c : catalog.cards()) {
    cards.push_back({{"name", c.name},
                     {"description", c.description},
                     {"category", std::string(category_name(c.category))},
                     {"weight", card_weight_to_json(c.weight)},
                     {"stale", c.stale}});
  }
  return {{"version", catalog.version()}, {"cards", std::move(cards)}};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Unauthorized: return 403;
    case ErrorCode::Duplicate:
    case ErrorCode::InvalidState: return 409;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

ToolService::ToolService(FeatureCatalog catalog, Database db, std::optional<Storage> storage)
    : catalog_(std::move(catalog)), db_(std::move(db)), storage_(std::move(storage)) {
  if (!storage_) return;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(analyses_dir(), ec)) {
    unsigned long long n = 0;
    if (std::sscanf(entry.path().filename().string().c_str(), "analysis-%llu.json", &n) == 1 && n >= next_analysis_)
      next_analysis_ = n + 1;
  }
}

std::filesystem::path ToolService::analyses_dir() const {
  return storage_ ? storage_->db_path.parent_path() / "analyses" : std::filesystem::path{};
}

void ToolService::require_manager(Role role, const char* operation) const {
  if (role != Role::Manager) throw Error(ErrorCode::Unauthorized, std::string(operation) + " requires the manager role");
}

void ToolService::persist_locked() const {
  if (!storage_) return;
  save_database(db_, storage_->db_path);
  save_catalog(catalog_, storage_->catalog_path);
}

void ToolService::flush() const {
  std::shared_lock lock(mutex_);
  persist_locked();
}

nlohmann::json ToolService::get_weights() const {
  std::shared_lock lock(mutex_);
  return weights_view(catalog_);
}

EvaluationResult ToolService::evaluate(const std::set<std::string>& annotation, Tenths threshold) const {
  FeatureCatalog snapshot = catalog();
  return evaluate_function(annotation, snapshot, threshold);
}

std::string ToolService::store_app_data(const std::string& owner, const ApplicationModel& model,
                                        const FeatureTable& table, const ServicePlan& plan) {
  check_model_structure(model);
  if (table.size() != model.function_count())
    throw Error(ErrorCode::Mismatch, "table does not cover the model's functions");
  std::unique_lock lock(mutex_);
  StoredAnalysis analysis{format_analysis_id(next_analysis_++), owner, model, table, plan, utc_now()};
  if (storage_) {
    std::filesystem::create_directories(analyses_dir());
    detail::write_file_atomic(analyses_dir() / (analysis.analysis_id + ".json"),
                              stored_analysis_to_json(analysis).dump(2) + "\n");
  }
  const std::string id = analysis.analysis_id;
  analyses_.emplace(id, std::move(analysis));
  return id;
}

StoredAnalysis ToolService::get_app_data(const std::string& analysis_id) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = analyses_.find(analysis_id); it != analyses_.end()) return it->second;
  }
  if (storage_ && analysis_id.find('/') == std::string::npos && analysis_id.find("..") == std::string::npos) {
    const auto path = analyses_dir() / (analysis_id + ".json");
    if (std::filesystem::exists(path))
      return stored_analysis_from_json(detail::parse_json(detail::read_file(path), path.string()));
  }
  throw Error(ErrorCode::NotFound, "unknown analysis \"" + analysis_id + "\"", analysis_id);
}

void ToolService::insert_new_data(Role role, const std::vector<BenchmarkRecord>& records) {
  require_manager(role, "InsertNewData");
  std::unique_lock lock(mutex_);
  db_ = ftdecomp::insert_new_data(db_, records, catalog_);
  persist_locked();
}

nlohmann::json ToolService::update_weight(Role role) {
  require_manager(role, "UpdateWeight");
  std::unique_lock lock(mutex_);
  auto update = ftdecomp::update_weight(db_, catalog_);
  catalog_ = std::move(update.catalog);
  db_.catalog_version_applied = catalog_.version();
  persist_locked();
  return weights_view(catalog_);
}

void ToolService::submit_case(Role, const Submission& submission) {
  std::unique_lock lock(mutex_);
  db_ = ftdecomp::submit_case(db_, submission, catalog_);
  persist_locked();
}

void ToolService::review_case(Role role, const std::string& submission_id, SubmissionStatus verdict,
                              const std::string& note) {
  require_manager(role, "review");
  std::unique_lock lock(mutex_);
  db_ = ftdecomp::review_case(db_, submission_id, verdict, note);
  persist_locked();
}

FeatureCatalog ToolService::catalog() const {
  std::shared_lock lock(mutex_);
  return catalog_;
}

Database ToolService::database() const {
  std::shared_lock lock(mutex_);
  return db_;
}

void mount_routes(httplib::Server& server, ToolService& service) {
  server.Get("/weights", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service.get_weights()); });
  });

  server.Post("/evaluate", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = request_body(req);
      const auto& annotation = detail::require(body, "annotation", "evaluate");
      if (!annotation.is_array()) throw Error(ErrorCode::Parse, "evaluate: \"annotation\" must be an array");
      Tenths threshold = kDefaultThreshold;
      if (auto it = body.find("threshold"); it != body.end() && !it->is_null()) {
        if (!it->is_number() || !tenths_from_double(it->get<double>(), threshold))
          throw Error(ErrorCode::Parse, "evaluate: threshold must be a one-decimal number");
      }
      const auto result = service.evaluate(annotation.get<std::set<std::string>>(), threshold);
      send_json(res, 200, evaluation_to_json(result));
    });
  });

  server.Post("/appdata", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = request_body(req);
      const auto id = service.store_app_data(detail::require_string(body, "owner", "appdata"),
                                             model_from_json(detail::require(body, "model", "appdata")),
                                             table_from_json(detail::require(body, "table", "appdata")),
                                             plan_from_json(detail::require(body, "plan", "appdata")));
      send_json(res, 201, {{"analysis_id", id}});
    });
  });

  server.Get("/appdata/:id", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, stored_analysis_to_json(service.get_app_data(req.path_params.at("id")))); });
  });

  server.Post("/benchmark/insert", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Role role = request_role(req);
      if (role != Role::Manager) throw Error(ErrorCode::Unauthorized, "InsertNewData requires the manager role");
      const auto body = request_body(req);
      const auto& records = detail::require(body, "records", "insert");
      if (!records.is_array()) throw Error(ErrorCode::Parse, "insert: \"records\" must be an array");
      std::vector<BenchmarkRecord> batch;
      for (std::size_t i = 0; i < records.size(); ++i)
        batch.push_back(record_from_json(records[i], "records[" + std::to_string(i) + "]"));
      service.insert_new_data(role, batch);
      send_json(res, 200, {{"inserted", batch.size()}, {"record_count", service.database().records.size()}});
    });
  });

  server.Post("/weights/update", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service.update_weight(request_role(req))); });
  });

  server.Post("/submissions", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto submission = submission_from_json(request_body(req));
      service.submit_case(request_role(req), submission);
      send_json(res, 201, {{"submission_id", submission.submission_id}, {"status", "pending"}});
    });
  });

  server.Post("/submissions/:id/review", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Role role = request_role(req);
      const auto body = request_body(req);
      const auto verdict = parse_status(detail::require_string(body, "verdict", "review"));
      if (!verdict || *verdict == SubmissionStatus::Pending)
        throw Error(ErrorCode::Parse, "review: verdict must be approved or rejected");
      std::string note;
      if (auto it = body.find("note"); it != body.end() && it->is_string()) note = it->get<std::string>();
      const std::string id = req.path_params.at("id");
      service.review_case(role, id, *verdict, note);
      send_json(res, 200, {{"submission_id", id}, {"status", std::string(status_name(*verdict))}});
    });
  });
}

}  // namespace ftdecomp
