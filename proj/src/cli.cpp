#include "ftdecomp/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <iomanip>
#include <map>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "fileio.hpp"
#include "ftdecomp/benchmark_db.hpp"
#include "ftdecomp/error.hpp"
#include "ftdecomp/metrics.hpp"
#include "ftdecomp/report.hpp"
#include "ftdecomp/service_api.hpp"
#include "httplib.h"

namespace ftdecomp {

namespace {

struct Options {
  std::string model_path;
  std::string db_path;
  std::string catalog_path;
  std::string threshold = "50.0";
  int base_port = kDefaultBasePort;
  std::string out_path;
  std::vector<std::string> domains;
  bool dry_run = false;
  std::string records_path;
  std::string submission_path;
  std::string submission_id;
  std::string verdict;
  std::string note;
  std::string graph_path;
  std::string manifest_path;
  std::vector<std::string> services;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool json = false;
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const nlohmann::json::exception& e) {
    throw StageError(name, Error(ErrorCode::Parse, e.what()));
  }
}

FeatureCatalog load_catalog_opt(const Options& o) {
  return stage("catalog-core", [&] { return o.catalog_path.empty() ? default_catalog() : load_catalog(o.catalog_path); });
}

Database load_db(const Options& o, const FeatureCatalog& catalog) {
  return stage("benchmark-db", [&] { return load_database(o.db_path, catalog); });
}

Tenths parse_threshold(const std::string& text) {
  Tenths t;
  if (!parse_tenths(text, t)) throw StageError("cli", Error(ErrorCode::Validation, "threshold must be a one-decimal number, got \"" + text + "\""));
  return t;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Tenths threshold = parse_threshold(o.threshold);
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  const auto model = stage("app-model", [&] { return parse_model(o.model_path); });
  const auto report = analyze(model, db, catalog, threshold, o.base_port, o.model_path);
  if (!o.out_path.empty())
    stage("cli", [&] { detail::write_file_atomic(o.out_path, report_to_json(report).dump(2) + "\n"); return 0; });
  out << render_report(report);
  return kExitOk;
}

int cmd_update_weights(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  auto db = load_db(o, catalog);
  const std::set<std::string> domains(o.domains.begin(), o.domains.end());
  const auto update = update_weight(filter_by_domain(db, domains), catalog);

  out << std::left << std::setw(24) << "Feature" << std::setw(20) << "Category" << std::right << std::setw(6) << "m"
      << std::setw(6) << "n" << std::setw(14) << "Weight" << "\n";
  for (const auto& s : update.statistics) {
    const FeatureCard& card = lookup_feature(update.catalog, s.feature);
    std::string weight = std::holds_alternative<Tenths>(s.weight) ? std::get<Tenths>(s.weight).str() : "Precondition";
    out << std::left << std::setw(24) << s.feature << std::setw(20) << category_name(card.category) << std::right
        << std::setw(6) << s.containing << std::setw(6) << s.suitable << std::setw(14) << weight
        << (s.stale ? "  (stale)" : "") << "\n";
  }
  out << "catalog version " << update.catalog.version() << "\n";
  if (!o.dry_run) {
    stage("catalog-core", [&] {
      if (o.catalog_path.empty()) throw Error(ErrorCode::Validation, "--catalog is required unless --dry-run is given");
      save_catalog(update.catalog, o.catalog_path);
      return 0;
    });
    db.catalog_version_applied = update.catalog.version();
    stage("benchmark-db", [&] { save_database(db, o.db_path); return 0; });
  }
  return kExitOk;
}

int cmd_insert(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  const auto next = stage("benchmark-db", [&] {
    auto doc = detail::parse_json(detail::read_file(o.records_path), o.records_path);
    const auto& arr = doc.is_object() ? detail::require(doc, "records", o.records_path) : doc;
    if (!arr.is_array()) throw Error(ErrorCode::Parse, o.records_path + ": expected an array of records");
    std::vector<BenchmarkRecord> batch;
    for (std::size_t i = 0; i < arr.size(); ++i) batch.push_back(record_from_json(arr[i], "records[" + std::to_string(i) + "]"));
    auto updated = insert_new_data(db, batch, catalog);
    save_database(updated, o.db_path);
    return updated;
  });
  out << "inserted " << next.records.size() - db.records.size() << " record(s); total " << next.records.size() << "\n";
  return kExitOk;
}

int cmd_submit(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  stage("benchmark-db", [&] {
    const auto submission = submission_from_json(detail::parse_json(detail::read_file(o.submission_path), o.submission_path));
    save_database(submit_case(db, submission, catalog), o.db_path);
    out << "submitted " << submission.submission_id << " (" << submission.records.size() << " record(s), pending)\n";
    return 0;
  });
  return kExitOk;
}

int cmd_review(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  stage("benchmark-db", [&] {
    const auto verdict = parse_status(o.verdict);
    if (!verdict || *verdict == SubmissionStatus::Pending)
      throw Error(ErrorCode::Validation, "--verdict must be approved or rejected");
    const auto next = review_case(db, o.submission_id, *verdict, o.note);
    save_database(next, o.db_path);
    out << o.submission_id << " " << status_name(*verdict) << "; records " << db.records.size() << " -> "
        << next.records.size() << "\n";
    return 0;
  });
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  std::map<std::string, std::pair<int, int>> per_domain;
  for (const auto& r : db.records) {
    auto& [total, suitable] = per_domain[r.app_domain];
    ++total;
    if (r.suitable) ++suitable;
  }
  out << "total records: " << db.records.size() << "\n";
  out << "domains: " << per_domain.size() << "\n";
  for (const auto& [domain, counts] : per_domain)
    out << "  " << std::left << std::setw(20) << domain << std::right << std::setw(5) << counts.first
        << " records, " << counts.second << " suitable\n";
  std::map<std::string_view, int> by_status;
  for (const auto& s : db.submissions) ++by_status[status_name(s.status)];
  out << "submissions: " << db.submissions.size();
  for (const auto& [status, n] : by_status) out << ", " << status << " " << n;
  out << "\ncatalog version applied: " << db.catalog_version_applied << "\n";
  return kExitOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const auto catalog = load_catalog_opt(o);
  if (o.json) {
    out << catalog_to_json(catalog).dump(2) << "\n";
    return kExitOk;
  }
  out << "Feature catalog, version " << catalog.version() << "\n";
  for (const auto& card : catalog.cards()) out << "\n" << render_card(card);
  return kExitOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const auto graph = stage("metrics", [&] {
    if (!o.manifest_path.empty())
      return scaffold_to_graph(manifest_from_json(detail::parse_json(detail::read_file(o.manifest_path), o.manifest_path)));
    if (o.graph_path.empty()) throw Error(ErrorCode::Validation, "either --graph or --manifest is required");
    return load_graph(o.graph_path);
  });
  const auto report = stage("metrics", [&] { return metrics_report(graph, o.services); });
  out << render_metrics(report);
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto catalog = load_catalog_opt(o);
  const auto db = load_db(o, catalog);
  if (o.catalog_path.empty()) throw StageError("service-api", Error(ErrorCode::Validation, "--catalog is required"));
  ToolService service(catalog, db, ToolService::Storage{o.db_path, o.catalog_path});
  httplib::Server server;
  // httplib's defaults include SO_REUSEPORT, which would let a second
  // instance share the port instead of failing.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  mount_routes(server, service);
  if (!server.bind_to_port(o.host, o.port)) {
    err << "[service-api] cannot listen on " << o.host << ":" << o.port << "\n";
    return kExitData;
  }

  sigset_t signals, previous;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  std::thread worker([&] { server.listen_after_bind(); });
  out << "listening on http://" << o.host << ":" << o.port << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  worker.join();
  service.flush();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  out << "stopped; database flushed to " << o.db_path << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Feature Table decomposition of monoliths into microservice candidates", "ftdecomp"};
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "Evaluate a model, partition it into services and scaffold them");
  analyze_cmd->add_option("--model", o.model_path, "Application model JSON")->required();
  analyze_cmd->add_option("--db", o.db_path, "Benchmark database JSON")->required();
  analyze_cmd->add_option("--catalog", o.catalog_path, "Feature catalog JSON (default: built-in)");
  analyze_cmd->add_option("--threshold", o.threshold, "Candidate threshold in percent")->capture_default_str();
  analyze_cmd->add_option("--base-port", o.base_port, "First service port")->capture_default_str();
  analyze_cmd->add_option("--out", o.out_path, "Write the machine report here");

  auto* db_cmd = app.add_subcommand("db", "Benchmark database maintenance");
  db_cmd->require_subcommand(1);
  auto* update_cmd = db_cmd->add_subcommand("update-weights", "Recompute feature weights from the database");
  update_cmd->add_option("--domain", o.domains, "Restrict to these application domains");
  update_cmd->add_flag("--dry-run", o.dry_run, "Print without saving");
  auto* insert_cmd = db_cmd->add_subcommand("insert", "Insert benchmark records");
  insert_cmd->add_option("--records", o.records_path, "JSON array of records")->required();
  auto* submit_cmd = db_cmd->add_subcommand("submit", "Submit a case for review");
  submit_cmd->add_option("--submission", o.submission_path, "Submission JSON")->required();
  auto* review_cmd = db_cmd->add_subcommand("review", "Approve or reject a pending submission");
  review_cmd->add_option("--id", o.submission_id, "Submission id")->required();
  review_cmd->add_option("--verdict", o.verdict, "approved | rejected")->required();
  review_cmd->add_option("--note", o.note, "Reviewer note");
  auto* stats_cmd = db_cmd->add_subcommand("stats", "Record counts per domain");
  for (auto* sub : {update_cmd, insert_cmd, submit_cmd, review_cmd, stats_cmd}) {
    sub->add_option("--db", o.db_path, "Benchmark database JSON")->required();
    sub->add_option("--catalog", o.catalog_path, "Feature catalog JSON (default: built-in)");
  }

  auto* catalog_cmd = app.add_subcommand("catalog", "Show the feature cards");
  catalog_cmd->add_option("--catalog", o.catalog_path, "Feature catalog JSON (default: built-in)");
  catalog_cmd->add_flag("--json", o.json, "Print the catalog file format instead of cards");

  auto* metrics_cmd = app.add_subcommand("metrics", "Coupling and cohesion metrics of a partitioned type graph");
  metrics_cmd->add_option("--graph", o.graph_path, "Dependency graph JSON");
  metrics_cmd->add_option("--manifest", o.manifest_path, "Scaffold manifest JSON (graph derived from it)");
  metrics_cmd->add_option("services", o.services, "Services to report (default: all, graph order)");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", o.port, "Listen port")->capture_default_str();
  serve_cmd->add_option("--host", o.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--db", o.db_path, "Benchmark database JSON")->required();
  serve_cmd->add_option("--catalog", o.catalog_path, "Feature catalog JSON")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("ftdecomp");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(o, out);
    if (*update_cmd) return cmd_update_weights(o, out);
    if (*insert_cmd) return cmd_insert(o, out);
    if (*submit_cmd) return cmd_submit(o, out);
    if (*review_cmd) return cmd_review(o, out);
    if (*stats_cmd) return cmd_stats(o, out);
    if (*catalog_cmd) return cmd_catalog(o, out);
    if (*metrics_cmd) return cmd_metrics(o, out);
    if (*serve_cmd) return cmd_serve(o, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "[internal] " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace ftdecomp
