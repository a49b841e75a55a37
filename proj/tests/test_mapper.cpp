#include <filesystem>
#include <random>

#include "doctest.h"
#include "ftdecomp/error.hpp"
#include "ftdecomp/mapper.hpp"
#include "ftdecomp/metrics.hpp"
#include "support/generators.hpp"

using namespace ftdecomp;

namespace {

ApplicationModel cargo() { return parse_model(std::filesystem::path(FTDECOMP_DATA_DIR) / "cargo_model.json"); }

// Feature table in which function i is a candidate iff bit i of `mask` is
// set. Every row passes the gate, so non-candidates fall below the threshold.
FeatureTable masked_table(const ApplicationModel& model, std::uint64_t mask) {
  FeatureTable table;
  std::size_t i = 0;
  for (const auto& m : model.modules)
    for (const auto& f : m.functions) {
      const bool on = (mask >> i++) & 1;
      table.push_back({{m.name, f.name}, true, {}, Tenths{on ? 600 : 0}, on});
    }
  return table;
}

ApplicationModel random_model(std::mt19937& rng, const FeatureCatalog& catalog) {
  ApplicationModel m;
  m.app_name = "r";
  for (int e = 0; e < 3; ++e) m.entities.push_back({"E" + std::to_string(e), {"id"}, ""});
  const int n_modules = static_cast<int>(rng() % 5);
  for (int i = 0; i < n_modules; ++i) {
    FunctionalModule mod{"Module " + std::to_string(i), {}};
    const int n_functions = 1 + static_cast<int>(rng() % 4);
    for (int f = 0; f < n_functions; ++f) {
      FunctionSpec fn{"do thing " + std::to_string(f), "", {}, gen::random_annotation(rng, catalog), {"id"}};
      fn.annotation.insert("Gate");
      for (const auto& e : m.entities)
        if (rng() % 2) fn.entities.insert(e.name);
      mod.functions.push_back(std::move(fn));
    }
    m.modules.push_back(std::move(mod));
  }
  return m;
}

std::size_t planned_functions(const ServicePlan& plan) {
  std::size_t n = 0;
  for (const auto& s : plan.services) n += s.functions.size();
  return n;
}

}  // namespace

TEST_CASE("slug") {
  CHECK(slug("View tracking") == "viewtracking");
  CHECK(slug("Add CarrierMovement") == "addcarriermovement");
  CHECK(slug("  Hello,  World-2! ") == "helloworld2");
  CHECK(slug("") == "");
  for (const char* s : {"View tracking", "A b_C", "x--y", "123 Go"}) CHECK(slug(slug(s)) == slug(s));
}

TEST_CASE("generate_url") {
  CHECK(generate_url("localhost", 8002, "Tracking", "View tracking", {"trackingId"}) ==
        "http://localhost:8002/tracking/viewtracking/trackingId");
  CHECK(generate_url("localhost", 8001, "Cargo", "Book cargo", {}) == "http://localhost:8001/cargo/bookcargo/");
  CHECK(generate_url("h", 1, "X", "X", {"a", "b"}) == "http://h:1/x/x/a/b");
  CHECK_THROWS_AS(generate_url("h", 1, "!!", "X", {}), Error);
  CHECK_THROWS_AS(generate_url("h", 1, "X", " ", {}), Error);
}

TEST_CASE("Cargo plan has five services with the published assignment") {
  const auto model = cargo();
  const auto table = evaluate_application(model, default_catalog());
  const auto plan = partition(model, table);
  REQUIRE(plan.services.size() == 5);
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"CargoService", {"View details for cargo", "Book cargo", "Change cargo destination", "List all cargos"}},
      {"TrackingService", {"View tracking"}},
      {"LocationService", {"Create location"}},
      {"VoyageService", {"Create voyage", "Add CarrierMovement"}},
      {"DeliveryService", {"Update cargo location"}}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(plan.services[i].service_name == expected[i].first);
    CHECK(plan.services[i].functions == expected[i].second);
  }
  REQUIRE(plan.excluded.size() == 1);
  CHECK(plan.excluded[0] == Exclusion{"Interface", "Present information", ExclusionReason::GateFailed});
  CHECK(plan.services[3].entities == std::set<std::string>{"CarrierMovement", "Location", "Voyage"});
}

TEST_CASE("zero candidates gives an empty plan with every function excluded") {
  const auto model = cargo();
  const auto plan = partition(model, masked_table(model, 0));
  CHECK(plan.services.empty());
  CHECK(plan.excluded.size() == 10);
  for (const auto& e : plan.excluded) CHECK(e.reason == ExclusionReason::BelowThreshold);
}

TEST_CASE("every candidacy mask of the Cargo module maps exactly its candidates") {
  const auto model = cargo();
  const auto& functions = model.modules[0].functions;
  REQUIRE(functions.size() == 4);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const auto plan = partition(model, masked_table(model, mask));
    std::vector<std::string> expected;
    std::set<std::string> entities;
    for (std::size_t i = 0; i < 4; ++i)
      if ((mask >> i) & 1) {
        expected.push_back(functions[i].name);
        entities.insert(functions[i].entities.begin(), functions[i].entities.end());
      }
    const ServiceCandidate* service = nullptr;
    for (const auto& s : plan.services)
      if (s.source_module == "Cargo") service = &s;
    if (expected.empty()) {
      CHECK(service == nullptr);
    } else {
      REQUIRE(service != nullptr);
      CHECK(service->service_name == "CargoService");
      CHECK(service->functions == expected);
      CHECK(service->entities == entities);
    }
    CHECK(planned_functions(plan) + plan.excluded.size() == 10);
  }
}

TEST_CASE("partition rejects tables that do not match the model") {
  const auto model = cargo();
  auto table = masked_table(model, 0x3ff);
  table.pop_back();
  CHECK_THROWS_AS(partition(model, table), Error);

  table = masked_table(model, 0x3ff);
  std::swap(table[0], table[1]);
  try {
    (void)partition(model, table);
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Mismatch);
  }
}

TEST_CASE("Cargo scaffold: ports, URLs, layers, entity copies") {
  const auto model = cargo();
  const auto plan = partition(model, evaluate_application(model, default_catalog()));
  const auto manifest = generate_scaffold(plan, model, 8001);
  REQUIRE(manifest.size() == 5);
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    CHECK(manifest[i].port == 8001 + static_cast<int>(i));
    CHECK(manifest[i].main_class_name == manifest[i].service_name);
    CHECK_FALSE(manifest[i].controller.empty());
    CHECK(manifest[i].service_layer.size() == manifest[i].controller.size());
    CHECK_FALSE(manifest[i].dao.empty());
    CHECK_FALSE(manifest[i].entities.empty());
  }
  const auto& tracking = manifest[1];
  CHECK(tracking.service_name == "TrackingService");
  REQUIRE(tracking.controller.size() == 1);
  CHECK(tracking.controller[0].url == "http://localhost:8002/tracking/viewtracking/trackingId");
  CHECK(tracking.service_layer == std::vector<std::string>{"viewTracking"});
  CHECK(manifest[0].controller[3].url == "http://localhost:8001/cargo/listallcargos/");
  CHECK(manifest[3].service_layer[1] == "addCarrierMovement");

  // Cargo entity lives in CargoService, TrackingService and DeliveryService as independent copies.
  int holders = 0;
  for (const auto& s : manifest)
    for (const auto& e : s.entities)
      if (e.name == "Cargo") {
        ++holders;
        CHECK(e == *model.find_entity("Cargo"));
      }
  CHECK(holders == 3);
  CHECK(std::count(manifest[0].dao.begin(), manifest[0].dao.end(), "saveCargo") == 1);

  const auto g = scaffold_to_graph(manifest);
  for (const auto& r : g.relations()) CHECK(g.service_of(r.source) == g.service_of(r.target));
}

TEST_CASE("single-service scaffold has all five layers") {
  ApplicationModel m;
  m.app_name = "one";
  m.entities = {{"Item", {"id"}, ""}};
  m.modules = {{"Store", {{"Get item", "", {"Item"}, {"Gate"}, {"id"}}}}};
  FeatureTable table = {{{"Store", "Get item"}, true, {}, Tenths{900}, true}};
  const auto manifest = generate_scaffold(partition(m, table), m, 9000, "10.0.0.1");
  REQUIRE(manifest.size() == 1);
  const auto& s = manifest[0];
  CHECK(s.main_class_name == "StoreService");
  CHECK(s.controller == std::vector<EndpointSpec>{{"http://10.0.0.1:9000/store/getitem/id", "Get item", {"id"}}});
  CHECK(s.service_layer == std::vector<std::string>{"getItem"});
  CHECK(s.dao == std::vector<std::string>{"saveItem", "findItem", "updateItem", "deleteItem"});
  CHECK(s.entities == m.entities);
  const auto j = manifest_to_json(manifest)[0];
  for (const char* key : {"main", "controller", "service_layer", "dao", "entities"}) CHECK(j.contains(key));
}

TEST_CASE("port overflow") {
  const auto model = cargo();
  const auto plan = partition(model, masked_table(model, 0x3ff));
  CHECK_NOTHROW(generate_scaffold(plan, model, 65530));
  CHECK_THROWS_AS(generate_scaffold(plan, model, 65531), Error);
}

TEST_CASE("run_workflow end to end and its stage tags") {
  const auto model = cargo();
  const auto catalog = default_catalog();
  const auto result = run_workflow(model, Database{}, catalog);
  CHECK(result.table.size() == 10);
  CHECK(result.plan.services.size() == 5);
  CHECK(result.manifest.size() == 5);

  const auto empty = run_workflow(ApplicationModel{}, Database{}, catalog);
  CHECK(empty.table.empty());
  CHECK(empty.plan.services.empty());
  CHECK(empty.manifest.empty());

  auto cards = catalog.cards();
  for (auto& c : cards)
    if (c.name == "Timeliness") c.stale = true;
  try {
    (void)run_workflow(model, Database{}, FeatureCatalog(cards, 2));
    FAIL("expected stale error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "weight-engine");
    CHECK(e.code() == ErrorCode::StaleWeight);
    CHECK(std::string(e.what()).rfind("[weight-engine] ", 0) == 0);
  }

  auto bad = model;
  bad.modules[0].functions[0].annotation.insert("Serch");
  try {
    (void)run_workflow(bad, Database{}, catalog);
    FAIL("expected unknown feature");
  } catch (const StageError& e) {
    CHECK(e.stage() == "app-model");
  }

  Database ahead;
  ahead.catalog_version_applied = catalog.version() + 1;
  try {
    (void)run_workflow(model, ahead, catalog);
    FAIL("expected version error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "benchmark-db");
  }
}

TEST_CASE("function conservation, anti-monotone threshold, isolated scaffolds") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto catalog = gen::random_catalog(rng);
    const auto model = random_model(rng, catalog);
    const Tenths low{static_cast<std::int64_t>(rng() % 1000)};
    const Tenths high{low.count + static_cast<std::int64_t>(rng() % 1000)};
    const auto a = run_workflow(model, Database{}, catalog, low);
    const auto b = run_workflow(model, Database{}, catalog, high);

    CHECK(planned_functions(a.plan) + a.plan.excluded.size() == model.function_count());
    CHECK(planned_functions(b.plan) + b.plan.excluded.size() == model.function_count());

    std::set<std::pair<std::string, std::string>> in_a;
    for (const auto& s : a.plan.services)
      for (const auto& f : s.functions) in_a.insert({s.source_module, f});
    for (const auto& s : b.plan.services)
      for (const auto& f : s.functions) CHECK(in_a.contains({s.source_module, f}));

    std::set<int> ports;
    for (const auto& s : a.manifest) ports.insert(s.port);
    CHECK(ports.size() == a.manifest.size());

    const auto g = scaffold_to_graph(a.manifest);
    for (const auto& r : g.relations()) CHECK(g.service_of(r.source) == g.service_of(r.target));
  }
}

TEST_CASE("plan and manifest JSON round-trip") {
  const auto model = cargo();
  const auto result = run_workflow(model, Database{}, default_catalog());
  CHECK(plan_from_json(nlohmann::json::parse(plan_to_json(result.plan).dump())) == result.plan);
  CHECK(manifest_from_json(nlohmann::json::parse(manifest_to_json(result.manifest).dump())) == result.manifest);
  const auto text = render_plan(result.plan);
  CHECK(text.find("Interface.Present information (gate-failed)") != std::string::npos);
}
