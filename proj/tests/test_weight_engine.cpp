#include <algorithm>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "ftdecomp/app_model.hpp"
#include "ftdecomp/error.hpp"
#include "ftdecomp/weight_engine.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ftdecomp;

namespace {

FeatureCatalog synthetic_catalog() {
  return FeatureCatalog({{"Gate", "", FeatureCategory::Precondition, PreconditionMark{}},
                         {"F1", "", FeatureCategory::Computation, Tenths{600}},
                         {"F2", "", FeatureCategory::Data, Tenths{400}},
                         {"F3", "", FeatureCategory::Data, Tenths{200}}},
                        1);
}

Tenths w(const FeatureCatalog& catalog, std::string_view name) { return *lookup_feature(catalog, name).numeric_weight(); }

}  // namespace

TEST_CASE("trivial annotations") {
  const auto catalog = default_catalog();
  const auto empty = evaluate_function({}, catalog);
  CHECK_FALSE(empty.gated);
  CHECK(empty.total_weight == Tenths{0});
  CHECK_FALSE(empty.candidate);

  const auto gate_only = evaluate_function({"BackendRelated"}, catalog);
  CHECK(gate_only.gated);
  CHECK(gate_only.total_weight == Tenths{0});
  CHECK(gate_only.breakdown.empty());
  CHECK_FALSE(gate_only.candidate);
}

TEST_CASE("category averages are summed") {
  const auto r = evaluate_function({"Gate", "F1", "F2", "F3"}, synthetic_catalog());
  CHECK(r.total_weight.str() == "90.0");  // 60.0 + (40.0 + 20.0) / 2
  CHECK(r.candidate);
  REQUIRE(r.breakdown.size() == 2);
  CHECK(r.breakdown[0].category == FeatureCategory::Computation);
  CHECK(r.breakdown[0].average_weight.str() == "60.0");
  CHECK(r.breakdown[1].category == FeatureCategory::Data);
  CHECK(r.breakdown[1].features_present == std::set<std::string>{"F2", "F3"});
  CHECK(r.breakdown[1].average_weight.str() == "30.0");
  CHECK(r.total_weight.count == oracle::evaluate_total({"Gate", "F1", "F2", "F3"}, synthetic_catalog()));
}

TEST_CASE("missing gate feature forces zero") {
  const auto catalog = default_catalog();
  const auto r = evaluate_function({"InformationTransmission", "Search", "Timeliness"}, catalog);
  CHECK_FALSE(r.gated);
  CHECK(r.total_weight.str() == "0.0");
  CHECK_FALSE(r.candidate);
}

TEST_CASE("List all cargos total is IT plus the Search/Timeliness average") {
  const auto catalog = default_catalog();
  const auto r = evaluate_function({"BackendRelated", "InformationTransmission", "Search", "Timeliness"}, catalog);
  const Rational expected =
      w(catalog, "InformationTransmission").exact() +
      round_tenths((w(catalog, "Search").exact() + w(catalog, "Timeliness").exact()) / Rational(2)).exact();
  CHECK(r.total_weight == round_tenths(expected));
  CHECK(lookup_feature(catalog, "Search").category == lookup_feature(catalog, "Timeliness").category);
}

TEST_CASE("classify_candidate is strict") {
  static_assert(classify_candidate(Tenths{780}, Tenths{500}));
  static_assert(!classify_candidate(Tenths{500}, Tenths{500}));
  static_assert(!classify_candidate(Tenths{0}, Tenths{500}));
  CHECK(classify_candidate(Tenths{501}, kDefaultThreshold));
}

TEST_CASE("unknown and stale features are errors even without the gate") {
  const auto catalog = default_catalog();
  try {
    (void)evaluate_function({"Serch"}, catalog);
    FAIL("expected unknown feature");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFeature);
    CHECK(e.subject() == "Serch");
  }

  auto cards = catalog.cards();
  for (auto& c : cards)
    if (c.name == "Search") c.stale = true;
  const FeatureCatalog stale(cards, 2);
  for (const std::set<std::string>& annotation :
       {std::set<std::string>{"BackendRelated", "Search"}, std::set<std::string>{"Search"}}) {
    try {
      (void)evaluate_function(annotation, stale);
      FAIL("expected stale weight error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::StaleWeight);
      CHECK(e.subject() == "Search");
    }
  }
}

TEST_CASE("Cargo feature table: ten rows, only the Interface row at zero") {
  const auto model = parse_model(std::filesystem::path(FTDECOMP_DATA_DIR) / "cargo_model.json");
  const auto table = evaluate_application(model, default_catalog());
  REQUIRE(table.size() == 10);
  int zero_rows = 0;
  for (const auto& row : table) {
    if (row.total_weight == Tenths{0}) {
      ++zero_rows;
      CHECK(row.function_ref.module == "Interface");
      CHECK(row.function_ref.function == "Present information");
      CHECK_FALSE(row.gated);
    } else {
      CHECK(row.gated);
      CHECK(row.candidate);
    }
  }
  CHECK(zero_rows == 1);
  CHECK(table[3].function_ref.function == "List all cargos");
}

TEST_CASE("evaluate_application on empty and broken models") {
  const auto catalog = default_catalog();
  CHECK(evaluate_application(ApplicationModel{}, catalog).empty());

  ApplicationModel broken;
  broken.modules = {{"Shop", {{"Checkout", "", {}, {"BackendRelated", "Teleport"}, {}}}}};
  try {
    (void)evaluate_application(broken, catalog);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(Shop, Checkout)") != std::string::npos);
    CHECK(e.subject() == "Teleport");
  }
}

TEST_CASE("evaluate_function agrees with a brute-force oracle and stays in range") {
  std::mt19937 rng(99);
  for (int i = 0; i < 2000; ++i) {
    const auto catalog = gen::random_catalog(rng);
    const auto annotation = gen::random_annotation(rng, catalog);
    const auto r = evaluate_function(annotation, catalog);
    REQUIRE(r.total_weight.count == oracle::evaluate_total(annotation, catalog));
    CHECK(r.total_weight.count >= 0);
    CHECK(r.total_weight.count <= 5000);
    if (!r.gated) CHECK_FALSE(r.candidate);
    Rational sum;
    for (const auto& b : r.breakdown) sum = sum + b.average_weight.exact();
    CHECK(r.total_weight == round_tenths(sum));
  }
}

TEST_CASE("permutation invariance and gate dominance") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 500; ++i) {
    const auto catalog = gen::random_catalog(rng);
    auto annotation = gen::random_annotation(rng, catalog);
    annotation.insert("Gate");

    // Shuffle the card order in the catalog and rebuild the annotation from a
    // shuffled vector; neither may change the result.
    auto cards = catalog.cards();
    std::shuffle(cards.begin(), cards.end(), rng);
    const FeatureCatalog shuffled(cards, catalog.version());
    std::vector<std::string> names(annotation.begin(), annotation.end());
    std::shuffle(names.begin(), names.end(), rng);
    const std::set<std::string> rebuilt(names.begin(), names.end());

    const auto a = evaluate_function(annotation, catalog);
    const auto b = evaluate_function(rebuilt, shuffled);
    CHECK(a == b);

    auto without = annotation;
    without.erase("Gate");
    const auto c = evaluate_function(without, catalog);
    CHECK(c.total_weight == Tenths{0});
    CHECK_FALSE(c.candidate);
  }
}

TEST_CASE("equal weights in a category collapse to that weight") {
  std::mt19937 rng(77);
  for (int i = 0; i < 200; ++i) {
    const Tenths weight{static_cast<std::int64_t>(rng() % 1001)};
    const int k = 1 + static_cast<int>(rng() % 5);
    std::vector<FeatureCard> cards = {{"Gate", "", FeatureCategory::Precondition, PreconditionMark{}}};
    std::set<std::string> annotation = {"Gate"};
    for (int j = 0; j < k; ++j) {
      cards.push_back({"D" + std::to_string(j), "", FeatureCategory::Data, weight});
      annotation.insert("D" + std::to_string(j));
    }
    CHECK(evaluate_function(annotation, FeatureCatalog(cards, 1)).total_weight == weight);
  }
}

TEST_CASE("raising one weight never lowers the total beyond rounding slack") {
  std::mt19937 rng(55);
  for (int i = 0; i < 500; ++i) {
    const auto catalog = gen::random_catalog(rng);
    auto annotation = gen::random_annotation(rng, catalog);
    annotation.insert("Gate");
    auto cards = catalog.cards();
    REQUIRE(cards.size() >= 2);
    const auto idx = 1 + rng() % (cards.size() - 1);
    auto& weight = std::get<Tenths>(cards[idx].weight);
    weight.count = std::min<std::int64_t>(1000, weight.count + 1 + static_cast<std::int64_t>(rng() % 200));
    const auto before = evaluate_function(annotation, catalog).total_weight;
    const auto after = evaluate_function(annotation, FeatureCatalog(cards, 1)).total_weight;
    CHECK(after.count >= before.count - 1);
  }
}

TEST_CASE("evaluation JSON round-trip") {
  std::mt19937 rng(4);
  FeatureTable table;
  for (int i = 0; i < 100; ++i) {
    const auto catalog = gen::random_catalog(rng);
    auto r = evaluate_function(gen::random_annotation(rng, catalog), catalog);
    r.function_ref = {"M" + std::to_string(i % 3), "f" + std::to_string(i)};
    CHECK(evaluation_from_json(nlohmann::json::parse(evaluation_to_json(r).dump())) == r);
    table.push_back(r);
  }
  CHECK(table_from_json(nlohmann::json::parse(table_to_json(table).dump())) == table);
}

TEST_CASE("rendered feature table shows one-decimal weights") {
  FeatureTable table = {{{"Cargo", "Book cargo"}, true, {}, Tenths{1351}, true},
                        {{"Cargo", "List all cargos"}, true, {}, Tenths{780}, true},
                        {{"Interface", "Present information"}, false, {}, Tenths{0}, false}};
  const auto text = render_feature_table(table);
  CHECK(text.find("Functional Module | Function") == 0);
  CHECK(text.find("Cargo             | Book cargo          |  135.1 | yes") != std::string::npos);
  CHECK(text.find("                  | List all cargos     |   78.0 | yes") != std::string::npos);
  CHECK(text.find("Interface         | Present information |    0.0 | no") != std::string::npos);
}
