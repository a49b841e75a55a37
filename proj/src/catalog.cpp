#include "ftdecomp/catalog.hpp"

#include <set>
#include <sstream>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

namespace {

constexpr std::array<std::string_view, 6> kCategoryNames = {
    "Precondition", "Computation", "Data", "Hybrid.TimeRelated", "Hybrid.Openness", "Other"};

constexpr std::string_view kPreconditionWord = "Precondition";

}  // namespace

std::string_view category_name(FeatureCategory category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<FeatureCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
    if (kCategoryNames[i] == name) return kAllCategories[i];
  return std::nullopt;
}

std::optional<Tenths> FeatureCard::numeric_weight() const {
  if (const auto* t = std::get_if<Tenths>(&weight)) return *t;
  return std::nullopt;
}

const FeatureCard* FeatureCatalog::find(std::string_view name) const {
  for (const auto& card : cards_)
    if (card.name == name) return &card;
  return nullptr;
}

std::vector<CatalogViolation> validate_catalog(const FeatureCatalog& catalog) {
  std::vector<CatalogViolation> out;
  std::set<std::string> seen;
  for (const auto& card : catalog.cards()) {
    if (card.name.empty()) out.push_back({CatalogViolationKind::EmptyName, card.name, "card has an empty name"});
    else if (!seen.insert(card.name).second)
      out.push_back({CatalogViolationKind::DuplicateName, card.name, "duplicate name " + card.name});

    const bool is_mark = std::holds_alternative<PreconditionMark>(card.weight);
    if (weight_bearing(card.category) && is_mark) {
      out.push_back({CatalogViolationKind::SentinelMisuse, card.name,
                     card.name + ": Precondition weight on a " + std::string(category_name(card.category)) + " card"});
    } else if (!weight_bearing(card.category) && !is_mark) {
      out.push_back({CatalogViolationKind::MissingSentinel, card.name,
                     card.name + ": Precondition card carries a numeric weight"});
    }
    if (auto w = card.numeric_weight(); w && (w->count < 0 || w->count > 1000)) {
      out.push_back({CatalogViolationKind::WeightOutOfRange, card.name,
                     card.name + ": weight " + w->str() + " outside [0.0, 100.0]"});
    }
  }
  return out;
}

const FeatureCard& lookup_feature(const FeatureCatalog& catalog, std::string_view name) {
  if (const auto* card = catalog.find(name)) return *card;
  throw Error(ErrorCode::UnknownFeature, "unknown feature \"" + std::string(name) + "\"", std::string(name));
}

std::string render_card(const FeatureCard& card) {
  std::string weight = card.numeric_weight() ? card.numeric_weight()->str() + "%" : std::string(kPreconditionWord);
  std::ostringstream os;
  os << "| " << std::string(11, ' ') << " | " << card.name << "\n"
     << "| Description | " << card.description << "\n"
     << "| Type        | " << category_name(card.category) << "\n"
     << "| Weight      | " << weight << "\n";
  return os.str();
}

nlohmann::json card_weight_to_json(const CardWeight& weight) {
  if (const auto* t = std::get_if<Tenths>(&weight)) return t->as_double();
  return std::string(kPreconditionWord);
}

nlohmann::json catalog_to_json(const FeatureCatalog& catalog) {
  nlohmann::json cards = nlohmann::json::array();
  for (const auto& card : catalog.cards()) {
    nlohmann::json c = {{"name", card.name},
                        {"description", card.description},
                        {"category", std::string(category_name(card.category))},
                        {"weight", card_weight_to_json(card.weight)}};
    if (card.stale) c["stale"] = true;
    cards.push_back(std::move(c));
  }
  return {{"version", catalog.version()}, {"cards", std::move(cards)}};
}

FeatureCatalog catalog_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  const auto& version = require(doc, "version", "catalog");
  if (!version.is_number_integer()) throw Error(ErrorCode::Parse, "catalog: \"version\" must be an integer");
  const auto& cards = require(doc, "cards", "catalog");
  if (!cards.is_array()) throw Error(ErrorCode::Parse, "catalog: \"cards\" must be an array");

  std::vector<FeatureCard> out;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    const std::string where = "catalog.cards[" + std::to_string(i) + "]";
    const auto& c = cards[i];
    FeatureCard card;
    card.name = require_string(c, "name", where);
    card.description = require_string(c, "description", where);
    const auto cat = parse_category(require_string(c, "category", where));
    if (!cat) throw Error(ErrorCode::Parse, where + ": unknown category \"" + c["category"].get<std::string>() + "\"");
    card.category = *cat;
    const auto& w = require(c, "weight", where);
    if (w.is_string()) {
      if (w.get<std::string>() != kPreconditionWord)
        throw Error(ErrorCode::Parse, where + ": weight string must be \"Precondition\"");
      card.weight = PreconditionMark{};
    } else if (w.is_number()) {
      Tenths t;
      if (!tenths_from_double(w.get<double>(), t))
        throw Error(ErrorCode::Parse, where + ": weight must have at most one decimal digit");
      card.weight = t;
    } else {
      throw Error(ErrorCode::Parse, where + ": weight must be a number or \"Precondition\"");
    }
    if (auto it = c.find("stale"); it != c.end()) card.stale = it->get<bool>();
    out.push_back(std::move(card));
  }
  return FeatureCatalog(std::move(out), version.get<std::int64_t>());
}

FeatureCatalog load_catalog(const std::filesystem::path& path) {
  auto catalog = catalog_from_json(detail::parse_json(detail::read_file(path), path.string()));
  if (auto violations = validate_catalog(catalog); !violations.empty())
    throw Error(ErrorCode::Validation, path.string() + ": " + violations.front().message, violations.front().card);
  return catalog;
}

void save_catalog(const FeatureCatalog& catalog, const std::filesystem::path& path) {
  detail::write_file_atomic(path, catalog_to_json(catalog).dump(2) + "\n");
}

}  // namespace ftdecomp
