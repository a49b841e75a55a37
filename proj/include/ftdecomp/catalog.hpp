#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ftdecomp/rounding.hpp"
#include "json.hpp"

namespace ftdecomp {

enum class FeatureCategory { Precondition, Computation, Data, TimeRelated, Openness, Other };

inline constexpr std::array<FeatureCategory, 6> kAllCategories = {
    FeatureCategory::Precondition, FeatureCategory::Computation, FeatureCategory::Data,
    FeatureCategory::TimeRelated,  FeatureCategory::Openness,    FeatureCategory::Other};

/// Canonical label, e.g. "Hybrid.TimeRelated".
std::string_view category_name(FeatureCategory category);
std::optional<FeatureCategory> parse_category(std::string_view name);

/// Every category except Precondition contributes a numeric weight.
constexpr bool weight_bearing(FeatureCategory category) { return category != FeatureCategory::Precondition; }

struct PreconditionMark {
  bool operator==(const PreconditionMark&) const = default;
};

/// Either the Precondition sentinel or a percentage in tenths (0..1000).
using CardWeight = std::variant<PreconditionMark, Tenths>;

struct FeatureCard {
  std::string name;
  std::string description;
  FeatureCategory category = FeatureCategory::Other;
  CardWeight weight = Tenths{};
  // Set when the last weight refresh found no benchmark functions carrying
  // this feature; the weight is then carried over and unfit for scoring.
  bool stale = false;

  std::optional<Tenths> numeric_weight() const;
  bool operator==(const FeatureCard&) const = default;
};

class FeatureCatalog {
 public:
  FeatureCatalog() = default;
  FeatureCatalog(std::vector<FeatureCard> cards, std::int64_t version)
      : cards_(std::move(cards)), version_(version) {}

  const std::vector<FeatureCard>& cards() const { return cards_; }
  std::int64_t version() const { return version_; }

  /// First card with exactly this name, or nullptr.
  const FeatureCard* find(std::string_view name) const;

  FeatureCatalog with_cards(std::vector<FeatureCard> cards, std::int64_t version) const {
    return FeatureCatalog(std::move(cards), version);
  }

  bool operator==(const FeatureCatalog&) const = default;

 private:
  std::vector<FeatureCard> cards_;
  std::int64_t version_ = 1;
};

enum class CatalogViolationKind { EmptyName, DuplicateName, SentinelMisuse, MissingSentinel, WeightOutOfRange };

struct CatalogViolation {
  CatalogViolationKind kind;
  std::string card;
  std::string message;
};

std::vector<CatalogViolation> validate_catalog(const FeatureCatalog& catalog);

/// Throws Error(UnknownFeature) naming the identifier when absent.
const FeatureCard& lookup_feature(const FeatureCatalog& catalog, std::string_view name);

/// Three-row card block (Description / Type / Weight) headed by the name.
std::string render_card(const FeatureCard& card);

/// The shipped 12-card catalog. Weights are those produced by refreshing
/// against data/seed_db.json.
FeatureCatalog default_catalog();

nlohmann::json catalog_to_json(const FeatureCatalog& catalog);
FeatureCatalog catalog_from_json(const nlohmann::json& doc);
FeatureCatalog load_catalog(const std::filesystem::path& path);
void save_catalog(const FeatureCatalog& catalog, const std::filesystem::path& path);

nlohmann::json card_weight_to_json(const CardWeight& weight);

}  // namespace ftdecomp
