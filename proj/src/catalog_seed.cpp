#include "ftdecomp/catalog.hpp"

namespace ftdecomp {

// Numeric weights equal update_weight() over data/seed_db.json; the
// catalog_seed test keeps the two in lockstep.
FeatureCatalog default_catalog() {
  using C = FeatureCategory;
  auto w = [](std::int64_t tenths) { return CardWeight{Tenths{tenths}}; };
  std::vector<FeatureCard> cards = {
      {"BackendRelated", "The function runs on, or exchanges data with, the backend rather than living only in the client.",
       C::Precondition, PreconditionMark{}},
      {"Calculation", "The function performs non-trivial computation such as pricing, scheduling or aggregation.",
       C::Computation, w(750)},
      {"Recommendation", "The function ranks or suggests items for a user from collected data.", C::Computation, w(721)},
      {"DataStorage", "The function keeps data in local or cloud storage.", C::Data, w(815)},
      {"InformationTransmission", "The function moves information between users, devices or systems.", C::Data,
       w(778)},
      {"DataSynchronization", "The function keeps copies of the same data consistent across places.", C::Data,
       w(824)},
      {"Search", "The function looks up records matching a query or key.", C::TimeRelated, w(689)},
      {"Timeliness", "The function result is only useful if produced or delivered within a time bound.",
       C::TimeRelated, w(705)},
      {"Extension", "The function adds new capabilities to the application, such as plugins or add-ons.",
       C::Openness, w(706)},
      {"ThirdPartyIntegration", "The function calls out to, or is called by, an external party's service.",
       C::Openness, w(591)},
      {"Preference", "The function records or applies per-user settings and preferences.", C::Other, w(536)},
      {"UserInterface", "The function is mainly about presentation and interaction on screen.", C::Other, w(294)},
  };
  return FeatureCatalog(std::move(cards), 1);
}

}  // namespace ftdecomp
