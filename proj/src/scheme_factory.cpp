#include "seqprice/errors.hpp"
#include "seqprice/schemes.hpp"

namespace seqprice {

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"dynamic-matching", "static-half", "gs-unique",
                                              "sapb",             "kdemand",     "static-items"};
  return names;
}

std::unique_ptr<PricingScheme> make_scheme(const std::string& name, const Market& m,
                                           const std::optional<ItemPrices>& prices) {
  if (name == "dynamic-matching") return std::make_unique<DynamicMatchingScheme>();
  if (name == "kdemand") return std::make_unique<KDemandScheme>();
  if (name == "static-half")
    return std::make_unique<StaticBundlePricing>(static_half_bundle_prices(m, covering_optimal_partition(m)),
                                                 "static-half");
  if (name == "gs-unique") return std::make_unique<StaticItemPricing>(gs_unique_static_prices(m).prices, "gs-unique");
  if (name == "sapb") return std::make_unique<StaticBundlePricing>(sapb(m, covering_optimal_partition(m)).prices, "sapb");
  if (name == "static-items") {
    if (!prices) throw InputError("static-items needs item prices");
    if (prices->item_count() != m.item_count()) throw InputError("price vector does not match the items");
    return std::make_unique<StaticItemPricing>(*prices, "static-items");
  }
  throw InputError("unknown scheme '" + name + "'");
}

}  // namespace seqprice
