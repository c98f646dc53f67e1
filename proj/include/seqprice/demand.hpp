#pragma once

#include <cstddef>
#include <vector>

#include "seqprice/market.hpp"

namespace seqprice {

/// Exhaustive demand enumeration refuses to look at more items (or
/// bundles) than this unless told otherwise.
inline constexpr std::size_t kDefaultDemandGuard = 20;

Rational value(const Valuation& v, ItemSet s);

/// v(a ∪ b) - v(b).
Rational marginal(const Valuation& v, ItemSet a, ItemSet b);

/// v(S) minus the sum of the item prices in S.
Rational utility(const Valuation& v, ItemSet s, const ItemPrices& p);

/// v(union of the collection) minus the sum of its bundle prices. The
/// collection indexes into p.bundles.
Rational utility(const Valuation& v, IndexSet collection, const BundlePrices& p);

/// Utility-maximizing subsets of `available` in which every item adds
/// positive marginal value (v(S) > v(S - b) for each b in S), in increasing
/// bitmask order. Padding a bundle with items worth nothing to the buyer
/// is not a distinct choice. Never empty; contains the empty set exactly
/// when the maximum utility is 0.
std::vector<ItemSet> demand_sets(const Valuation& v, ItemSet available, const ItemPrices& p,
                                 std::size_t guard = kDefaultDemandGuard);

/// Same for collections of the bundles listed in `available` (indices into
/// p.bundles): every bundle of a demanded collection adds positive value.
std::vector<IndexSet> demand_collections(const Valuation& v, const BundlePrices& p, IndexSet available,
                                         std::size_t guard = kDefaultDemandGuard);

/// Same as above, reading values through the market's cached tables.
std::vector<ItemSet> demand_sets(const Market& m, std::size_t agent, ItemSet available, const ItemPrices& p,
                                 std::size_t guard = kDefaultDemandGuard);
std::vector<IndexSet> demand_collections(const Market& m, std::size_t agent, const BundlePrices& p,
                                         IndexSet available, std::size_t guard = kDefaultDemandGuard);

/// Every utility-maximizing subset of `available`, without the marginal
/// value filter.
std::vector<ItemSet> utility_maximizers(const Valuation& v, ItemSet available, const ItemPrices& p,
                                        std::size_t guard = kDefaultDemandGuard);
std::vector<IndexSet> maximizing_collections(const Market& m, std::size_t agent, const BundlePrices& p,
                                             IndexSet available, std::size_t guard = kDefaultDemandGuard);

/// Highest utility among collections of the available bundles.
Rational max_utility(const Valuation& v, const BundlePrices& p, IndexSet available,
                     std::size_t guard = kDefaultDemandGuard);

/// Sum of the agents' values for their bundles. Overlapping bundles are an
/// InvariantViolation.
Rational welfare(const Market& m, const Allocation& x);

}  // namespace seqprice
