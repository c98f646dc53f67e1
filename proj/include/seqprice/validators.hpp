#pragma once

#include <cstddef>
#include <optional>

#include "seqprice/market.hpp"

namespace seqprice {

/// Valuation class checks enumerate subsets exhaustively; beyond this many
/// items they throw CapacityError.
inline constexpr std::size_t kDefaultValidatorGuard = 12;

bool check_monotone(const Valuation& v, std::size_t guard = kDefaultValidatorGuard);

/// v(S+b) + v(S+c) >= v(S+b+c) + v(S) for all S and distinct b, c outside S
/// (diminishing marginal values, compared pairwise).
bool check_submodular(const Valuation& v, std::size_t guard = kDefaultValidatorGuard);

/// v(A ∪ B) >= v(A) + v(B) for all disjoint A, B.
bool check_superadditive(const Valuation& v, std::size_t guard = kDefaultValidatorGuard);

/// Submodularity plus, for every S and distinct b1, b2, b3 outside S,
///   v(S+b1+b2) + v(S+b3) <= max(v(S+b1) + v(S+b2+b3), v(S+b2) + v(S+b1+b3)).
bool check_gross_substitutes(const Valuation& v, std::size_t guard = kDefaultValidatorGuard);

/// Sets differing from `a` by at most one added and one removed item,
/// excluding `a` itself, restricted to `universe`.
std::vector<ItemSet> local_sets(ItemSet a, ItemSet universe);

/// When `a` does not maximize utility over all items, returns
/// the best strictly improving set among local(a) (ties: lowest bitmask),
/// or nothing if no local set improves. Returns nothing when `a` is
/// demanded.
std::optional<ItemSet> check_local_improvement(const Valuation& v, const ItemPrices& p, ItemSet a,
                                               std::size_t guard = kDefaultValidatorGuard);

}  // namespace seqprice
