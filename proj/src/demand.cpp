#include "seqprice/demand.hpp"

#include "seqprice/errors.hpp"

namespace seqprice {

Rational value(const Valuation& v, ItemSet s) { return v.value(s); }

Rational marginal(const Valuation& v, ItemSet a, ItemSet b) { return v.value(a | b) - v.value(b); }

Rational utility(const Valuation& v, ItemSet s, const ItemPrices& p) { return v.value(s) - p.total(s); }

Rational utility(const Valuation& v, IndexSet collection, const BundlePrices& p) {
  return v.value(p.items_of(collection)) - p.total(collection);
}

namespace {

void check_guard(IndexSet available, std::size_t guard, const char* what) {
  if (available.size() > guard)
    throw CapacityError("demand enumeration over " + std::to_string(available.size()) + " " + what +
                        " exceeds the guard of " + std::to_string(guard));
}

// All subsets of `available` maximizing value_of(items(s)) - price_of(s).
template <class ItemsFn, class ValueFn, class PriceFn>
std::vector<IndexSet> maximizers(IndexSet available, ItemsFn&& items, ValueFn&& value_of, PriceFn&& price_of) {
  std::vector<IndexSet> best;
  Rational best_u;
  available.for_each_subset([&](IndexSet s) {
    Rational u = value_of(items(s)) - price_of(s);
    if (best.empty() || u > best_u) {
      best_u = std::move(u);
      best.assign(1, s);
    } else if (u == best_u) {
      best.push_back(s);
    }
  });
  return best;
}

// Keeps the sets in which removing any single part lowers the value.
template <class ItemsFn, class ValueFn>
std::vector<IndexSet> drop_padded(const std::vector<IndexSet>& sets, ItemsFn&& items, ValueFn&& value_of) {
  std::vector<IndexSet> out;
  for (auto s : sets) {
    const Rational full = value_of(items(s));
    bool padded = false;
    s.for_each([&](std::size_t part) {
      if (!padded && value_of(items(s.without(part))) == full) padded = true;
    });
    if (!padded) out.push_back(s);
  }
  return out;
}

template <class ValueFn>
std::vector<ItemSet> item_maximizers(ValueFn&& value_of, ItemSet available, const ItemPrices& p,
                                     std::size_t guard) {
  check_guard(available, guard, "items");
  available.for_each([&](std::size_t i) { (void)p.at(i); });
  return maximizers(
      available, [](ItemSet s) { return s; }, value_of, [&](ItemSet s) { return p.total(s); });
}

template <class ValueFn>
std::vector<IndexSet> collection_maximizers(ValueFn&& value_of, const BundlePrices& p, IndexSet available,
                                            std::size_t guard) {
  check_guard(available, guard, "bundles");
  if (!available.subset_of(IndexSet::first_n(p.bundles.size()))) throw InputError("unknown bundle index");
  return maximizers(
      available, [&](IndexSet c) { return p.items_of(c); }, value_of, [&](IndexSet c) { return p.total(c); });
}

}  // namespace

std::vector<ItemSet> utility_maximizers(const Valuation& v, ItemSet available, const ItemPrices& p,
                                        std::size_t guard) {
  return item_maximizers([&](ItemSet s) { return v.value(s); }, available, p, guard);
}

std::vector<ItemSet> demand_sets(const Valuation& v, ItemSet available, const ItemPrices& p, std::size_t guard) {
  auto value_of = [&](ItemSet s) { return v.value(s); };
  return drop_padded(item_maximizers(value_of, available, p, guard), [](ItemSet s) { return s; }, value_of);
}

std::vector<ItemSet> demand_sets(const Market& m, std::size_t agent, ItemSet available, const ItemPrices& p,
                                 std::size_t guard) {
  auto value_of = [&](ItemSet s) { return m.value(agent, s); };
  return drop_padded(item_maximizers(value_of, available, p, guard), [](ItemSet s) { return s; }, value_of);
}

std::vector<IndexSet> demand_collections(const Valuation& v, const BundlePrices& p, IndexSet available,
                                         std::size_t guard) {
  auto value_of = [&](ItemSet s) { return v.value(s); };
  return drop_padded(collection_maximizers(value_of, p, available, guard),
                     [&](IndexSet c) { return p.items_of(c); }, value_of);
}

std::vector<IndexSet> demand_collections(const Market& m, std::size_t agent, const BundlePrices& p,
                                         IndexSet available, std::size_t guard) {
  auto value_of = [&](ItemSet s) { return m.value(agent, s); };
  return drop_padded(collection_maximizers(value_of, p, available, guard),
                     [&](IndexSet c) { return p.items_of(c); }, value_of);
}

std::vector<IndexSet> maximizing_collections(const Market& m, std::size_t agent, const BundlePrices& p,
                                             IndexSet available, std::size_t guard) {
  return collection_maximizers([&](ItemSet s) { return m.value(agent, s); }, p, available, guard);
}

Rational max_utility(const Valuation& v, const BundlePrices& p, IndexSet available, std::size_t guard) {
  const auto d = collection_maximizers([&](ItemSet s) { return v.value(s); }, p, available, guard);
  return utility(v, d.front(), p);
}

Rational welfare(const Market& m, const Allocation& x) {
  x.validate(m);
  Rational total;
  for (std::size_t i = 0; i < x.bundles.size(); ++i) total += m.value(i, x.bundles[i]);
  return total;
}

}  // namespace seqprice
