#include "seqprice/errors.hpp"
#include "seqprice/schemes.hpp"

namespace seqprice {

RoundState RoundState::initial(const Market& m) {
  RoundState s;
  s.market = &m;
  s.allocation = Allocation::empty(m.agent_count());
  m.all_items().for_each([&](std::size_t b) { s.partition.push_back(ItemSet::singleton(b)); });
  return s;
}

MatchingRound dynamic_matching_prices(const Market& m, AgentSet remaining, ItemSet unsold) {
  if (!m.all_of_kind(Valuation::Kind::UnitDemand))
    throw PreconditionError("dynamic matching pricing needs unit-demand valuations");
  MatchingRound r;
  r.agents = remaining.indices();
  r.items = unsold.indices();
  r.bipartite = WeightedBipartite::from_market(m, r.agents, r.items);
  r.matching = item_complete_matching(r.bipartite);

  std::vector<std::string> item_labels, agent_labels;
  for (auto b : r.items) item_labels.push_back(m.items()[b]);
  for (auto a : r.agents) agent_labels.push_back(m.agents()[a].name);
  r.graph = build_relation_graph(r.bipartite, r.matching, item_labels, agent_labels);
  r.pruned = prune_relation_graph(r.graph);
  r.vertex_prices = find_prices(r.pruned.graph);
  if (auto verdict = verify_constraints(r.graph, r.pruned, r.vertex_prices); !verdict)
    throw InvariantViolation("dynamic matching prices violate constraint (" + std::to_string(verdict.constraint) +
                             "): " + verdict.detail);

  r.prices = ItemPrices(m.item_count());
  for (std::size_t v = 0; v < r.graph.vertices.size(); ++v)
    if (const auto& item = r.graph.vertices[v].item) r.prices.set(r.items[*item], r.vertex_prices[v]);
  return r;
}

Offer DynamicMatchingScheme::post(const RoundState& state) const {
  const auto r = dynamic_matching_prices(*state.market, state.remaining(), state.unsold());
  Offer o;
  state.unsold().for_each([&](std::size_t b) {
    o.prices.bundles.push_back(ItemSet::singleton(b));
    o.prices.prices.push_back(r.prices.at(b));
  });
  return o;
}

StaticItemPricing::StaticItemPricing(ItemPrices prices, std::string name)
    : prices_(std::move(prices)), name_(std::move(name)) {
  if (!prices_.nonnegative()) throw InputError("static item prices must be non-negative");
}

Offer StaticItemPricing::post(const RoundState& state) const {
  Offer o;
  state.unsold().for_each([&](std::size_t b) {
    o.prices.bundles.push_back(ItemSet::singleton(b));
    o.prices.prices.push_back(prices_.at(b));
  });
  return o;
}

StaticBundlePricing::StaticBundlePricing(BundlePrices prices, std::string name)
    : prices_(std::move(prices)), name_(std::move(name)) {
  prices_.validate();
}

Offer StaticBundlePricing::post(const RoundState& state) const {
  Offer o;
  o.item_pricing = false;
  const ItemSet unsold = state.unsold();
  for (std::size_t j = 0; j < prices_.bundles.size(); ++j) {
    if (!prices_.bundles[j].subset_of(unsold)) continue;
    o.prices.bundles.push_back(prices_.bundles[j]);
    o.prices.prices.push_back(prices_.prices[j]);
  }
  return o;
}

namespace {

void check_partition(const Market& m, const std::vector<ItemSet>& partition, const char* what) {
  if (partition.size() != m.agent_count())
    throw InputError(std::string(what) + ": one bundle per agent required");
  ItemSet seen;
  for (auto b : partition) {
    if (!b.subset_of(m.all_items())) throw InputError(std::string(what) + ": bundle mentions an unknown item");
    if (!b.disjoint(seen)) throw InputError(std::string(what) + ": bundles overlap");
    seen = seen | b;
  }
  if (m.agent_count() > 0 && seen != m.all_items())
    throw InputError(std::string(what) + ": bundles do not cover every item");
}

}  // namespace

BundlePrices static_half_bundle_prices(const Market& m, const std::vector<ItemSet>& partition) {
  check_partition(m, partition, "half-value pricing");
  BundlePrices out;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].empty()) continue;
    out.bundles.push_back(partition[i]);
    out.prices.push_back(m.value(i, partition[i]) / Rational(2));
  }
  return out;
}

std::vector<ItemSet> covering_optimal_partition(const Market& m) {
  auto opt = brute_force_optimum(m);
  if (m.agent_count() > 0) {
    const ItemSet leftover = m.all_items() - opt.allocation.allocated();
    opt.allocation.bundles[0] = opt.allocation.bundles[0] | leftover;
  }
  return opt.allocation.bundles;
}

// shared with the SAPB translation unit
void check_bundle_partition(const Market& m, const std::vector<ItemSet>& partition, const char* what) {
  check_partition(m, partition, what);
}

}  // namespace seqprice
