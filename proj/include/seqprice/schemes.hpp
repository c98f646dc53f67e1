#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqprice/demand.hpp"
#include "seqprice/graph.hpp"
#include "seqprice/matching.hpp"
#include "seqprice/price_graph.hpp"

namespace seqprice {

/// Where a sequential run stands before the next arrival.
struct RoundState {
  const Market* market = nullptr;
  ItemSet sold;
  AgentSet departed;
  Allocation allocation;
  std::size_t round = 0;
  /// Current bundles of the unsold items. Item schemes keep singletons;
  /// bundle schemes carry their own partition forward.
  std::vector<ItemSet> partition;

  static RoundState initial(const Market& m);
  ItemSet unsold() const { return market->all_items() - sold; }
  AgentSet remaining() const { return market->all_agents() - departed; }
};

/// Prices posted before one arrival: disjoint bundles of unsold items and
/// a price for each. Item pricing posts singleton bundles.
struct Offer {
  BundlePrices prices;
  bool item_pricing = true;
};

class PricingScheme {
 public:
  virtual ~PricingScheme() = default;
  virtual std::string name() const = 0;
  virtual bool is_dynamic() const = 0;
  virtual Offer post(const RoundState& state) const = 0;
};

// ---------------------------------------------------------------- matching

struct MatchingRound {
  std::vector<std::size_t> agents;  // remaining agents, bipartite order
  std::vector<std::size_t> items;   // unsold items, bipartite order
  WeightedBipartite bipartite;
  CompleteMatching matching;
  RelationGraph graph;
  PrunedGraph pruned;
  std::vector<Rational> vertex_prices;  // one per relation-graph vertex
  ItemPrices prices;                    // over the market's items; unsold ones set
};

/// One round of the dynamic matching scheme on the remaining agents and
/// unsold items. Requires unit-demand valuations (PreconditionError).
/// The posted prices are checked against the constraint system and an
/// InvariantViolation is raised if any constraint fails.
MatchingRound dynamic_matching_prices(const Market& m, AgentSet remaining, ItemSet unsold);

class DynamicMatchingScheme final : public PricingScheme {
 public:
  std::string name() const override { return "dynamic-matching"; }
  bool is_dynamic() const override { return true; }
  Offer post(const RoundState& state) const override;
};

// ------------------------------------------------------------ static item

class StaticItemPricing final : public PricingScheme {
 public:
  explicit StaticItemPricing(ItemPrices prices, std::string name = "static-items");
  std::string name() const override { return name_; }
  bool is_dynamic() const override { return false; }
  Offer post(const RoundState& state) const override;
  const ItemPrices& prices() const { return prices_; }

 private:
  ItemPrices prices_;
  std::string name_;
};

// ---------------------------------------------------------- static bundle

/// Fixed bundles and prices; bundles already sold are withdrawn.
class StaticBundlePricing final : public PricingScheme {
 public:
  explicit StaticBundlePricing(BundlePrices prices, std::string name = "static-bundles");
  std::string name() const override { return name_; }
  bool is_dynamic() const override { return false; }
  Offer post(const RoundState& state) const override;
  const BundlePrices& prices() const { return prices_; }

 private:
  BundlePrices prices_;
  std::string name_;
};

/// Each agent's designated bundle priced at half of that agent's value for
/// it. `partition` holds one bundle per agent; together they must be
/// disjoint and cover every item (InputError). Empty bundles are dropped.
BundlePrices static_half_bundle_prices(const Market& m, const std::vector<ItemSet>& partition);

/// The brute-force optimum with leftover items added to the first agent, so
/// that the bundles cover every item.
std::vector<ItemSet> covering_optimal_partition(const Market& m);

// ----------------------------------------------------------- GS + unique

/// Items plus one dummy item per agent. Vertices 0..m-1 are the real items,
/// m + i is agent i's dummy.
struct ExchangeGraph {
  std::size_t item_count = 0;
  std::size_t agent_count = 0;
  WeightedDigraph graph;
  std::vector<std::string> labels;
  std::vector<std::optional<std::size_t>> owner;  // per vertex
  std::vector<ItemSet> bundles;                   // B_i (real items only)

  std::size_t dummy(std::size_t agent) const { return item_count + agent; }
};

/// Exchange graph for the allocation `opt`: an edge from every vertex of
/// B'_i = B_i + d_i to every vertex outside B'_i, except dummy to dummy,
/// weighted v_i(B'_i) - v_i(B'_i - a + b). Raises InvariantViolation when a
/// cycle or a path into a dummy is not strictly positive.
ExchangeGraph build_exchange_graph(const Market& m, const Allocation& opt);

struct GsUniqueResult {
  Allocation optimum;
  ExchangeGraph exchange;
  std::optional<Rational> delta;  // minimum cycle weight
  std::optional<Rational> gamma;  // minimum path weight into a dummy
  Rational epsilon;
  std::vector<Rational> vertex_prices;
  ItemPrices prices;
};

/// Static item prices under which every agent's demand over all items is
/// exactly her optimal bundle. Requires a unique optimum and gross
/// substitutes valuations (PreconditionError).
GsUniqueResult gs_unique_static_prices(const Market& m);

// ------------------------------------------------------------------ SAPB

struct SapbResult {
  std::vector<ItemSet> bundles;  // B'_i per agent, possibly empty
  BundlePrices prices;           // nonempty bundles in agent order
  std::vector<std::optional<std::size_t>> bundle_of_agent;
  Rational delta;
  Rational epsilon;
  std::size_t iterations = 0;
  std::size_t merges = 0;  // drop in the number of nonempty bundles
  std::vector<Rational> welfare_history;  // live partition welfare, start and after each iteration
};

/// Collections x of bundles other than {own} (nonempty ones only unless
/// no such collection exists, then the empty collection), minimizing
/// u({own}) - u(x). `own` indexes into p.bundles.
Rational mdf(const Market& m, const BundlePrices& p, std::size_t own, std::size_t agent,
             std::size_t guard = kDefaultDemandGuard);

/// Largest utility-maximizing collection, lowest bitmask among equals.
IndexSet max_cardinality_demand(const Market& m, std::size_t agent, const BundlePrices& p,
                                std::size_t guard = kDefaultDemandGuard);

/// Bundling and static bundle prices for super-additive valuations.
/// `initial` holds one bundle per agent; bundles must be disjoint and cover
/// every item. Non super-additive input is a PreconditionError.
SapbResult sapb(const Market& m, const std::vector<ItemSet>& initial);

// --------------------------------------------------------------- k-demand

struct KDemandRound {
  std::vector<ItemSet> bundles;                    // new partition of the unsold items, sorted by bitmask
  std::vector<std::optional<std::size_t>> owner;   // designated agent per bundle
  std::vector<Rational> prices;
  std::vector<Edge> edges;      // relation graph over designated bundles (bundle indices)
  std::vector<Edge> dag_edges;  // edges left after removing those on cycles
  std::vector<std::size_t> rank;  // per bundle, 1-based; 0 for undesignated bundles
  Rational epsilon;
  bool tight = true;  // every designated bundle is fully valued by its agent
  Offer offer() const;
};

/// One round of the k-demand item-dependent bundle pricing. `current`
/// lists the bundles of the unsold items. Valuations must all be
/// k-demand item-dependent over one shared weight function (InputError)
/// with positive weights (PreconditionError).
KDemandRound kdemand_round(const Market& m, AgentSet remaining, const std::vector<ItemSet>& current);

class KDemandScheme final : public PricingScheme {
 public:
  std::string name() const override { return "kdemand"; }
  bool is_dynamic() const override { return true; }
  Offer post(const RoundState& state) const override;
};

/// Weight sum of the bundle under the shared weight function.
Rational bundle_weight(const Market& m, ItemSet s);

// ---------------------------------------------------------------- factory

/// dynamic-matching, static-half, gs-unique, sapb, kdemand, static-items.
const std::vector<std::string>& scheme_names();

/// Builds a scheme by name for this market. Static schemes compute their
/// prices here. static-items needs `prices`; an unknown name or missing
/// prices is an InputError.
std::unique_ptr<PricingScheme> make_scheme(const std::string& name, const Market& m,
                                           const std::optional<ItemPrices>& prices = std::nullopt);

}  // namespace seqprice
