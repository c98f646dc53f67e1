#include "seqprice/simulator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "seqprice/errors.hpp"

namespace seqprice {

namespace {

using StateKey = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>;

struct CachedRound {
  std::shared_ptr<const Offer> offer;
  std::vector<std::optional<std::vector<IndexSet>>> demand;  // per agent, collections
};

class Explorer {
 public:
  Explorer(const Market& m, const PricingScheme& scheme, const TieBreakPolicy& policy,
           const SimulationOptions& options, SimulationResult& result)
      : m_(m), scheme_(scheme), policy_(policy), options_(options), result_(result) {}

  void run(const std::vector<std::size_t>& order) {
    order_ = &order;
    RoundState s = RoundState::initial(m_);
    path_.clear();
    visit(s, 0);
  }

 private:
  CachedRound& cached(const RoundState& s) {
    std::vector<std::uint32_t> parts;
    for (auto b : s.partition) parts.push_back(b.bits());
    StateKey key{s.sold.bits(), s.departed.bits(), std::move(parts)};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CachedRound c;
    auto offer = std::make_shared<Offer>(scheme_.post(s));
    offer->prices.validate();
    if (!offer->prices.covered().subset_of(s.unsold())) throw InvariantViolation("scheme offered sold items");
    c.offer = std::move(offer);
    c.demand.resize(m_.agent_count());
    return cache_.emplace(std::move(key), std::move(c)).first->second;
  }

  void visit(const RoundState& s, std::size_t k) {
    if (k == order_->size()) {
      leaf(s);
      return;
    }
    if (++result_.nodes > options_.node_guard)
      throw CapacityError("simulation exceeded the node guard of " + std::to_string(options_.node_guard));
    const std::size_t agent = (*order_)[k];
    CachedRound& c = cached(s);
    const auto offer = c.offer;
    const BundlePrices& bp = offer->prices;
    if (!c.demand[agent])
      c.demand[agent] =
          demand_collections(m_, agent, bp, IndexSet::first_n(bp.bundles.size()), options_.demand_guard);
    const std::vector<IndexSet> demand = *c.demand[agent];

    std::vector<ItemSet> demand_items;
    for (auto x : demand) demand_items.push_back(bp.items_of(x));

    std::vector<std::size_t> picks;
    switch (policy_.kind) {
      case TieBreakPolicy::Kind::Adversarial:
        picks.resize(demand.size());
        std::iota(picks.begin(), picks.end(), std::size_t{0});
        break;
      case TieBreakPolicy::Kind::FirstLexicographic:
        picks.push_back(0);
        break;
      case TieBreakPolicy::Kind::Scripted: {
        if (k >= policy_.script.size())
          throw InputError("tie-break script has no choice for round " + std::to_string(k + 1));
        const ItemSet want = policy_.script[k];
        auto it = std::find(demand_items.begin(), demand_items.end(), want);
        if (it == demand_items.end())
          throw InputError("scripted choice " + m_.format(want) + " for agent '" + m_.agents()[agent].name +
                           "' in round " + std::to_string(k + 1) + " is not in her demand correspondence");
        picks.push_back(static_cast<std::size_t>(it - demand_items.begin()));
        break;
      }
    }

    for (auto pick : picks) {
      const IndexSet x = demand[pick];
      RoundRecord rec{agent, offer, demand_items, demand_items[pick], bp.total(x)};
      RoundState next = s;
      next.sold = s.sold | rec.chosen;
      next.departed = s.departed.with(agent);
      next.allocation.bundles[agent] = rec.chosen;
      next.round = s.round + 1;
      next.partition.clear();
      for (std::size_t j = 0; j < bp.bundles.size(); ++j)
        if (!x.contains(j)) next.partition.push_back(bp.bundles[j]);
      path_.push_back(rec);
      if (options_.on_round) options_.on_round(RoundEvent{s, next, path_.back()});
      visit(next, k + 1);
      path_.pop_back();
    }
  }

  void leaf(const RoundState& s) {
    Rational w = welfare(m_, s.allocation);
    const bool keep = result_.traces.size() < options_.max_traces;
    const bool worse = result_.trace_count == 0 || w < result_.worst_welfare;
    ++result_.trace_count;
    if (!keep && !worse && !options_.on_leaf) return;
    Trace t{*order_, path_, s.allocation, w};
    if (options_.on_leaf) options_.on_leaf(t);
    if (worse) {
      result_.worst_welfare = w;
      result_.worst = t;
    }
    if (keep) result_.traces.push_back(std::move(t));
  }

  const Market& m_;
  const PricingScheme& scheme_;
  const TieBreakPolicy& policy_;
  const SimulationOptions& options_;
  SimulationResult& result_;
  const std::vector<std::size_t>* order_ = nullptr;
  std::vector<RoundRecord> path_;
  std::map<StateKey, CachedRound> cache_;
};

void check_order(const Market& m, const std::vector<std::size_t>& order) {
  std::vector<bool> seen(m.agent_count(), false);
  if (order.size() != m.agent_count()) throw InputError("arrival order must list every agent exactly once");
  for (auto a : order) {
    if (a >= m.agent_count() || seen[a]) throw InputError("arrival order must list every agent exactly once");
    seen[a] = true;
  }
}

}  // namespace

SimulationResult run_order(const Market& m, const PricingScheme& scheme, const std::vector<std::size_t>& order,
                           const TieBreakPolicy& policy, const SimulationOptions& options) {
  check_order(m, order);
  SimulationResult result;
  Explorer ex(m, scheme, policy, options, result);
  ex.run(order);
  return result;
}

SimulationResult run_all_orders(const Market& m, const PricingScheme& scheme, const TieBreakPolicy& policy,
                                const SimulationOptions& options) {
  std::vector<std::size_t> order(m.agent_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SimulationResult result;
  Explorer ex(m, scheme, policy, options, result);
  do {
    ex.run(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

SimulationResult adversarial_worst(const Market& m, const PricingScheme& scheme, SimulationOptions options) {
  options.max_traces = 0;
  return run_all_orders(m, scheme, TieBreakPolicy::adversarial(), options);
}

std::optional<std::string> walrasian_violation(const Market& m, const Allocation& x, const ItemPrices& p) {
  x.validate(m);
  for (std::size_t b = 0; b < m.item_count(); ++b)
    if (!p.has(b)) return "item '" + m.items()[b] + "' has no price";
  const ItemSet unallocated = m.all_items() - x.allocated();
  for (auto b : unallocated.indices())
    if (!p.at(b).is_zero())
      return "item '" + m.items()[b] + "' is unallocated but priced " + p.at(b).str();
  for (std::size_t i = 0; i < m.agent_count(); ++i) {
    const auto best = utility_maximizers(m.valuation(i), m.all_items(), p);
    const Rational top = utility(m.valuation(i), best.front(), p);
    const Rational own = utility(m.valuation(i), x.bundles[i], p);
    if (own != top)
      return "agent '" + m.agents()[i].name + "' gets utility " + own.str() + " from " + m.format(x.bundles[i]) +
             " but " + top.str() + " from " + m.format(best.front());
  }
  return std::nullopt;
}

bool walrasian_check(const Market& m, const Allocation& x, const ItemPrices& p) {
  return !walrasian_violation(m, x, p).has_value();
}

}  // namespace seqprice
