#include "seqprice/errors.hpp"
#include "seqprice/schemes.hpp"
#include "seqprice/validators.hpp"

namespace seqprice {

void check_bundle_partition(const Market& m, const std::vector<ItemSet>& partition, const char* what);

IndexSet max_cardinality_demand(const Market& m, std::size_t agent, const BundlePrices& p, std::size_t guard) {
  const auto demand = maximizing_collections(m, agent, p, IndexSet::first_n(p.bundles.size()), guard);
  IndexSet best = demand.front();
  for (auto c : demand)
    if (c.size() > best.size()) best = c;
  return best;
}

namespace {

// Min over nonempty collections x other than {own} (own may be absent) of
// u(reference) - u(x), where u(reference) is u({own}) or 0.
std::optional<Rational> min_gap(const Market& m, const BundlePrices& p, std::optional<std::size_t> own,
                                std::size_t agent, std::size_t guard) {
  const IndexSet all = IndexSet::first_n(p.bundles.size());
  if (all.size() > guard) throw CapacityError("bundle collection enumeration exceeds the guard");
  const Rational reference = own ? utility(m.valuation(agent), IndexSet::singleton(*own), p) : Rational(0);
  std::optional<Rational> best;
  all.for_each_subset([&](IndexSet x) {
    if (x.empty() || (own && x == IndexSet::singleton(*own))) return;
    Rational gap = reference - (m.value(agent, p.items_of(x)) - p.total(x));
    if (!best || gap < *best) best = std::move(gap);
  });
  return best;
}

}  // namespace

Rational mdf(const Market& m, const BundlePrices& p, std::size_t own, std::size_t agent, std::size_t guard) {
  if (own >= p.bundles.size()) throw InputError("unknown bundle index");
  if (auto gap = min_gap(m, p, own, agent, guard)) return *gap;
  return utility(m.valuation(agent), IndexSet::singleton(own), p);
}

namespace {

struct Live {
  BundlePrices prices;
  std::vector<std::optional<std::size_t>> bundle_of_agent;
};

// Nonempty bundles in agent order, priced at their owner's value.
Live live_prices(const Market& m, const std::vector<ItemSet>& bundles, const Rational& reduction) {
  Live l;
  l.bundle_of_agent.assign(bundles.size(), std::nullopt);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].empty()) continue;
    l.bundle_of_agent[i] = l.prices.bundles.size();
    l.prices.bundles.push_back(bundles[i]);
    l.prices.prices.push_back(m.value(i, bundles[i]) - reduction);
  }
  return l;
}

Rational partition_welfare(const Market& m, const std::vector<ItemSet>& bundles) {
  Rational w;
  for (std::size_t i = 0; i < bundles.size(); ++i) w += m.value(i, bundles[i]);
  return w;
}

std::size_t nonempty_count(const std::vector<ItemSet>& bundles) {
  std::size_t c = 0;
  for (auto b : bundles) c += b.empty() ? 0 : 1;
  return c;
}

}  // namespace

SapbResult sapb(const Market& m, const std::vector<ItemSet>& initial) {
  check_bundle_partition(m, initial, "SAPB");
  for (std::size_t i = 0; i < m.agent_count(); ++i)
    if (!check_superadditive(m.valuation(i)))
      throw PreconditionError("valuation of agent '" + m.agents()[i].name + "' is not super-additive");

  SapbResult r;
  r.bundles = initial;
  r.welfare_history.push_back(partition_welfare(m, r.bundles));
  const std::size_t start_count = nonempty_count(r.bundles);
  // Every iteration either merges bundles or strictly raises welfare, so
  // the loop ends; the cap only guards against a broken oracle.
  const std::size_t cap = 1000 + 10 * m.agent_count() * m.item_count();

  while (true) {
    const Live live = live_prices(m, r.bundles, Rational(0));
    std::optional<std::size_t> mover;
    IndexSet chosen;
    for (std::size_t i = 0; i < m.agent_count() && !mover; ++i) {
      const IndexSet x = max_cardinality_demand(m, i, live.prices);
      const auto own = live.bundle_of_agent[i];
      if (own) {
        if (!x.contains(*own))
          throw InvariantViolation("demanded collection of agent '" + m.agents()[i].name + "' drops her own bundle");
        if (x == IndexSet::singleton(*own)) continue;
      } else {
        if (x.empty()) continue;
        // an agent without a bundle takes over a single bundle only at a
        // strict gain; at a zero gain two such agents would trade forever
        if (x.size() == 1 && utility(m.valuation(i), x, live.prices).sign() <= 0) continue;
      }
      mover = i;
      chosen = x;
    }
    if (!mover) break;
    if (++r.iterations > cap) throw InvariantViolation("SAPB did not terminate");
    ItemSet merged;
    chosen.for_each([&](std::size_t j) { merged = merged | live.prices.bundles[j]; });
    for (std::size_t j = 0; j < m.agent_count(); ++j)
      if (live.bundle_of_agent[j] && chosen.contains(*live.bundle_of_agent[j])) r.bundles[j] = ItemSet();
    r.bundles[*mover] = merged;
    r.welfare_history.push_back(partition_welfare(m, r.bundles));
  }
  r.merges = start_count - nonempty_count(r.bundles);

  const Live live = live_prices(m, r.bundles, Rational(0));
  std::optional<Rational> delta;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < m.agent_count(); ++i) {
    const auto gap = min_gap(m, live.prices, live.bundle_of_agent[i], i, kDefaultDemandGuard);
    if (gap && (!delta || *gap < *delta)) {
      delta = *gap;
      argmin = i;
    }
  }
  if (!delta) {
    // nobody has an alternative: a single bundle, or none at all
    for (std::size_t j = 0; j < live.prices.prices.size(); ++j)
      if (live.prices.prices[j].sign() > 0 && (!delta || live.prices.prices[j] < *delta)) delta = live.prices.prices[j];
    if (!delta) delta = Rational(1);
  } else if (delta->sign() <= 0) {
    if (!live.bundle_of_agent[argmin])
      throw PreconditionError("agent '" + m.agents()[argmin].name +
                              "' is indifferent between nothing and bundles held by others; "
                              "no bundle price can make the final bundling strict");
    throw InvariantViolation("SAPB ended with a non-positive demand gap " + delta->str());
  }
  r.delta = *delta;
  r.epsilon = r.delta / Rational(static_cast<std::int64_t>(std::max<std::size_t>(m.agent_count(), 1)));
  const Live final_live = live_prices(m, r.bundles, r.epsilon);
  for (const auto& p : final_live.prices.prices)
    if (p.sign() < 0) throw PreconditionError("a final bundle price is negative (bundle worth less than epsilon)");
  r.prices = final_live.prices;
  r.bundle_of_agent = final_live.bundle_of_agent;
  return r;
}

}  // namespace seqprice
