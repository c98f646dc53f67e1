#include "seqprice/errors.hpp"
#include "seqprice/schemes.hpp"
#include "seqprice/validators.hpp"

namespace seqprice {

ExchangeGraph build_exchange_graph(const Market& m, const Allocation& opt) {
  opt.validate(m);
  ExchangeGraph g;
  g.item_count = m.item_count();
  g.agent_count = m.agent_count();
  g.bundles = opt.bundles;
  const std::size_t n = g.item_count + g.agent_count;
  g.graph = WeightedDigraph(n);
  g.owner.assign(n, std::nullopt);
  for (std::size_t b = 0; b < g.item_count; ++b) g.labels.push_back(m.items()[b]);
  for (std::size_t i = 0; i < g.agent_count; ++i) {
    g.labels.push_back("~" + m.agents()[i].name);
    g.owner[g.dummy(i)] = i;
    opt.bundles[i].for_each([&](std::size_t b) { g.owner[b] = i; });
  }

  for (std::size_t u = 0; u < n; ++u) {
    if (!g.owner[u]) continue;
    const std::size_t i = *g.owner[u];
    const ItemSet own = opt.bundles[i];
    const Rational base = m.value(i, own);
    // B'_i - u, restricted to real items
    const ItemSet without_u = u < g.item_count ? own.without(u) : own;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || (g.owner[v] && *g.owner[v] == i)) continue;
      const bool u_dummy = u >= g.item_count;
      const bool v_dummy = v >= g.item_count;
      if (u_dummy && v_dummy) continue;
      const ItemSet swapped = v_dummy ? without_u : without_u.with(v);
      g.graph.set(u, v, base - m.value(i, swapped));
    }
  }

  if (auto cycle = detect_negative_cycle(g.graph))
    throw InvariantViolation("exchange graph has a negative cycle");
  if (auto c = min_cycle_weight(g.graph); c && c->sign() <= 0)
    throw InvariantViolation("exchange graph has a cycle of weight " + c->str() + " (optimum not unique or not GS)");
  const auto d = all_pairs_shortest_paths(g.graph);
  for (std::size_t i = 0; i < g.agent_count; ++i)
    for (std::size_t u = 0; u < n; ++u)
      if (u != g.dummy(i) && d[u][g.dummy(i)] && d[u][g.dummy(i)]->sign() <= 0)
        throw InvariantViolation("path " + g.labels[u] + " -> " + g.labels[g.dummy(i)] + " has weight " +
                                 d[u][g.dummy(i)]->str() + " (optimum not unique or not GS)");
  return g;
}

GsUniqueResult gs_unique_static_prices(const Market& m) {
  for (std::size_t i = 0; i < m.agent_count(); ++i)
    if (!check_gross_substitutes(m.valuation(i)))
      throw PreconditionError("valuation of agent '" + m.agents()[i].name + "' is not gross substitutes");
  auto unique = check_unique_optimum(m);
  if (!unique) throw PreconditionError("the optimal allocation is not unique");

  GsUniqueResult r;
  r.optimum = *unique;
  r.exchange = build_exchange_graph(m, r.optimum);
  const auto& g = r.exchange.graph;
  const std::size_t n = g.size();

  r.delta = min_cycle_weight(g);
  const auto d = all_pairs_shortest_paths(g);
  for (std::size_t i = 0; i < r.exchange.agent_count; ++i)
    for (std::size_t u = 0; u < n; ++u) {
      const auto& dist = d[u][r.exchange.dummy(i)];
      if (u != r.exchange.dummy(i) && dist && (!r.gamma || *dist < *r.gamma)) r.gamma = *dist;
    }
  Rational bound(1);
  if (r.delta && r.gamma)
    bound = min(*r.delta, *r.gamma);
  else if (r.delta)
    bound = *r.delta;
  else if (r.gamma)
    bound = *r.gamma;
  r.epsilon = bound / Rational(static_cast<std::int64_t>(n) + 1);

  WeightedDigraph lowered = g;
  for (const auto& [u, v] : lowered.edges()) lowered.set(u, v, lowered.weight(u, v) - r.epsilon);
  r.vertex_prices = find_prices(lowered);

  for (std::size_t i = 0; i < r.exchange.agent_count; ++i)
    if (!r.vertex_prices[r.exchange.dummy(i)].is_zero())
      throw InvariantViolation("dummy item of agent '" + m.agents()[i].name + "' has a nonzero price");
  r.prices = ItemPrices(m.item_count());
  for (std::size_t b = 0; b < m.item_count(); ++b) r.prices.set(b, r.vertex_prices[b]);
  for (std::size_t i = 0; i < m.agent_count(); ++i) {
    const auto demand = utility_maximizers(m.valuation(i), m.all_items(), r.prices);
    if (demand.size() != 1 || demand.front() != r.optimum.bundles[i])
      throw InvariantViolation("agent '" + m.agents()[i].name + "' does not uniquely demand her optimal bundle");
  }
  return r;
}

}  // namespace seqprice
