#include "seqprice/price_graph.hpp"

#include <algorithm>

#include "seqprice/errors.hpp"

namespace seqprice {

std::vector<std::string> RelationGraph::labels() const {
  std::vector<std::string> out;
  for (const auto& v : vertices) out.push_back(v.label);
  return out;
}

RelationGraph build_relation_graph(const WeightedBipartite& g, const CompleteMatching& m,
                                   const std::vector<std::string>& item_labels,
                                   const std::vector<std::string>& agent_labels) {
  auto item_label = [&](std::size_t b) { return b < item_labels.size() ? item_labels[b] : std::to_string(b); };
  auto agent_label = [&](std::size_t a) {
    return a < agent_labels.size() ? agent_labels[a] : "agent" + std::to_string(a);
  };
  if (m.owner_of_item.size() != g.items || m.item_of_agent.size() != g.agents)
    throw InputError("matching does not fit the bipartite graph");

  RelationGraph rg;
  for (std::size_t b = 0; b < g.items; ++b) {
    RelationVertex v{b, m.owner_of_item[b], Rational(0), item_label(b)};
    if (v.owner) v.matched_value = g.weight(*v.owner, b);
    rg.vertices.push_back(std::move(v));
  }
  for (std::size_t a = 0; a < g.agents; ++a)
    if (!m.item_of_agent[a]) rg.vertices.push_back(RelationVertex{std::nullopt, a, Rational(0), "~" + agent_label(a)});

  // owner's value for a vertex
  auto value = [&](const std::optional<std::size_t>& owner, const RelationVertex& target) {
    if (!owner || !target.item) return Rational(0);
    return g.weight(*owner, *target.item);
  };
  const std::size_t n = rg.vertices.size();
  rg.graph = WeightedDigraph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const auto& owner = rg.vertices[u].owner;
      rg.graph.set(u, v, value(owner, rg.vertices[u]) - value(owner, rg.vertices[v]));
    }
  if (auto cycle = detect_negative_cycle(rg.graph)) {
    std::string names;
    for (auto x : *cycle) names += " " + rg.vertices[x].label;
    throw InvariantViolation("relation graph has a negative cycle (matching is not maximum):" + names);
  }
  return rg;
}

PrunedGraph prune_with_epsilon(const RelationGraph& rg, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw PreconditionError("epsilon must be positive");
  PrunedGraph out;
  out.epsilon = epsilon;
  out.removed = mark_zero_cycle_edges(rg.graph);
  out.graph = rg.graph;
  for (const auto& [u, v] : out.removed) out.graph.remove(u, v);
  for (const auto& [u, v] : out.graph.edges()) out.graph.set(u, v, out.graph.weight(u, v) - epsilon);
  return out;
}

PrunedGraph prune_relation_graph(const RelationGraph& rg) {
  std::optional<Rational> delta = min_positive_cycle_weight(rg.graph);
  if (!delta) {
    for (const auto& v : rg.vertices)
      if (v.matched_value.sign() > 0 && (!delta || v.matched_value < *delta)) delta = v.matched_value;
  }
  if (!delta) delta = Rational(1);
  const Rational epsilon = *delta / Rational(static_cast<std::int64_t>(rg.vertices.size()) + 1);
  PrunedGraph out = prune_with_epsilon(rg, epsilon);
  out.delta = *delta;
  return out;
}

std::vector<Rational> find_prices(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  const auto d = all_pairs_shortest_paths(g);
  for (const auto& [u, v] : g.edges())
    if (d[v][u] && (g.weight(u, v) + *d[v][u]).sign() <= 0)
      throw PreconditionError("find_prices needs every cycle to be strictly positive");
  std::vector<Rational> p(n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t b2 = 0; b2 < n; ++b2)
      if (d[b][b2]) p[b2] = max(p[b2], -*d[b][b2]);
  return p;
}

ConstraintVerdict verify_constraints(const RelationGraph& rg, const PrunedGraph& pruned,
                                     const std::vector<Rational>& p) {
  const std::size_t n = rg.vertices.size();
  if (p.size() != n) return {false, 1, "price vector has the wrong length"};
  for (std::size_t b = 0; b < n; ++b)
    if (p[b].sign() < 0) return {false, 1, "p(" + rg.vertices[b].label + ") = " + p[b].str() + " < 0"};
  for (const auto& [u, v] : pruned.graph.edges()) {
    const Rational& w = rg.graph.weight(u, v);
    if (!(p[u] - p[v] < w))
      return {false, 2,
              "p(" + rg.vertices[u].label + ") - p(" + rg.vertices[v].label + ") = " + (p[u] - p[v]).str() +
                  " is not below W = " + w.str()};
  }
  for (std::size_t b = 0; b < n; ++b) {
    const auto& v = rg.vertices[b];
    if (v.matched_value.sign() > 0 && !(p[b] < v.matched_value))
      return {false, 3, "p(" + v.label + ") = " + p[b].str() + " is not below v = " + v.matched_value.str()};
  }
  return {};
}

}  // namespace seqprice
