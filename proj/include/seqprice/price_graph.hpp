#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seqprice/graph.hpp"
#include "seqprice/matching.hpp"

namespace seqprice {

/// A relation-graph vertex: a real unsold item, or the dummy item held by
/// an agent that the padded matching left without a real item.
struct RelationVertex {
  std::optional<std::size_t> item;   // index into the bipartite item side; empty for a dummy item
  std::optional<std::size_t> owner;  // bipartite agent index; empty for a dummy agent
  Rational matched_value;            // v_{>t}: the owner's value for this vertex
  std::string label;
};

/// Clique over the vertices with W(b, b') = v_a(b) - v_a(b'), a = owner(b).
/// Dummy agents value everything at 0, and every agent values a dummy
/// item at 0.
struct RelationGraph {
  std::vector<RelationVertex> vertices;
  WeightedDigraph graph;

  std::vector<std::string> labels() const;
};

/// Builds the relation graph for an item-complete matching. A negative
/// cycle means the matching was not of maximum weight (InvariantViolation).
/// Item and agent labels default to their indices.
RelationGraph build_relation_graph(const WeightedBipartite& g, const CompleteMatching& m,
                                   const std::vector<std::string>& item_labels = {},
                                   const std::vector<std::string>& agent_labels = {});

struct PrunedGraph {
  WeightedDigraph graph;     // surviving edges with weights reduced by epsilon
  std::vector<Edge> removed;  // zero-cycle edges
  Rational delta;
  Rational epsilon;
};

/// Removes every zero-cycle edge and lowers the remaining weights by
/// epsilon = delta / (vertex count + 1). Delta is the smallest positive
/// cycle weight; without a positive cycle it falls back to the smallest
/// positive matched value, and to 1 if there is none.
PrunedGraph prune_relation_graph(const RelationGraph& rg);

/// Prune with a caller-chosen epsilon (> 0).
PrunedGraph prune_with_epsilon(const RelationGraph& rg, const Rational& epsilon);

/// Starting from p = 0, for every source b and every b' reachable from it,
/// p(b') <- max(p(b'), -d(b, b')). Every cycle of g must be strictly
/// positive (PreconditionError otherwise). One price per vertex.
std::vector<Rational> find_prices(const WeightedDigraph& g);

struct ConstraintVerdict {
  bool ok = true;
  int constraint = 0;  // 1: p >= 0, 2: edge inequality, 3: price below matched value
  std::string detail;

  explicit operator bool() const { return ok; }
};

/// Checks p(b) >= 0; p(b1) - p(b2) < W(b1, b2) for every edge surviving
/// the pruning (original weights); p(b) < v_{>t}(b) whenever v_{>t}(b) > 0.
/// Reports the first violation.
ConstraintVerdict verify_constraints(const RelationGraph& rg, const PrunedGraph& pruned,
                                     const std::vector<Rational>& p);

}  // namespace seqprice
