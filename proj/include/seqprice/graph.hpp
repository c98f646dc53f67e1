#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqprice/rational.hpp"

namespace seqprice {

/// Dense directed graph with optional Rational edge weights. No self loops.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(std::size_t n) : n_(n), w_(n * n) {}

  std::size_t size() const { return n_; }
  bool has_edge(std::size_t u, std::size_t v) const { return w_[u * n_ + v].has_value(); }
  const Rational& weight(std::size_t u, std::size_t v) const;
  const std::optional<Rational>& edge(std::size_t u, std::size_t v) const { return w_[u * n_ + v]; }
  void set(std::size_t u, std::size_t v, Rational w);
  void remove(std::size_t u, std::size_t v) { w_[u * n_ + v].reset(); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<Rational>> w_;
};

using Edge = std::pair<std::size_t, std::size_t>;
/// d[u][v]; empty when v is unreachable from u.
using DistanceMatrix = std::vector<std::vector<std::optional<Rational>>>;

/// Floyd–Warshall. d[u][u] starts at 0, so it only goes negative when u
/// lies on a negative cycle.
DistanceMatrix all_pairs_shortest_paths(const WeightedDigraph& g);

/// Vertices of a negative-weight cycle (in order, first vertex not
/// repeated), found with Bellman–Ford from a virtual source.
std::optional<std::vector<std::size_t>> detect_negative_cycle(const WeightedDigraph& g);

/// Sum of the edge weights along a closed vertex sequence.
Rational cycle_weight(const WeightedDigraph& g, const std::vector<std::size_t>& cycle);

/// Edges (u, v) with W(u, v) + d(v, u) = 0, i.e. edges on some zero-weight
/// cycle. Requires the graph to have no negative cycle (PreconditionError).
std::vector<Edge> mark_zero_cycle_edges(const WeightedDigraph& g);

/// Smallest strictly positive value of W(u, v) + d(v, u) over all edges,
/// which is the minimum weight of a positive cycle. Requires no negative
/// cycle (PreconditionError).
std::optional<Rational> min_positive_cycle_weight(const WeightedDigraph& g);

/// Smallest cycle weight (any sign) over all edges, or nothing when the
/// graph is acyclic. Requires no negative cycle.
std::optional<Rational> min_cycle_weight(const WeightedDigraph& g);

/// "u v w" per edge in (u, v) order, one per line.
std::string dump_edges(const WeightedDigraph& g, const std::vector<std::string>& labels);

}  // namespace seqprice
