#include "seqprice/graph.hpp"

#include <algorithm>
#include <sstream>

#include "seqprice/errors.hpp"

namespace seqprice {

const Rational& WeightedDigraph::weight(std::size_t u, std::size_t v) const {
  const auto& e = w_.at(u * n_ + v);
  if (!e) throw InvariantViolation("no edge " + std::to_string(u) + " -> " + std::to_string(v));
  return *e;
}

void WeightedDigraph::set(std::size_t u, std::size_t v, Rational w) {
  if (u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self loops are not allowed");
  w_[u * n_ + v] = std::move(w);
}

std::vector<Edge> WeightedDigraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::size_t WeightedDigraph::edge_count() const {
  return static_cast<std::size_t>(std::count_if(w_.begin(), w_.end(), [](const auto& e) { return e.has_value(); }));
}

DistanceMatrix all_pairs_shortest_paths(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  DistanceMatrix d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = Rational(0);
    for (std::size_t v = 0; v < n; ++v)
      if (g.has_edge(u, v)) d[u][v] = g.weight(u, v);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Rational via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = std::move(via);
      }
    }
  return d;
}

std::optional<std::vector<std::size_t>> detect_negative_cycle(const WeightedDigraph& g) {
  const std::size_t n = g.size();
  std::vector<Rational> dist(n);
  std::vector<std::optional<std::size_t>> pred(n);
  const auto edges = g.edges();
  std::optional<std::size_t> last;
  for (std::size_t round = 0; round < n; ++round) {
    last.reset();
    for (const auto& [u, v] : edges) {
      Rational via = dist[u] + g.weight(u, v);
      if (via < dist[v]) {
        dist[v] = std::move(via);
        pred[v] = u;
        last = v;
      }
    }
    if (!last) return std::nullopt;
  }
  // a vertex relaxed in round n; walking back n steps lands on the cycle
  std::size_t x = *last;
  for (std::size_t i = 0; i < n; ++i) x = *pred[x];
  std::vector<std::size_t> cycle;
  std::size_t y = x;
  do {
    cycle.push_back(y);
    y = *pred[y];
  } while (y != x);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

Rational cycle_weight(const WeightedDigraph& g, const std::vector<std::size_t>& cycle) {
  Rational total;
  for (std::size_t i = 0; i < cycle.size(); ++i) total += g.weight(cycle[i], cycle[(i + 1) % cycle.size()]);
  return total;
}

namespace {

// W(u, v) + d(v, u) for every edge whose return path exists.
template <class F>
void for_each_closed_edge(const WeightedDigraph& g, F&& f) {
  const auto d = all_pairs_shortest_paths(g);
  for (std::size_t u = 0; u < g.size(); ++u)
    if (d[u][u]->sign() < 0) throw PreconditionError("graph has a negative cycle");
  for (const auto& [u, v] : g.edges())
    if (d[v][u]) f(Edge{u, v}, g.weight(u, v) + *d[v][u]);
}

}  // namespace

std::vector<Edge> mark_zero_cycle_edges(const WeightedDigraph& g) {
  std::vector<Edge> out;
  for_each_closed_edge(g, [&](Edge e, const Rational& c) {
    if (c.is_zero()) out.push_back(e);
  });
  return out;
}

std::optional<Rational> min_positive_cycle_weight(const WeightedDigraph& g) {
  std::optional<Rational> best;
  for_each_closed_edge(g, [&](Edge, const Rational& c) {
    if (c.sign() > 0 && (!best || c < *best)) best = c;
  });
  return best;
}

std::optional<Rational> min_cycle_weight(const WeightedDigraph& g) {
  std::optional<Rational> best;
  for_each_closed_edge(g, [&](Edge, const Rational& c) {
    if (!best || c < *best) best = c;
  });
  return best;
}

std::string dump_edges(const WeightedDigraph& g, const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (const auto& [u, v] : g.edges()) os << labels.at(u) << ' ' << labels.at(v) << ' ' << g.weight(u, v) << '\n';
  return os.str();
}

}  // namespace seqprice
