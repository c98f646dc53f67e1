#include "seqprice/matching.hpp"

#include <algorithm>

#include "seqprice/demand.hpp"
#include "seqprice/errors.hpp"

namespace seqprice {

WeightedBipartite::WeightedBipartite(std::size_t a, std::size_t i) : agents(a), items(i), weights(a * i) {}

void WeightedBipartite::set(std::size_t agent, std::size_t item, Rational w) {
  if (agent >= agents || item >= items) throw InputError("bipartite index out of range");
  if (w.sign() < 0) throw InputError("bipartite weights must be non-negative");
  weights[agent * items + item] = std::move(w);
}

WeightedBipartite WeightedBipartite::from_market(const Market& m, const std::vector<std::size_t>& agents,
                                                 const std::vector<std::size_t>& items) {
  WeightedBipartite g(agents.size(), items.size());
  for (std::size_t a = 0; a < agents.size(); ++a)
    for (std::size_t b = 0; b < items.size(); ++b) g.set(a, b, m.value(agents[a], ItemSet::singleton(items[b])));
  return g;
}

namespace {

// Square assignment maximizing total weight. Returns col_of_row.
// Potentials method with O(n^3) steps; "infinity" is tracked with optional.
std::vector<std::size_t> hungarian_max(const std::vector<std::vector<Rational>>& w) {
  const std::size_t n = w.size();
  if (n == 0) return {};
  // minimize cost = -w; 1-based arrays with a virtual column 0
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[p[j] - 1] = j - 1;
  return col_of_row;
}

std::vector<std::vector<Rational>> padded(const WeightedBipartite& g) {
  const std::size_t n = std::max(g.agents, g.items);
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < g.agents; ++a)
    for (std::size_t b = 0; b < g.items; ++b) w[a][b] = g.weight(a, b);
  return w;
}

}  // namespace

Matching max_weight_matching(const WeightedBipartite& g) {
  const auto assign = hungarian_max(padded(g));
  Matching out;
  for (std::size_t a = 0; a < g.agents; ++a) {
    const auto b = assign[a];
    if (b < g.items && g.weight(a, b).sign() > 0) {
      out.pairs.emplace_back(a, b);
      out.weight += g.weight(a, b);
    }
  }
  return out;
}

CompleteMatching item_complete_matching(const WeightedBipartite& g) {
  const auto assign = hungarian_max(padded(g));
  CompleteMatching out;
  out.owner_of_item.assign(g.items, std::nullopt);
  out.item_of_agent.assign(g.agents, std::nullopt);
  for (std::size_t a = 0; a < g.agents; ++a) {
    const auto b = assign[a];
    if (b < g.items) {
      out.owner_of_item[b] = a;
      out.item_of_agent[a] = b;
      out.weight += g.weight(a, b);
    }
  }
  return out;
}

namespace {

void check_guard(const Market& m, std::size_t max_agents, std::size_t max_items) {
  if (m.agent_count() > max_agents || m.item_count() > max_items)
    throw CapacityError("brute-force optimum limited to " + std::to_string(max_agents) + " agents and " +
                        std::to_string(max_items) + " items");
}

// Visits every owner vector (value agent_count means unallocated).
template <class F>
void for_each_assignment(const Market& m, F&& f) {
  const std::size_t n = m.agent_count();
  const std::size_t k = m.item_count();
  std::vector<std::size_t> owner(k, 0);
  while (true) {
    Allocation x = Allocation::empty(n);
    for (std::size_t b = 0; b < k; ++b)
      if (owner[b] < n) x.bundles[owner[b]] = x.bundles[owner[b]].with(b);
    f(x);
    // increment with item k-1 least significant
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++owner[pos] <= n) break;
      owner[pos] = 0;
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

Optimum brute_force_optimum(const Market& m, std::size_t max_agents, std::size_t max_items) {
  check_guard(m, max_agents, max_items);
  std::optional<Optimum> best;
  for_each_assignment(m, [&](const Allocation& x) {
    Rational w = welfare(m, x);
    if (!best || w > best->welfare) best = Optimum{x, std::move(w)};
  });
  return *best;
}

std::optional<Allocation> check_unique_optimum(const Market& m, std::size_t max_agents, std::size_t max_items) {
  check_guard(m, max_agents, max_items);
  std::optional<Optimum> best;
  std::size_t ties = 0;
  for_each_assignment(m, [&](const Allocation& x) {
    Rational w = welfare(m, x);
    if (!best || w > best->welfare) {
      best = Optimum{x, std::move(w)};
      ties = 1;
    } else if (w == best->welfare) {
      ++ties;
    }
  });
  if (ties != 1) return std::nullopt;
  return best->allocation;
}

}  // namespace seqprice
