#pragma once

// Slow, direct reimplementations used to cross-check the library. They
// only share the Rational type and the Market container with the code
// under test; every value, demand and optimum is recomputed from the raw
// valuation data.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqprice/market.hpp"

namespace oracle {

using seqprice::Rational;
using Table = std::vector<Rational>;  // indexed by item bitmask
using Mask = std::uint32_t;

inline int popcount(Mask s) { return __builtin_popcount(s); }

// ------------------------------------------------------------ valuations

inline Table unit_demand_table(const std::vector<Rational>& values) {
  const std::size_t m = values.size();
  Table t(std::size_t{1} << m);
  for (Mask s = 0; s < t.size(); ++s) {
    Rational best(0);
    for (std::size_t b = 0; b < m; ++b)
      if ((s >> b) & 1U) best = std::max(best, values[b]);
    t[s] = best;
  }
  return t;
}

inline Table additive_table(const std::vector<Rational>& values) {
  const std::size_t m = values.size();
  Table t(std::size_t{1} << m);
  for (Mask s = 0; s < t.size(); ++s)
    for (std::size_t b = 0; b < m; ++b)
      if ((s >> b) & 1U) t[s] += values[b];
  return t;
}

// Best sum of at most k weights among the interesting items of S, found by
// enumerating subsets.
inline Table k_demand_table(std::size_t k, Mask interested, const std::vector<Rational>& w) {
  const std::size_t m = w.size();
  Table t(std::size_t{1} << m);
  for (Mask s = 0; s < t.size(); ++s) {
    Rational best(0);
    for (Mask x = 0; x < t.size(); ++x) {
      if ((x & ~(s & interested)) != 0 || static_cast<std::size_t>(popcount(x)) > k) continue;
      Rational sum(0);
      for (std::size_t b = 0; b < m; ++b)
        if ((x >> b) & 1U) sum += w[b];
      best = std::max(best, sum);
    }
    t[s] = best;
  }
  return t;
}

inline Table coverage_table(const std::vector<Rational>& element_weights, const std::vector<std::uint64_t>& covers) {
  const std::size_t m = covers.size();
  Table t(std::size_t{1} << m);
  for (Mask s = 0; s < t.size(); ++s) {
    std::uint64_t covered = 0;
    for (std::size_t b = 0; b < m; ++b)
      if ((s >> b) & 1U) covered |= covers[b];
    for (std::size_t e = 0; e < element_weights.size(); ++e)
      if ((covered >> e) & 1U) t[s] += element_weights[e];
  }
  return t;
}

// Tables straight from each agent's raw valuation data.
inline std::vector<Table> tables(const seqprice::Market& mk) {
  std::vector<Table> out;
  for (const auto& a : mk.agents()) {
    const auto& data = a.valuation.data();
    if (auto* u = std::get_if<seqprice::UnitDemand>(&data)) out.push_back(unit_demand_table(u->values));
    else if (auto* e = std::get_if<seqprice::ExplicitTable>(&data)) out.push_back(e->table);
    else if (auto* k = std::get_if<seqprice::KDemandItemDependent>(&data))
      out.push_back(k_demand_table(k->k, k->interested.bits(), k->weights));
    else if (auto* c = std::get_if<seqprice::Coverage>(&data))
      out.push_back(coverage_table(c->element_weights, c->covers));
  }
  return out;
}

// ----------------------------------------------------------------- demand

inline Rational price_of(const std::vector<Rational>& p, Mask s) {
  Rational sum(0);
  for (std::size_t b = 0; b < p.size(); ++b)
    if ((s >> b) & 1U) sum += p[b];
  return sum;
}

// Every utility-maximizing subset of `available`.
inline std::vector<Mask> full_argmax(const Table& v, Mask available, const std::vector<Rational>& p) {
  std::vector<Mask> best;
  std::optional<Rational> top;
  for (Mask s = 0; s <= available; ++s) {
    if ((s & ~available) != 0) continue;
    const Rational u = v[s] - price_of(p, s);
    if (!top || u > *top) {
      top = u;
      best = {s};
    } else if (u == *top) {
      best.push_back(s);
    }
  }
  return best;
}

// Maximizers in which every item strictly adds value.
inline std::vector<Mask> lean_argmax(const Table& v, Mask available, const std::vector<Rational>& p) {
  std::vector<Mask> out;
  for (Mask s : full_argmax(v, available, p)) {
    bool lean = true;
    for (std::size_t b = 0; b < 32; ++b)
      if (((s >> b) & 1U) && !(v[s] > v[s & ~(Mask{1} << b)])) lean = false;
    if (lean) out.push_back(s);
  }
  return out;
}

struct BundleOffer {
  std::vector<Mask> bundles;
  std::vector<Rational> prices;
};

inline Mask union_of(const BundleOffer& o, Mask collection) {
  Mask s = 0;
  for (std::size_t j = 0; j < o.bundles.size(); ++j)
    if ((collection >> j) & 1U) s |= o.bundles[j];
  return s;
}

// Utility-maximizing collections of offered bundles in which every bundle
// strictly adds value, returned as item sets.
inline std::vector<Mask> lean_collections(const Table& v, const BundleOffer& o) {
  const Mask all = (Mask{1} << o.bundles.size()) - 1;
  std::optional<Rational> top;
  std::vector<Mask> best;
  for (Mask x = 0; x <= all; ++x) {
    Rational u = v[union_of(o, x)];
    for (std::size_t j = 0; j < o.bundles.size(); ++j)
      if ((x >> j) & 1U) u -= o.prices[j];
    if (!top || u > *top) {
      top = u;
      best = {x};
    } else if (u == *top) {
      best.push_back(x);
    }
  }
  std::vector<Mask> out;
  for (Mask x : best) {
    bool lean = true;
    for (std::size_t j = 0; j < o.bundles.size(); ++j)
      if (((x >> j) & 1U) && !(v[union_of(o, x)] > v[union_of(o, x & ~(Mask{1} << j))])) lean = false;
    if (lean) out.push_back(union_of(o, x));
  }
  return out;
}

// ---------------------------------------------------------------- optimum

// Best welfare from handing out subsets of `free` to agents k.. (recursive
// over agents, each taking any subset of what is left).
inline Rational best_welfare(const std::vector<Table>& t, std::size_t k, Mask free) {
  if (k == t.size()) return Rational(0);
  Rational best = best_welfare(t, k + 1, free);
  for (Mask s = free; s != 0; s = (s - 1) & free) best = std::max(best, t[k][s] + best_welfare(t, k + 1, free & ~s));
  return best;
}

inline Rational optimum(const seqprice::Market& mk) {
  return best_welfare(tables(mk), 0, (Mask{1} << mk.item_count()) - 1);
}

// Number of allocations attaining the optimum.
inline std::size_t optimum_count(const std::vector<Table>& t, std::size_t k, Mask free, const Rational& target,
                                 const Rational& acc) {
  if (k == t.size()) return acc == target ? 1 : 0;
  std::size_t n = optimum_count(t, k + 1, free, target, acc);
  for (Mask s = free; s != 0; s = (s - 1) & free) n += optimum_count(t, k + 1, free & ~s, target, acc + t[k][s]);
  return n;
}

// Maximum-weight matching by trying every assignment of agents to distinct
// items or to nothing.
inline Rational max_matching(const std::vector<std::vector<Rational>>& w) {
  const std::size_t n = w.size();
  const std::size_t m = n == 0 ? 0 : w[0].size();
  std::function<Rational(std::size_t, Mask)> go = [&](std::size_t a, Mask used) -> Rational {
    if (a == n) return Rational(0);
    Rational best = go(a + 1, used);
    for (std::size_t b = 0; b < m; ++b)
      if (!((used >> b) & 1U)) best = std::max(best, w[a][b] + go(a + 1, used | (Mask{1} << b)));
    return best;
  };
  return go(0, 0);
}

// ------------------------------------------------------------------ graphs

using Weights = std::vector<std::vector<std::optional<Rational>>>;

// Weight of every simple cycle, each listed once (from its smallest vertex).
inline std::vector<Rational> simple_cycles(const Weights& g) {
  const std::size_t n = g.size();
  std::vector<Rational> out;
  std::vector<bool> on(n, false);
  std::function<void(std::size_t, std::size_t, Rational)> dfs = [&](std::size_t start, std::size_t u, Rational acc) {
    for (std::size_t v = start; v < n; ++v) {
      if (!g[u][v]) continue;
      if (v == start) {
        out.push_back(acc + *g[u][v]);
      } else if (!on[v]) {
        on[v] = true;
        dfs(start, v, acc + *g[u][v]);
        on[v] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on[s] = true;
    dfs(s, s, Rational(0));
    on[s] = false;
  }
  return out;
}

// Shortest simple-path weight from u to v (0 for u == v).
inline std::optional<Rational> shortest_simple(const Weights& g, std::size_t u, std::size_t v) {
  if (u == v) return Rational(0);
  const std::size_t n = g.size();
  std::optional<Rational> best;
  std::vector<bool> on(n, false);
  std::function<void(std::size_t, Rational)> dfs = [&](std::size_t x, Rational acc) {
    if (x == v) {
      if (!best || acc < *best) best = acc;
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (!g[x][y] || on[y]) continue;
      on[y] = true;
      dfs(y, acc + *g[x][y]);
      on[y] = false;
    }
  };
  on[u] = true;
  dfs(u, Rational(0));
  return best;
}

// ----------------------------------------------------------- simulation

struct SimState {
  Mask sold = 0;
  Mask departed = 0;
  std::vector<Mask> partition;  // carried by bundle schemes
  std::vector<Mask> allocation;
};

using OfferFn = std::function<BundleOffer(const SimState&)>;

// Worst final welfare over every arrival order and every lean demanded
// choice; the agent's purchase is the union of her chosen bundles.
inline Rational worst_welfare(const std::vector<Table>& t, std::size_t items, const OfferFn& offer_fn) {
  const std::size_t n = t.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::optional<Rational> worst;
  std::function<void(SimState&, std::size_t)> go = [&](SimState& s, std::size_t k) {
    if (k == n) {
      Rational w(0);
      for (std::size_t a = 0; a < n; ++a) w += t[a][s.allocation[a]];
      if (!worst || w < *worst) worst = w;
      return;
    }
    const std::size_t agent = order[k];
    const BundleOffer o = offer_fn(s);
    for (Mask chosen : lean_collections(t[agent], o)) {
      SimState next = s;
      next.sold |= chosen;
      next.departed |= Mask{1} << agent;
      next.allocation[agent] = chosen;
      next.partition.clear();
      for (Mask b : o.bundles)
        if ((b & chosen) == 0) next.partition.push_back(b);
      go(next, k + 1);
    }
  };
  do {
    SimState s;
    s.allocation.assign(n, 0);
    for (std::size_t b = 0; b < items; ++b) s.partition.push_back(Mask{1} << b);
    go(s, 0);
  } while (std::next_permutation(order.begin(), order.end()));
  return worst.value_or(Rational(0));
}

inline OfferFn static_items(std::vector<Rational> p) {
  return [p](const SimState& s) {
    BundleOffer o;
    for (std::size_t b = 0; b < p.size(); ++b)
      if (!((s.sold >> b) & 1U)) {
        o.bundles.push_back(Mask{1} << b);
        o.prices.push_back(p[b]);
      }
    return o;
  };
}

inline OfferFn static_bundles(std::vector<Mask> bundles, std::vector<Rational> prices) {
  return [bundles, prices](const SimState& s) {
    BundleOffer o;
    for (std::size_t j = 0; j < bundles.size(); ++j)
      if ((bundles[j] & s.sold) == 0) {
        o.bundles.push_back(bundles[j]);
        o.prices.push_back(prices[j]);
      }
    return o;
  };
}

// ------------------------------------------------------------ generators

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline seqprice::Market random_unit_demand(Rng& rng, std::size_t n, std::size_t m, int max_value) {
  std::vector<seqprice::Agent> agents;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v;
    for (std::size_t b = 0; b < m; ++b) v.emplace_back(uniform(rng, 0, max_value));
    agents.push_back({"agent" + std::to_string(i), seqprice::Valuation::unit_demand(v)});
  }
  return seqprice::Market(names("i", m), std::move(agents));
}

// Monotone table: each set is worth at least each of its subsets plus a
// random increment.
inline Table random_monotone_table(Rng& rng, std::size_t m, int max_step) {
  Table t(std::size_t{1} << m);
  for (Mask s = 1; s < t.size(); ++s) {
    Rational base(0);
    for (std::size_t b = 0; b < m; ++b)
      if ((s >> b) & 1U) base = std::max(base, t[s & ~(Mask{1} << b)]);
    t[s] = base + Rational(uniform(rng, 0, max_step));
  }
  return t;
}

// Superadditive closure of a random monotone table.
inline Table random_superadditive_table(Rng& rng, std::size_t m, int max_step) {
  Table t = random_monotone_table(rng, m, max_step);
  std::vector<Mask> order;
  for (Mask s = 1; s < t.size(); ++s) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  for (Mask s : order) {
    for (Mask a = (s - 1) & s; a != 0; a = (a - 1) & s) t[s] = std::max(t[s], t[a] + t[s & ~a]);
    for (std::size_t b = 0; b < m; ++b)
      if ((s >> b) & 1U) t[s] = std::max(t[s], t[s & ~(Mask{1} << b)]);
  }
  return t;
}

inline seqprice::Market explicit_market(const std::vector<Table>& tables, std::size_t m) {
  std::vector<seqprice::Agent> agents;
  for (std::size_t i = 0; i < tables.size(); ++i)
    agents.push_back({"agent" + std::to_string(i), seqprice::Valuation::explicit_table(m, tables[i])});
  return seqprice::Market(names("i", m), std::move(agents));
}

}  // namespace oracle
