#include <algorithm>

#include "seqprice/errors.hpp"
#include "seqprice/schemes.hpp"

namespace seqprice {

namespace {

const std::vector<Rational>* shared_weights(const Market& m) {
  const std::vector<Rational>* w = nullptr;
  for (const auto& a : m.agents()) {
    const auto* kd = std::get_if<KDemandItemDependent>(&a.valuation.data());
    if (!kd) throw InputError("agent '" + a.name + "' is not k-demand item-dependent");
    if (w && *w != kd->weights) throw InputError("k-demand agents do not share one weight function");
    w = &kd->weights;
  }
  return w;
}

}  // namespace

Rational bundle_weight(const Market& m, ItemSet s) {
  const auto* w = shared_weights(m);
  Rational total;
  if (w) s.for_each([&](std::size_t b) { total += (*w)[b]; });
  return total;
}

KDemandRound kdemand_round(const Market& m, AgentSet remaining, const std::vector<ItemSet>& current) {
  const auto* w = shared_weights(m);
  ItemSet seen;
  for (auto b : current) {
    if (b.empty() || !b.disjoint(seen) || !b.subset_of(m.all_items()))
      throw InputError("k-demand bundles must be nonempty, disjoint and within the market");
    seen = seen | b;
  }
  KDemandRound r;
  Rational min_weight(1);
  if (w)
    for (const auto& x : *w) {
      if (x.sign() <= 0) throw PreconditionError("k-demand pricing needs positive item weights");
      min_weight = min(min_weight, x);
    }
  r.epsilon = min_weight / Rational(2);

  auto weight = [&](ItemSet s) {
    Rational t;
    if (w) s.for_each([&](std::size_t b) { t += (*w)[b]; });
    return t;
  };

  // optimal assignment of current bundles to remaining agents
  const auto agents = remaining.indices();
  const std::size_t nb = current.size();
  const std::size_t na = agents.size();
  std::size_t combos = 1;
  for (std::size_t j = 0; j < nb; ++j) {
    combos *= na + 1;
    if (combos > 2'000'000) throw CapacityError("k-demand bundle assignment search exceeds its guard");
  }
  std::vector<std::size_t> owner(nb, 0), best_owner;
  std::optional<Rational> best_welfare, best_weight;
  while (true) {
    std::vector<ItemSet> held(na);
    for (std::size_t j = 0; j < nb; ++j)
      if (owner[j] < na) held[owner[j]] = held[owner[j]] | current[j];
    Rational welfare, assigned;
    for (std::size_t a = 0; a < na; ++a) {
      welfare += m.value(agents[a], held[a]);
      assigned += weight(held[a]);
    }
    if (!best_welfare || welfare > *best_welfare || (welfare == *best_welfare && assigned < *best_weight)) {
      best_welfare = welfare;
      best_weight = assigned;
      best_owner = owner;
    }
    std::size_t pos = nb;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++owner[pos] <= na) {
        done = false;
        break;
      }
      owner[pos] = 0;
    }
    if (done) break;
  }

  // merge each agent's bundles; unassigned bundles stay as they are
  std::vector<std::pair<ItemSet, std::optional<std::size_t>>> next;
  std::vector<ItemSet> merged(na);
  for (std::size_t j = 0; j < nb; ++j) {
    if (best_owner[j] < na)
      merged[best_owner[j]] = merged[best_owner[j]] | current[j];
    else
      next.emplace_back(current[j], std::nullopt);
  }
  for (std::size_t a = 0; a < na; ++a)
    if (!merged[a].empty()) next.emplace_back(merged[a], agents[a]);
  std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [b, o] : next) {
    r.bundles.push_back(b);
    r.owner.push_back(o);
  }

  // relation graph over designated bundles
  const std::size_t n = r.bundles.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.owner[i]) continue;
    if (m.value(*r.owner[i], r.bundles[i]) != weight(r.bundles[i])) r.tight = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !r.owner[j]) continue;
      if (m.value(*r.owner[j], r.bundles[j]) == m.value(*r.owner[i], r.bundles[j])) {
        adj[i][j] = true;
        r.edges.emplace_back(i, j);
      }
    }
  }
  auto reach = adj;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::vector<std::vector<bool>> dag(n, std::vector<bool>(n, false));
  for (const auto& [i, j] : r.edges)
    if (!reach[j][i]) {
      dag[i][j] = true;
      r.dag_edges.emplace_back(i, j);
    }

  // Kahn's algorithm, smallest bundle index first
  r.rank.assign(n, 0);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [i, j] : r.dag_edges) ++indegree[j];
  std::vector<bool> placed(n, false);
  std::size_t next_rank = 1;
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < n && !pick; ++v)
      if (r.owner[v] && !placed[v] && indegree[v] == 0) pick = v;
    if (!pick) break;
    placed[*pick] = true;
    r.rank[*pick] = next_rank++;
    for (std::size_t j = 0; j < n; ++j)
      if (dag[*pick][j]) --indegree[j];
  }
  for (std::size_t v = 0; v < n; ++v)
    if (r.owner[v] && !placed[v]) throw InvariantViolation("k-demand relation graph is not acyclic after pruning");

  for (std::size_t v = 0; v < n; ++v) {
    if (r.owner[v])
      r.prices.push_back(weight(r.bundles[v]) - r.epsilon.pow(static_cast<unsigned>(r.rank[v])));
    else
      r.prices.push_back(weight(r.bundles[v]) + r.epsilon);
  }
  return r;
}

Offer KDemandRound::offer() const {
  Offer o;
  o.item_pricing = false;
  o.prices.bundles = bundles;
  o.prices.prices = prices;
  return o;
}

Offer KDemandScheme::post(const RoundState& state) const {
  return kdemand_round(*state.market, state.remaining(), state.partition).offer();
}

}  // namespace seqprice
