#include "seqprice/validators.hpp"

#include "seqprice/demand.hpp"
#include "seqprice/errors.hpp"

namespace seqprice {

namespace {

std::vector<Rational> table_of(const Valuation& v, std::size_t guard) {
  if (v.item_count() > guard)
    throw CapacityError("valuation check over " + std::to_string(v.item_count()) + " items exceeds the guard of " +
                        std::to_string(guard));
  return std::get<ExplicitTable>(v.to_explicit().data()).table;
}

bool submodular_table(const std::vector<Rational>& t, std::size_t m) {
  const std::size_t n = std::size_t{1} << m;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t b = 0; b < m; ++b) {
      if ((s >> b) & 1U) continue;
      for (std::size_t c = b + 1; c < m; ++c) {
        if ((s >> c) & 1U) continue;
        const std::size_t sb = s | (std::size_t{1} << b);
        const std::size_t sc = s | (std::size_t{1} << c);
        if (t[sb] + t[sc] < t[sb | sc] + t[s]) return false;
      }
    }
  return true;
}

}  // namespace

bool check_monotone(const Valuation& v, std::size_t guard) {
  const auto t = table_of(v, guard);
  const auto m = v.item_count();
  for (std::size_t s = 0; s < t.size(); ++s)
    for (std::size_t i = 0; i < m; ++i)
      if (!((s >> i) & 1U) && t[s | (std::size_t{1} << i)] < t[s]) return false;
  return t[0].is_zero();
}

bool check_submodular(const Valuation& v, std::size_t guard) {
  return submodular_table(table_of(v, guard), v.item_count());
}

bool check_superadditive(const Valuation& v, std::size_t guard) {
  const auto t = table_of(v, guard);
  const std::size_t full = t.size() - 1;
  for (std::size_t a = 0; a < t.size(); ++a) {
    const std::size_t rest = full & ~a;
    // every subset b of the complement of a
    for (std::size_t b = rest;; b = (b - 1) & rest) {
      if (t[a | b] < t[a] + t[b]) return false;
      if (b == 0) break;
    }
  }
  return true;
}

bool check_gross_substitutes(const Valuation& v, std::size_t guard) {
  const auto t = table_of(v, guard);
  const auto m = v.item_count();
  if (!submodular_table(t, m)) return false;
  const std::size_t n = std::size_t{1} << m;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t b1 = 0; b1 < m; ++b1) {
      if ((s >> b1) & 1U) continue;
      for (std::size_t b2 = 0; b2 < m; ++b2) {
        if (b2 == b1 || ((s >> b2) & 1U)) continue;
        for (std::size_t b3 = 0; b3 < m; ++b3) {
          if (b3 == b1 || b3 == b2 || ((s >> b3) & 1U)) continue;
          const std::size_t x1 = std::size_t{1} << b1;
          const std::size_t x2 = std::size_t{1} << b2;
          const std::size_t x3 = std::size_t{1} << b3;
          const Rational lhs = t[s | x1 | x2] + t[s | x3];
          const Rational r1 = t[s | x1] + t[s | x2 | x3];
          const Rational r2 = t[s | x2] + t[s | x1 | x3];
          if (lhs > max(r1, r2)) return false;
        }
      }
    }
  return true;
}

std::vector<ItemSet> local_sets(ItemSet a, ItemSet universe) {
  std::vector<ItemSet> out;
  const ItemSet outside = universe - a;
  outside.for_each([&](std::size_t b) { out.push_back(a.with(b)); });
  a.for_each([&](std::size_t r) {
    out.push_back(a.without(r));
    outside.for_each([&](std::size_t b) { out.push_back(a.without(r).with(b)); });
  });
  return out;
}

std::optional<ItemSet> check_local_improvement(const Valuation& v, const ItemPrices& p, ItemSet a,
                                               std::size_t guard) {
  const ItemSet universe = ItemSet::first_n(v.item_count());
  const auto maxima = utility_maximizers(v, universe, p, guard);
  const Rational base = utility(v, a, p);
  if (base == utility(v, maxima.front(), p)) return std::nullopt;
  std::optional<ItemSet> best;
  Rational best_u;
  for (auto c : local_sets(a, universe)) {
    Rational u = utility(v, c, p);
    if (u <= base) continue;
    if (!best || u > best_u || (u == best_u && c < *best)) {
      best = c;
      best_u = std::move(u);
    }
  }
  return best;
}

}  // namespace seqprice
