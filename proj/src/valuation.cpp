#include "seqprice/valuation.hpp"

#include <algorithm>
#include <utility>

#include "seqprice/errors.hpp"
#include "seqprice/market.hpp"

namespace seqprice {

namespace {

void check_universe(std::size_t item_count) {
  if (item_count > kMaxItems) throw CapacityError("at most " + std::to_string(kMaxItems) + " items are supported");
}

void require_nonnegative(const Rational& r, const char* what) {
  if (r.sign() < 0) throw InputError(std::string(what) + " must be non-negative, got " + r.str());
}

}  // namespace

const char* kind_name(Valuation::Kind kind) {
  switch (kind) {
    case Valuation::Kind::UnitDemand: return "unit_demand";
    case Valuation::Kind::Explicit: return "explicit";
    case Valuation::Kind::KDemandItemDependent: return "k_demand_item_dependent";
    case Valuation::Kind::Coverage: return "coverage";
  }
  return "unknown";
}

Valuation Valuation::unit_demand(std::vector<Rational> per_item) {
  check_universe(per_item.size());
  for (const auto& v : per_item) require_nonnegative(v, "unit-demand value");
  const auto m = per_item.size();
  return Valuation(m, UnitDemand{std::move(per_item)});
}

Valuation Valuation::explicit_table(std::size_t item_count, std::vector<Rational> table) {
  check_universe(item_count);
  if (item_count > 20) throw CapacityError("explicit tables are limited to 20 items");
  if (table.size() != (std::size_t{1} << item_count))
    throw InputError("explicit table needs " + std::to_string(std::size_t{1} << item_count) + " entries, got " +
                     std::to_string(table.size()));
  if (!table[0].is_zero()) throw InputError("valuation is not normalized: v(empty) = " + table[0].str());
  for (std::size_t s = 0; s < table.size(); ++s) {
    require_nonnegative(table[s], "explicit value");
    for (std::size_t i = 0; i < item_count; ++i) {
      if ((s >> i) & 1U) continue;
      if (table[s | (std::size_t{1} << i)] < table[s])
        throw InputError("valuation is not monotone at subset mask " + std::to_string(s) + " plus item " +
                         std::to_string(i));
    }
  }
  return Valuation(item_count, ExplicitTable{std::move(table)});
}

Valuation Valuation::k_demand(std::size_t k, ItemSet interested, std::vector<Rational> weights) {
  check_universe(weights.size());
  if (k == 0) throw InputError("k-demand capacity must be positive");
  if (!interested.subset_of(ItemSet::first_n(weights.size())))
    throw InputError("k-demand interested set mentions an unknown item");
  for (const auto& w : weights) require_nonnegative(w, "item weight");
  const auto m = weights.size();
  return Valuation(m, KDemandItemDependent{k, interested, std::move(weights)});
}

Valuation Valuation::coverage(std::size_t item_count, std::vector<std::string> elements,
                              std::vector<Rational> element_weights, std::vector<std::uint64_t> covers) {
  check_universe(item_count);
  if (elements.size() != element_weights.size()) throw InputError("coverage: one weight per element required");
  if (elements.size() > 64) throw CapacityError("coverage valuations support at most 64 elements");
  if (covers.size() != item_count) throw InputError("coverage: one cover set per item required");
  for (const auto& w : element_weights) require_nonnegative(w, "element weight");
  const std::uint64_t known = elements.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << elements.size()) - 1);
  for (auto c : covers)
    if ((c & ~known) != 0) throw InputError("coverage: cover set mentions an unknown element");
  return Valuation(item_count, Coverage{std::move(elements), std::move(element_weights), std::move(covers)});
}

Valuation Valuation::additive(const std::vector<Rational>& per_item) {
  const auto m = per_item.size();
  if (m > 20) throw CapacityError("additive valuations are stored as tables of at most 20 items");
  for (const auto& v : per_item) require_nonnegative(v, "additive value");
  std::vector<Rational> table(std::size_t{1} << m);
  for (std::size_t s = 1; s < table.size(); ++s) {
    const auto low = static_cast<std::size_t>(std::countr_zero(s));
    table[s] = table[s & (s - 1)] + per_item[low];
  }
  return explicit_table(m, std::move(table));
}

Rational Valuation::value(ItemSet s) const {
  if (!s.subset_of(ItemSet::first_n(item_count_)))
    throw InputError("item set mentions an item outside the market");
  return value_unchecked(s);
}

Rational Valuation::value_unchecked(ItemSet s) const {
  struct Visitor {
    ItemSet s;
    Rational operator()(const UnitDemand& u) const {
      Rational best;
      s.for_each([&](std::size_t i) { best = max(best, u.values[i]); });
      return best;
    }
    Rational operator()(const ExplicitTable& t) const { return t.table[s.bits()]; }
    Rational operator()(const KDemandItemDependent& kd) const {
      std::vector<Rational> ws;
      (s & kd.interested).for_each([&](std::size_t i) { ws.push_back(kd.weights[i]); });
      std::sort(ws.begin(), ws.end(), [](const Rational& a, const Rational& b) { return b < a; });
      Rational total;
      for (std::size_t i = 0; i < ws.size() && i < kd.k; ++i) total += ws[i];
      return total;
    }
    Rational operator()(const Coverage& c) const {
      std::uint64_t covered = 0;
      s.for_each([&](std::size_t i) { covered |= c.covers[i]; });
      Rational total;
      for (std::size_t e = 0; e < c.element_weights.size(); ++e)
        if ((covered >> e) & 1U) total += c.element_weights[e];
      return total;
    }
  };
  return std::visit(Visitor{s}, data_);
}

Valuation Valuation::to_explicit() const {
  if (item_count_ > 20) throw CapacityError("cannot expand a valuation over more than 20 items");
  std::vector<Rational> table(std::size_t{1} << item_count_);
  for (std::size_t s = 0; s < table.size(); ++s) table[s] = value_unchecked(ItemSet(static_cast<std::uint32_t>(s)));
  return Valuation(item_count_, ExplicitTable{std::move(table)});
}

Valuation build_coverage_valuation(std::size_t item_count, const std::map<std::string, Rational>& weights,
                                   const std::vector<std::vector<std::string>>& covers) {
  std::vector<std::string> elements;
  std::vector<Rational> element_weights;
  std::map<std::string, std::size_t> index;
  for (const auto& [name, w] : weights) {
    index.emplace(name, elements.size());
    elements.push_back(name);
    element_weights.push_back(w);
  }
  if (covers.size() != item_count) throw InputError("coverage: one cover set per item required");
  std::vector<std::uint64_t> masks;
  for (const auto& cover : covers) {
    std::uint64_t mask = 0;
    for (const auto& e : cover) {
      auto it = index.find(e);
      if (it == index.end()) throw InputError("coverage: unknown element '" + e + "'");
      if (it->second >= 64) throw CapacityError("coverage valuations support at most 64 elements");
      mask |= std::uint64_t{1} << it->second;
    }
    masks.push_back(mask);
  }
  return Valuation::coverage(item_count, std::move(elements), std::move(element_weights), std::move(masks));
}

}  // namespace seqprice
