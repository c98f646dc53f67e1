#include "seqprice/market.hpp"

#include <set>

#include "seqprice/errors.hpp"

namespace seqprice {

namespace {
constexpr std::size_t kTableCacheItems = 16;
}

Market::Market(std::vector<std::string> items, std::vector<Agent> agents)
    : items_(std::move(items)), agents_(std::move(agents)) {
  if (items_.size() > kMaxItems) throw CapacityError("at most " + std::to_string(kMaxItems) + " items are supported");
  if (agents_.size() > kMaxAgents)
    throw CapacityError("at most " + std::to_string(kMaxAgents) + " agents are supported");
  std::set<std::string> seen;
  for (const auto& it : items_) {
    if (it.empty()) throw InputError("empty item identifier");
    if (!seen.insert(it).second) throw InputError("duplicate item identifier '" + it + "'");
  }
  seen.clear();
  for (const auto& a : agents_) {
    if (a.name.empty()) throw InputError("empty agent identifier");
    if (!seen.insert(a.name).second) throw InputError("duplicate agent identifier '" + a.name + "'");
    if (a.valuation.item_count() != items_.size())
      throw InputError("valuation of agent '" + a.name + "' is defined over " +
                       std::to_string(a.valuation.item_count()) + " items, market has " +
                       std::to_string(items_.size()));
  }
  if (items_.size() <= kTableCacheItems) {
    auto tables = std::make_shared<std::vector<std::vector<Rational>>>();
    const std::size_t n = std::size_t{1} << items_.size();
    for (const auto& a : agents_) {
      std::vector<Rational> t(n);
      for (std::size_t s = 0; s < n; ++s) t[s] = a.valuation.value(ItemSet(static_cast<std::uint32_t>(s)));
      tables->push_back(std::move(t));
    }
    tables_ = std::move(tables);
  }
}

std::size_t Market::item_index(std::string_view name) const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i] == name) return i;
  throw InputError("unknown item '" + std::string(name) + "'");
}

std::size_t Market::agent_index(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i].name == name) return i;
  throw InputError("unknown agent '" + std::string(name) + "'");
}

ItemSet Market::item_set(const std::vector<std::string>& names) const {
  ItemSet s;
  for (const auto& n : names) s = s.with(item_index(n));
  return s;
}

std::vector<std::string> Market::item_names(ItemSet s) const {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(items_.at(i)); });
  return out;
}

std::string Market::format(ItemSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ",";
    out += items_.at(i);
    first = false;
  });
  return out + "}";
}

Rational Market::value(std::size_t agent, ItemSet s) const {
  if (agent >= agents_.size()) throw InputError("unknown agent index " + std::to_string(agent));
  if (tables_ && s.subset_of(all_items())) return (*tables_)[agent][s.bits()];
  return agents_[agent].valuation.value(s);
}

bool Market::all_of_kind(Valuation::Kind kind) const {
  for (const auto& a : agents_)
    if (a.valuation.kind() != kind) return false;
  return true;
}

ItemPrices::ItemPrices(const std::vector<Rational>& all) {
  prices_.reserve(all.size());
  for (const auto& p : all) prices_.emplace_back(p);
}

void ItemPrices::set(std::size_t item, Rational price) {
  if (item >= prices_.size()) throw InputError("price for unknown item index " + std::to_string(item));
  prices_[item] = std::move(price);
}

const Rational& ItemPrices::at(std::size_t item) const {
  if (!has(item)) throw InputError("item " + std::to_string(item) + " has no price");
  return *prices_[item];
}

Rational ItemPrices::total(ItemSet s) const {
  Rational t;
  s.for_each([&](std::size_t i) { t += at(i); });
  return t;
}

bool ItemPrices::nonnegative() const {
  for (const auto& p : prices_)
    if (p && p->sign() < 0) return false;
  return true;
}

void BundlePrices::validate() const {
  if (bundles.size() != prices.size()) throw InputError("one price per bundle required");
  if (bundles.size() > IndexSet::kCapacity) throw CapacityError("too many bundles");
  ItemSet seen;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].empty()) throw InputError("empty bundle in bundle pricing");
    if (!bundles[i].disjoint(seen)) throw InputError("bundles overlap");
    if (prices[i].sign() < 0) throw InputError("negative bundle price " + prices[i].str());
    seen = seen | bundles[i];
  }
}

ItemSet BundlePrices::covered() const {
  ItemSet s;
  for (auto b : bundles) s = s | b;
  return s;
}

ItemSet BundlePrices::items_of(IndexSet collection) const {
  ItemSet s;
  collection.for_each([&](std::size_t j) { s = s | bundles.at(j); });
  return s;
}

Rational BundlePrices::total(IndexSet collection) const {
  Rational t;
  collection.for_each([&](std::size_t j) { t += prices.at(j); });
  return t;
}

ItemSet Allocation::allocated() const {
  ItemSet s;
  for (auto b : bundles) s = s | b;
  return s;
}

void Allocation::validate(const Market& m) const {
  if (bundles.size() != m.agent_count())
    throw InputError("allocation lists " + std::to_string(bundles.size()) + " agents, market has " +
                     std::to_string(m.agent_count()));
  ItemSet seen;
  for (auto b : bundles) {
    if (!b.subset_of(m.all_items())) throw InputError("allocation mentions an item outside the market");
    if (!b.disjoint(seen)) throw InvariantViolation("allocation bundles overlap");
    seen = seen | b;
  }
}

}  // namespace seqprice
