#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqprice/index_set.hpp"
#include "seqprice/rational.hpp"
#include "seqprice/valuation.hpp"

namespace seqprice {

inline constexpr std::size_t kMaxItems = 30;
inline constexpr std::size_t kMaxAgents = 30;

struct Agent {
  std::string name;
  Valuation valuation;
};

/// Items and agents of one instance. Item and agent identifiers are unique
/// and every valuation is defined over exactly the market's items.
class Market {
 public:
  Market(std::vector<std::string> items, std::vector<Agent> agents);

  const std::vector<std::string>& items() const { return items_; }
  const std::vector<Agent>& agents() const { return agents_; }
  std::size_t item_count() const { return items_.size(); }
  std::size_t agent_count() const { return agents_.size(); }
  ItemSet all_items() const { return ItemSet::first_n(items_.size()); }
  AgentSet all_agents() const { return AgentSet::first_n(agents_.size()); }

  std::size_t item_index(std::string_view name) const;
  std::size_t agent_index(std::string_view name) const;
  ItemSet item_set(const std::vector<std::string>& names) const;
  std::vector<std::string> item_names(ItemSet s) const;
  /// "{a,b}" in item order.
  std::string format(ItemSet s) const;

  const Valuation& valuation(std::size_t agent) const { return agents_.at(agent).valuation; }
  Rational value(std::size_t agent, ItemSet s) const;

  bool all_of_kind(Valuation::Kind kind) const;

 private:
  std::vector<std::string> items_;
  std::vector<Agent> agents_;
  // Per-agent value tables, filled when the item count is small enough.
  std::shared_ptr<const std::vector<std::vector<Rational>>> tables_;
};

/// Per-item prices. Entries may be left unset; reading an unset entry is
/// an InputError. Signs are not restricted here so that constraint checks
/// can be exercised on arbitrary vectors; schemes only ever post p >= 0.
class ItemPrices {
 public:
  ItemPrices() = default;
  explicit ItemPrices(std::size_t item_count) : prices_(item_count) {}
  explicit ItemPrices(const std::vector<Rational>& all);

  std::size_t item_count() const { return prices_.size(); }
  void set(std::size_t item, Rational price);
  bool has(std::size_t item) const { return item < prices_.size() && prices_[item].has_value(); }
  const Rational& at(std::size_t item) const;
  Rational total(ItemSet s) const;
  bool nonnegative() const;

  friend bool operator==(const ItemPrices&, const ItemPrices&) = default;

 private:
  std::vector<std::optional<Rational>> prices_;
};

/// A partition of (some of) the items into bundles, with a price per bundle.
struct BundlePrices {
  std::vector<ItemSet> bundles;
  std::vector<Rational> prices;

  /// Throws InputError unless bundles are nonempty, pairwise disjoint and
  /// prices are non-negative with one price per bundle.
  void validate() const;
  ItemSet covered() const;
  ItemSet items_of(IndexSet collection) const;
  Rational total(IndexSet collection) const;
};

/// One bundle per agent (possibly empty).
struct Allocation {
  std::vector<ItemSet> bundles;

  static Allocation empty(std::size_t agents) { return Allocation{std::vector<ItemSet>(agents)}; }
  ItemSet allocated() const;
  /// Throws InvariantViolation on overlapping bundles, InputError on a
  /// size mismatch or items outside the market.
  void validate(const Market& m) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

}  // namespace seqprice
