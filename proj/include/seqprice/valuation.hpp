#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "seqprice/index_set.hpp"
#include "seqprice/rational.hpp"

namespace seqprice {

/// v(S) = max over b in S of values[b].
struct UnitDemand {
  std::vector<Rational> values;
};

/// Complete value table indexed by item bitmask; table[0] is v(empty) = 0.
struct ExplicitTable {
  std::vector<Rational> table;
};

/// v(S) = max over X subset of S ∩ interested, |X| <= k, of sum of w(b).
/// The weight vector is shared by every agent of an item-dependent profile.
struct KDemandItemDependent {
  std::size_t k = 1;
  ItemSet interested;
  std::vector<Rational> weights;
};

/// v(S) = total weight of the ground elements covered by the items of S.
struct Coverage {
  std::vector<std::string> elements;
  std::vector<Rational> element_weights;
  std::vector<std::uint64_t> covers;  // per item: bitmask over elements
};

/// A normalized, monotone valuation over the subsets of `item_count` items.
/// Immutable once built; all factories validate their input.
class Valuation {
 public:
  enum class Kind { UnitDemand, Explicit, KDemandItemDependent, Coverage };
  using Variant = std::variant<UnitDemand, ExplicitTable, KDemandItemDependent, Coverage>;

  static Valuation unit_demand(std::vector<Rational> per_item);
  /// Table of 2^item_count entries. Rejects v(empty) != 0, negative
  /// entries and non-monotone tables.
  static Valuation explicit_table(std::size_t item_count, std::vector<Rational> table);
  static Valuation k_demand(std::size_t k, ItemSet interested, std::vector<Rational> weights);
  static Valuation coverage(std::size_t item_count, std::vector<std::string> elements,
                            std::vector<Rational> element_weights, std::vector<std::uint64_t> covers);
  /// Sum of per-item values; stored as an explicit table.
  static Valuation additive(const std::vector<Rational>& per_item);

  std::size_t item_count() const { return item_count_; }
  Kind kind() const { return static_cast<Kind>(data_.index()); }
  const Variant& data() const { return data_; }

  /// Throws InputError when s mentions an item outside the universe.
  Rational value(ItemSet s) const;

  /// The same valuation expanded into a complete table.
  Valuation to_explicit() const;

 private:
  Valuation(std::size_t item_count, Variant data) : item_count_(item_count), data_(std::move(data)) {}
  Rational value_unchecked(ItemSet s) const;

  std::size_t item_count_ = 0;
  Variant data_;
};

const char* kind_name(Valuation::Kind kind);

/// Coverage valuation from element weights and a cover map item -> elements.
/// `covers` must hold one entry per item (0..item_count-1); an element name
/// missing from `weights` is an InputError, as is a negative weight.
Valuation build_coverage_valuation(std::size_t item_count, const std::map<std::string, Rational>& weights,
                                   const std::vector<std::vector<std::string>>& covers);

}  // namespace seqprice
