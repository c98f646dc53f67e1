#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqprice {

/// Set of small indices (< 32) packed into a bitmask. Used for item sets,
/// agent sets and collections of bundles.
class IndexSet {
 public:
  static constexpr std::size_t kCapacity = 32;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr IndexSet singleton(std::size_t i) { return IndexSet(std::uint32_t{1} << i); }
  static constexpr IndexSet first_n(std::size_t n) {
    return IndexSet(n >= kCapacity ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static IndexSet of(const std::vector<std::size_t>& indices) {
    IndexSet s;
    for (auto i : indices) s = s.with(i);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(IndexSet o) const { return (bits_ & o.bits_) == 0; }

  constexpr IndexSet with(std::size_t i) const { return IndexSet(bits_ | (std::uint32_t{1} << i)); }
  constexpr IndexSet without(std::size_t i) const { return IndexSet(bits_ & ~(std::uint32_t{1} << i)); }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  friend constexpr auto operator<=>(IndexSet a, IndexSet b) { return a.bits_ <=> b.bits_; }

  /// Indices in increasing order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto b = bits_; b != 0; b &= b - 1) f(static_cast<std::size_t>(std::countr_zero(b)));
  }

  /// Calls f on every subset of *this, starting from the empty set and in
  /// increasing bitmask order.
  template <class F>
  void for_each_subset(F&& f) const {
    std::uint32_t sub = 0;
    while (true) {
      f(IndexSet(sub));
      if (sub == bits_) break;
      sub = (sub - bits_) & bits_;
    }
  }

 private:
  std::uint32_t bits_ = 0;
};

using ItemSet = IndexSet;
using AgentSet = IndexSet;

}  // namespace seqprice
