#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqprice/schemes.hpp"

namespace seqprice {

inline constexpr std::size_t kDefaultNodeGuard = 1'000'000;

/// How an arriving buyer picks among her demanded bundles.
struct TieBreakPolicy {
  enum class Kind { Adversarial, FirstLexicographic, Scripted };
  Kind kind = Kind::Adversarial;
  /// Scripted: the bundle bought in each round, in arrival order.
  std::vector<ItemSet> script;

  static TieBreakPolicy adversarial() { return {Kind::Adversarial, {}}; }
  /// The demanded bundle with the lowest bitmask (walking away first).
  static TieBreakPolicy first() { return {Kind::FirstLexicographic, {}}; }
  static TieBreakPolicy scripted(std::vector<ItemSet> choices) { return {Kind::Scripted, std::move(choices)}; }
};

struct RoundRecord {
  std::size_t agent = 0;
  std::shared_ptr<const Offer> offer;
  std::vector<ItemSet> demand;  // demanded bundles as item sets
  ItemSet chosen;
  Rational payment;
};

struct Trace {
  std::vector<std::size_t> order;
  std::vector<RoundRecord> rounds;
  Allocation allocation;
  Rational welfare;
};

struct RoundEvent {
  const RoundState& before;
  const RoundState& after;
  const RoundRecord& record;
};

struct SimulationOptions {
  std::size_t node_guard = kDefaultNodeGuard;
  std::size_t demand_guard = kDefaultDemandGuard;
  /// Traces kept in the result; all leaves are still counted.
  std::size_t max_traces = std::numeric_limits<std::size_t>::max();
  std::function<void(const RoundEvent&)> on_round;
  std::function<void(const Trace&)> on_leaf;
};

struct SimulationResult {
  std::vector<Trace> traces;
  std::size_t trace_count = 0;
  std::size_t nodes = 0;
  Rational worst_welfare;
  Trace worst;  // first trace (in exploration order) reaching worst_welfare
};

/// Runs one arrival order. Each arriving agent faces the scheme's offer
/// for the current state and buys a demanded collection picked by the
/// policy; the adversarial policy branches over every demanded collection.
SimulationResult run_order(const Market& m, const PricingScheme& scheme, const std::vector<std::size_t>& order,
                           const TieBreakPolicy& policy, const SimulationOptions& options = {});

/// Every arrival order, permutations in lexicographic order.
SimulationResult run_all_orders(const Market& m, const PricingScheme& scheme, const TieBreakPolicy& policy,
                                const SimulationOptions& options = {});

/// Minimum final welfare over all orders and all tie-breaks, with the
/// first trace attaining it.
SimulationResult adversarial_worst(const Market& m, const PricingScheme& scheme, SimulationOptions options = {});

/// Whether every agent's bundle maximizes her utility over all items at p
/// and every unallocated item is priced 0.
bool walrasian_check(const Market& m, const Allocation& x, const ItemPrices& p);

/// The first reason the pair is not a Walrasian equilibrium, if any.
std::optional<std::string> walrasian_violation(const Market& m, const Allocation& x, const ItemPrices& p);

}  // namespace seqprice
