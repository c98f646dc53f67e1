#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "seqprice/market.hpp"

namespace seqprice {

/// Complete bipartite graph between agents (left) and items (right).
/// Missing pairs carry weight 0.
struct WeightedBipartite {
  std::size_t agents = 0;
  std::size_t items = 0;
  std::vector<Rational> weights;  // row-major, agents x items

  WeightedBipartite() = default;
  WeightedBipartite(std::size_t agents, std::size_t items);

  const Rational& weight(std::size_t agent, std::size_t item) const { return weights[agent * items + item]; }
  void set(std::size_t agent, std::size_t item, Rational w);

  /// Single-item values v_a({b}) for the listed agents and items, in the
  /// listed order.
  static WeightedBipartite from_market(const Market& m, const std::vector<std::size_t>& agents,
                                       const std::vector<std::size_t>& items);
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (agent, item), sorted by agent
  Rational weight;
};

/// Maximum-weight matching (Hungarian method on exact rationals). Only
/// pairs of positive weight are reported.
Matching max_weight_matching(const WeightedBipartite& g);

/// A maximum-weight matching after padding both sides to equal size with
/// zero-weight dummies. Every real item has an owner; an empty owner means
/// a dummy agent. item_of_agent is empty for agents holding a dummy item.
struct CompleteMatching {
  std::vector<std::optional<std::size_t>> owner_of_item;
  std::vector<std::optional<std::size_t>> item_of_agent;
  Rational weight;
};

CompleteMatching item_complete_matching(const WeightedBipartite& g);

inline constexpr std::size_t kDefaultOptimumMaxAgents = 5;
inline constexpr std::size_t kDefaultOptimumMaxItems = 6;

struct Optimum {
  Allocation allocation;
  Rational welfare;
};

/// Exhaustive search over every assignment of items to agents (or to no
/// one). Assignments are visited as owner vectors in lexicographic order,
/// item 0 most significant, "unallocated" ranked after every agent; the
/// first maximum is returned.
Optimum brute_force_optimum(const Market& m, std::size_t max_agents = kDefaultOptimumMaxAgents,
                            std::size_t max_items = kDefaultOptimumMaxItems);

/// The optimal allocation when every other allocation is strictly worse.
std::optional<Allocation> check_unique_optimum(const Market& m, std::size_t max_agents = kDefaultOptimumMaxAgents,
                                               std::size_t max_items = kDefaultOptimumMaxItems);

}  // namespace seqprice
