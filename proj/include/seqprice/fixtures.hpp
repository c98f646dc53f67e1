#pragma once

#include <vector>

#include "seqprice/feasibility.hpp"
#include "seqprice/market.hpp"

namespace seqprice::fixtures {

/// Two unit-demand buyers over items a, b: alice values (R, 1), bob (1, 1).
Market alice_bob(const Rational& r = 5);

/// Three unit-demand buyers in a cycle over items a, b, c: alice wants a
/// or b, bob wants b or c, carl wants c or a, each at value 1.
Market cyclic_three();

/// Coverage buyer agent1 over items a, b, c, d plus three unit-demand buyers:
/// agent2 values a, b at 2; agent3 values a, c at 2; agent4 values d
/// at 1. The unique optimum gives a, b, c, d to agent1..agent4 for welfare 8.
Market coverage_instance();

/// The coverage buyer's value table, written out bundle by bundle.
std::vector<Rational> coverage_buyer_table();

}  // namespace seqprice::fixtures
