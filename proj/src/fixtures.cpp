#include "seqprice/fixtures.hpp"

namespace seqprice::fixtures {

Market alice_bob(const Rational& r) {
  return Market({"a", "b"}, {Agent{"alice", Valuation::unit_demand({r, 1})},
                             Agent{"bob", Valuation::unit_demand({1, 1})}});
}

Market cyclic_three() {
  return Market({"a", "b", "c"}, {Agent{"alice", Valuation::unit_demand({1, 1, 0})},
                                  Agent{"bob", Valuation::unit_demand({0, 1, 1})},
                                  Agent{"carl", Valuation::unit_demand({1, 0, 1})}});
}

Market coverage_instance() {
  const Rational big(5, 4), small(1, 4);
  std::map<std::string, Rational> weights{{"e1", big},   {"e2", small}, {"e3", small}, {"e4", small},
                                          {"e5", big},   {"e6", small}, {"e7", small}, {"e8", small}};
  auto v1 = build_coverage_valuation(4, weights,
                                     {{"e1", "e2", "e5", "e6"},
                                      {"e1", "e2", "e3", "e4"},
                                      {"e5", "e6", "e7", "e8"},
                                      {"e1", "e4", "e5", "e8"}});
  return Market({"a", "b", "c", "d"}, {Agent{"agent1", std::move(v1)},
                                       Agent{"agent2", Valuation::unit_demand({2, 2, 0, 0})},
                                       Agent{"agent3", Valuation::unit_demand({2, 0, 2, 0})},
                                       Agent{"agent4", Valuation::unit_demand({0, 0, 0, 1})}});
}

std::vector<Rational> coverage_buyer_table() {
  // bit 0 = a, 1 = b, 2 = c, 3 = d
  std::vector<Rational> t(16);
  const Rational two(2), three(3), three_half(7, 2), three_3q(15, 4), four(4);
  const auto a = 1U, b = 2U, c = 4U, d = 8U;
  t[0] = 0;
  t[b] = two;
  t[c] = two;
  t[a] = three;
  t[d] = three;
  for (auto s : {a | b, a | c, d | b, d | c, a | d}) t[s] = three_half;
  for (auto s : {a | b | d, a | c | d}) t[s] = three_3q;
  for (unsigned s = 0; s < 16; ++s)
    if ((s & (b | c)) == (b | c)) t[s] = four;
  return t;
}

}  // namespace seqprice::fixtures
