#include "doctest.h"
#include "oracles.hpp"
#include "seqprice/errors.hpp"
#include "seqprice/fixtures.hpp"
#include "seqprice/simulator.hpp"
#include "seqprice/validators.hpp"

using namespace seqprice;

namespace {

ItemSet S(std::initializer_list<std::size_t> items) { return IndexSet::of(std::vector<std::size_t>(items)); }

Market two_items(const std::vector<Valuation>& vs) {
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < vs.size(); ++i) agents.push_back({"agent" + std::to_string(i), vs[i]});
  return Market({"a", "b"}, std::move(agents));
}

}  // namespace

TEST_CASE("dynamic matching prices on the two-buyer market") {
  const Market m = fixtures::alice_bob();
  const auto r = dynamic_matching_prices(m, m.all_agents(), m.all_items());
  const Rational pa = r.prices.at(0), pb = r.prices.at(1);
  CHECK(pa < pb + 4);
  CHECK(pb < 1);
  CHECK(pa >= 0);
  CHECK(pb >= 0);
  DynamicMatchingScheme scheme;
  const auto all = run_all_orders(m, scheme, TieBreakPolicy::adversarial());
  for (const auto& t : all.traces) CHECK(t.welfare == 6);
  CHECK(all.trace_count > 0);
}

TEST_CASE("dynamic matching on the cyclic market and a single item") {
  DynamicMatchingScheme scheme;
  const auto r = adversarial_worst(fixtures::cyclic_three(), scheme);
  CHECK(r.worst_welfare == 3);
  for (const auto& t : run_all_orders(fixtures::cyclic_three(), scheme, TieBreakPolicy::adversarial()).traces)
    CHECK(t.welfare == 3);

  const Market single({"a"}, {Agent{"x", Valuation::unit_demand({7})}});
  const auto round = dynamic_matching_prices(single, single.all_agents(), single.all_items());
  CHECK(round.prices.at(0) < 7);
  CHECK(adversarial_worst(single, scheme).worst_welfare == 7);

  CHECK_THROWS_AS(dynamic_matching_prices(fixtures::coverage_instance(), AgentSet::first_n(4), ItemSet::first_n(4)),
                  PreconditionError);
}

TEST_CASE("static half prices") {
  const Market one({"a", "b"}, {Agent{"x", Valuation::additive({4, 6})}});
  const auto p = static_half_bundle_prices(one, {S({0, 1})});
  CHECK(p.prices == std::vector<Rational>{5});

  const Market cov = fixtures::coverage_instance();
  const auto part = covering_optimal_partition(cov);
  CHECK(part == std::vector<ItemSet>{S({0}), S({1}), S({2}), S({3})});
  const auto hp = static_half_bundle_prices(cov, part);
  CHECK(hp.prices == std::vector<Rational>{Rational(3, 2), 1, 1, Rational(1, 2)});

  CHECK_THROWS_AS(static_half_bundle_prices(cov, {S({0}), S({0}), S({2}), S({3})}), InputError);
  CHECK_THROWS_AS(static_half_bundle_prices(cov, {S({0}), S({1}), S({2}), ItemSet()}), InputError);
  CHECK_THROWS_AS(static_half_bundle_prices(cov, {S({0, 1, 2, 3})}), InputError);
}

TEST_CASE("static half prices keep half the welfare against the enumeration oracle") {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<oracle::Table> tables;
    for (std::size_t i = 0; i < n; ++i) tables.push_back(oracle::random_monotone_table(rng, m, 4));
    const Market mk = oracle::explicit_market(tables, m);
    const auto part = covering_optimal_partition(mk);
    const auto bp = static_half_bundle_prices(mk, part);
    StaticBundlePricing scheme(bp, "static-half");
    const Rational worst = adversarial_worst(mk, scheme).worst_welfare;
    std::vector<oracle::Mask> bundles;
    for (auto s : bp.bundles) bundles.push_back(s.bits());
    CHECK(worst == oracle::worst_welfare(tables, m, oracle::static_bundles(bundles, bp.prices)));
    CHECK(worst * Rational(2) >= oracle::optimum(mk));
  }
}

TEST_CASE("exchange graph") {
  const Market m = two_items({Valuation::unit_demand({5, 1}), Valuation::unit_demand({1, 2})});
  const auto opt = check_unique_optimum(m);
  REQUIRE(opt.has_value());
  CHECK(opt->bundles == std::vector<ItemSet>{S({0}), S({1})});
  const auto ex = build_exchange_graph(m, *opt);
  CHECK(ex.graph.weight(0, 1) == 4);
  CHECK(ex.graph.weight(1, 0) == 1);
  CHECK(ex.graph.weight(0, ex.dummy(1)) == 5);
  CHECK(ex.graph.weight(ex.dummy(0), 1) == 0);
  CHECK_FALSE(ex.graph.has_edge(ex.dummy(0), ex.dummy(1)));
  CHECK_FALSE(ex.graph.has_edge(ex.dummy(1), ex.dummy(0)));

  const Market single({"a"}, {Agent{"x", Valuation::unit_demand({3})}});
  CHECK(build_exchange_graph(single, Allocation{{S({0})}}).graph.edge_count() == 0);

  const Market twins({"a"}, {Agent{"x", Valuation::unit_demand({1})}, Agent{"y", Valuation::unit_demand({1})}});
  CHECK_THROWS_AS(build_exchange_graph(twins, Allocation{{S({0}), ItemSet()}}), InvariantViolation);
  CHECK_THROWS_AS(gs_unique_static_prices(twins), PreconditionError);
  CHECK_THROWS_AS(gs_unique_static_prices(fixtures::coverage_instance()), PreconditionError);
}

TEST_CASE("gs-unique static prices") {
  const Market m = two_items({Valuation::unit_demand({5, 1}), Valuation::unit_demand({1, 2})});
  const auto r = gs_unique_static_prices(m);
  CHECK(utility_maximizers(m.valuation(0), m.all_items(), r.prices) == std::vector<ItemSet>{S({0})});
  CHECK(utility_maximizers(m.valuation(1), m.all_items(), r.prices) == std::vector<ItemSet>{S({1})});
  CHECK(r.vertex_prices[r.exchange.dummy(0)] == 0);
  CHECK(r.vertex_prices[r.exchange.dummy(1)] == 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (auto c : local_sets(r.optimum.bundles[i], m.all_items()))
      CHECK(utility(m.valuation(i), r.optimum.bundles[i], r.prices) > utility(m.valuation(i), c, r.prices));

  const Market single({"a"}, {Agent{"x", Valuation::unit_demand({3})}});
  const auto s = gs_unique_static_prices(single);
  CHECK(s.prices.at(0) < 3);
  CHECK(utility_maximizers(single.valuation(0), single.all_items(), s.prices) == std::vector<ItemSet>{S({0})});

  // Three unit-demand agents with distinct perturbations forcing a unique optimum.
  const Market three({"a", "b", "c"}, {Agent{"x", Valuation::unit_demand({4, Rational(41, 10), 1})},
                                       Agent{"y", Valuation::unit_demand({Rational(37, 10), 4, 2})},
                                       Agent{"z", Valuation::unit_demand({1, 2, Rational(21, 10)})}});
  REQUIRE(check_unique_optimum(three).has_value());
  StaticItemPricing scheme(gs_unique_static_prices(three).prices);
  CHECK(adversarial_worst(three, scheme).worst_welfare == oracle::optimum(three));
}

TEST_CASE("sapb on small instances") {
  // Additive agents already holding their best items: nothing to merge.
  const Market add = two_items({Valuation::additive({3, 1}), Valuation::additive({1, 3})});
  const auto r = sapb(add, {S({0}), S({1})});
  CHECK(r.merges == 0);
  CHECK(r.delta == 2);
  CHECK(r.epsilon == 1);
  CHECK(r.prices.prices == std::vector<Rational>{2, 2});
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(maximizing_collections(add, i, r.prices, IndexSet::first_n(2)) ==
          std::vector<IndexSet>{IndexSet::singleton(*r.bundle_of_agent[i])});

  const Market one({"a", "b"}, {Agent{"x", Valuation::additive({2, 3})}});
  const auto s = sapb(one, {S({0, 1})});
  CHECK(s.bundles == std::vector<ItemSet>{S({0, 1})});
  CHECK(s.prices.prices[0] == Rational(5) - s.epsilon);
  CHECK(s.epsilon > 0);

  // Agent 0 values the union far above both prices: one merge.
  const Market syn = two_items({Valuation::explicit_table(2, {0, 2, 1, 6}), Valuation::explicit_table(2, {0, 0, 2, 2})});
  const auto t = sapb(syn, {S({0}), S({1})});
  CHECK(t.merges == 1);
  CHECK(t.bundles == std::vector<ItemSet>{S({0, 1}), ItemSet()});
  CHECK(t.welfare_history.front() == 4);
  CHECK(t.welfare_history.back() == 6);
  CHECK(t.delta == 4);
  CHECK(t.epsilon == 2);
  CHECK(t.prices.prices == std::vector<Rational>{4});

  CHECK_THROWS_AS(sapb(fixtures::alice_bob(), {S({0}), S({1})}), PreconditionError);
}

TEST_CASE("mdf") {
  const Market m({"a", "b"}, {Agent{"x", Valuation::explicit_table(2, {0, 5, 3, 6})}});
  const BundlePrices p{{S({0}), S({1})}, {0, 3}};
  CHECK(mdf(m, p, 0, 0) == 2);  // own 5; {b} gives 0, {a,b} gives 3
  const BundlePrices single{{S({0, 1})}, {4}};
  CHECK(mdf(m, single, 0, 0) == 2);  // u = 6 - 4 against walking away
}

TEST_CASE("k-demand rounds") {
  const std::vector<Rational> w{2, 3};
  const Market distinct({"a", "b"}, {Agent{"x", Valuation::k_demand(1, S({0}), w)},
                                     Agent{"y", Valuation::k_demand(1, S({1}), w)}});
  const auto r = kdemand_round(distinct, distinct.all_agents(), {S({0}), S({1})});
  CHECK(r.bundles == std::vector<ItemSet>{S({0}), S({1})});
  CHECK(r.edges.empty());
  CHECK(r.epsilon == Rational(1, 2));
  CHECK(r.prices == std::vector<Rational>{Rational(2) - r.epsilon.pow(r.rank[0]), Rational(3) - r.epsilon.pow(r.rank[1])});
  CHECK(r.rank[0] >= 1);
  CHECK(r.rank[1] >= 1);

  const Market tie({"a", "b"}, {Agent{"x", Valuation::k_demand(1, S({0, 1}), {2, 2})},
                                Agent{"y", Valuation::k_demand(1, S({0, 1}), {2, 2})}});
  const auto t = kdemand_round(tie, tie.all_agents(), {S({0}), S({1})});
  CHECK(t.edges.size() == 2);
  CHECK(t.dag_edges.empty());

  const Market mixed({"a", "b"}, {Agent{"x", Valuation::k_demand(1, S({0}), {2, 3})},
                                  Agent{"y", Valuation::k_demand(1, S({1}), {2, 4})}});
  CHECK_THROWS_AS(kdemand_round(mixed, mixed.all_agents(), {S({0}), S({1})}), InputError);
  CHECK_THROWS_AS(kdemand_round(fixtures::alice_bob(), AgentSet::first_n(2), {S({0}), S({1})}), InputError);
  const Market zero_w({"a"}, {Agent{"x", Valuation::k_demand(1, S({0}), {0})}});
  CHECK_THROWS_AS(kdemand_round(zero_w, zero_w.all_agents(), {S({0})}), PreconditionError);
}

TEST_CASE("scheme factory") {
  const Market m = fixtures::alice_bob();
  CHECK(make_scheme("dynamic-matching", m)->name() == "dynamic-matching");
  CHECK(make_scheme("static-half", m)->name() == "static-half");
  CHECK_THROWS_AS(make_scheme("static-items", m), InputError);
  CHECK_THROWS_AS(make_scheme("nope", m), InputError);
  CHECK_THROWS_AS(make_scheme("sapb", m), PreconditionError);
}
