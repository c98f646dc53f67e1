#include "doctest.h"
#include "oracles.hpp"
#include "seqprice/errors.hpp"
#include "seqprice/fixtures.hpp"
#include "seqprice/simulator.hpp"

using namespace seqprice;

namespace {

ItemSet S(std::initializer_list<std::size_t> items) { return IndexSet::of(std::vector<std::size_t>(items)); }

ItemPrices prices(std::initializer_list<Rational> p) { return ItemPrices(std::vector<Rational>(p)); }

// Every recorded purchase is a lean utility maximizer of the offer.
void check_trace(const Market& m, const Trace& t) {
  const auto tables = oracle::tables(m);
  Allocation seen = Allocation::empty(m.agent_count());
  Rational paid;
  for (const auto& r : t.rounds) {
    oracle::BundleOffer o;
    for (auto b : r.offer->prices.bundles) o.bundles.push_back(b.bits());
    o.prices = r.offer->prices.prices;
    const auto lean = oracle::lean_collections(tables[r.agent], o);
    std::vector<ItemSet> expected;
    for (auto s : lean) expected.emplace_back(s);
    CHECK(r.demand == expected);
    CHECK(std::find(lean.begin(), lean.end(), r.chosen.bits()) != lean.end());
    Rational pay;
    for (std::size_t j = 0; j < o.bundles.size(); ++j)
      if ((o.bundles[j] & r.chosen.bits()) != 0) pay += o.prices[j];
    CHECK(pay == r.payment);
    seen.bundles[r.agent] = r.chosen;
  }
  CHECK(seen == t.allocation);
  CHECK(welfare(m, t.allocation) == t.welfare);
}

}  // namespace

TEST_CASE("walking away under a static Walrasian price") {
  const Market m = fixtures::alice_bob();
  StaticItemPricing scheme(prices({4, 0}));
  const auto r = run_order(m, scheme, {0, 1}, TieBreakPolicy::adversarial());
  bool welfare_one = false;
  for (const auto& t : r.traces) {
    check_trace(m, t);
    welfare_one = welfare_one || t.welfare == 1;
  }
  CHECK(welfare_one);
  CHECK(r.worst_welfare == 1);
  CHECK(r.worst.rounds.front().chosen == S({1}));
}

TEST_CASE("empty market") {
  const Market m({}, {});
  DynamicMatchingScheme scheme;
  const auto r = adversarial_worst(m, scheme);
  CHECK(r.trace_count == 1);
  CHECK(r.worst_welfare == 0);
  CHECK(r.worst.rounds.empty());
  CHECK(walrasian_check(m, Allocation::empty(0), ItemPrices(0)));
}

TEST_CASE("static zero prices on the cyclic market") {
  const Market m = fixtures::cyclic_three();
  StaticItemPricing scheme(prices({0, 0, 0}));
  const auto r = adversarial_worst(m, scheme);
  CHECK(r.worst_welfare == 2);
  CHECK(r.worst_welfare == oracle::worst_welfare(oracle::tables(m), 3, oracle::static_items({0, 0, 0})));
}

TEST_CASE("prohibitive prices: everybody walks away") {
  const Market m = fixtures::coverage_instance();
  StaticItemPricing scheme(prices({100, 100, 100, 100}));
  CHECK(adversarial_worst(m, scheme).worst_welfare == 0);
}

TEST_CASE("adversarial enumeration agrees with the oracle under static prices") {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 0, 3));
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 0, 4));
    std::vector<oracle::Table> tables;
    for (std::size_t i = 0; i < n; ++i) tables.push_back(oracle::random_monotone_table(rng, m, 3));
    const Market mk = oracle::explicit_market(tables, m);
    std::vector<Rational> p;
    for (std::size_t b = 0; b < m; ++b) p.emplace_back(oracle::uniform(rng, 0, 8), 2);
    StaticItemPricing scheme{ItemPrices(p)};
    SimulationResult all = run_all_orders(mk, scheme, TieBreakPolicy::adversarial());
    CHECK(all.worst_welfare == oracle::worst_welfare(tables, m, oracle::static_items(p)));
    for (const auto& t : all.traces) check_trace(mk, t);
    CHECK(adversarial_worst(mk, scheme).worst_welfare == all.worst_welfare);
  }
}

TEST_CASE("first-lexicographic and scripted policies") {
  const Market m = fixtures::alice_bob();
  StaticItemPricing scheme(prices({4, 0}));
  const auto first = run_order(m, scheme, {0, 1}, TieBreakPolicy::first());
  REQUIRE(first.traces.size() == 1);
  CHECK(first.traces[0].rounds[0].chosen == S({0}));
  CHECK(first.traces[0].welfare == 6);

  const auto scripted = run_order(m, scheme, {0, 1}, TieBreakPolicy::scripted({S({1}), ItemSet()}));
  REQUIRE(scripted.traces.size() == 1);
  CHECK(scripted.traces[0].welfare == 1);

  CHECK_THROWS_AS(run_order(m, scheme, {0, 1}, TieBreakPolicy::scripted({S({0, 1})})), InputError);
  CHECK_THROWS_AS(run_order(m, scheme, {0, 0}, TieBreakPolicy::adversarial()), InputError);
}

TEST_CASE("node guard") {
  const Market m = fixtures::cyclic_three();
  StaticItemPricing scheme(prices({0, 0, 0}));
  SimulationOptions o;
  o.node_guard = 3;
  CHECK_THROWS_AS(adversarial_worst(m, scheme, o), CapacityError);
}

TEST_CASE("trace cap keeps counting") {
  const Market m = fixtures::cyclic_three();
  StaticItemPricing scheme(prices({0, 0, 0}));
  SimulationOptions o;
  o.max_traces = 2;
  const auto r = run_all_orders(m, scheme, TieBreakPolicy::adversarial(), o);
  CHECK(r.traces.size() == 2);
  CHECK(r.trace_count > 2);
}

TEST_CASE("walrasian check") {
  const Market cov = fixtures::coverage_instance();
  const Allocation opt{{S({0}), S({1}), S({2}), S({3})}};
  CHECK(walrasian_check(cov, opt, prices({1, 1, 1, 1})));
  CHECK_FALSE(walrasian_check(cov, Allocation::empty(4), prices({0, 0, 0, 0})));

  const Market ab = fixtures::alice_bob();
  CHECK_FALSE(walrasian_check(ab, Allocation{{S({1}), S({0})}}, prices({4, 0})));
  CHECK(walrasian_check(ab, Allocation{{S({0}), S({1})}}, prices({4, 0})));
  CHECK(walrasian_violation(ab, Allocation{{S({1}), S({0})}}, prices({4, 0})).has_value());
}

TEST_CASE("coverage instance: no price grid point survives every order") {
  const Market m = fixtures::coverage_instance();
  const std::vector<Rational> grid{0, Rational(1, 2), 1, Rational(3, 2), 2};
  for (std::size_t code = 0; code < 625; code += 13) {  // a spread of grid points; the full grid runs in acceptance
    std::vector<Rational> p;
    for (std::size_t k = 0, c = code; k < 4; ++k, c /= 5) p.push_back(grid[c % 5]);
    StaticItemPricing scheme{ItemPrices(p)};
    const Rational worst = adversarial_worst(m, scheme).worst_welfare;
    CHECK(worst <= Rational(15, 2));
    CHECK(worst == oracle::worst_welfare(oracle::tables(m), 4, oracle::static_items(p)));
  }
}
