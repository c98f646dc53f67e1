#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqprice/simulator.hpp"

namespace seqprice {

/// Reads a whole file; a missing or unreadable file is an InputError.
std::string read_text_file(const std::string& path);

/// Market documents:
///
///   items: [a, b, c]
///   agents:
///     - name: alice
///       valuation: {type: unit_demand, values: {a: "5", b: "1", c: "0"}}
///
/// Valuation types: unit_demand (values), explicit (values: list of
/// {bundle, value}, every nonempty bundle listed), k_demand_item_dependent
/// (k, weights, optional interested), coverage (elements: name -> weight,
/// covers: item -> element list). Numbers are "p" or "p/q"; floats and
/// unknown fields are ParseErrors carrying the offending line and column.
Market parse_market(std::string_view yaml);
Market load_market(const std::string& path);
std::string dump_market(const Market& m);

/// prices: {a: "1", b: "1/2"}. Every item must be priced.
ItemPrices parse_prices(std::string_view yaml, const Market& m);
/// allocation: {alice: [a], bob: []}. Unlisted agents get nothing.
Allocation parse_allocation(std::string_view yaml, const Market& m);
/// choices: [[a], [], [b, c]], the items bought in each round.
std::vector<ItemSet> parse_script(std::string_view yaml, const Market& m);

struct ReportInput {
  std::string scheme;
  std::optional<std::vector<std::size_t>> order;  // nothing: all orders
  std::string tie_break;
  std::optional<Rational> optimum;  // brute-force welfare, when computed
  std::size_t max_traces = 50;
};

/// Deterministic JSON report (two-space indent, fixed key order, exact
/// rationals as strings).
std::string render_report(const Market& m, const ReportInput& in, const SimulationResult& r);

}  // namespace seqprice
