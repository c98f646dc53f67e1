// seqprice: run posted-price schemes against sequential buyers, check
// equilibria and certify inequality systems.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "seqprice/errors.hpp"
#include "seqprice/feasibility.hpp"
#include "seqprice/io.hpp"
#include "seqprice/simulator.hpp"

using namespace seqprice;

namespace {

enum Exit : int {
  kOk = 0,
  kInput = 1,
  kPrecondition = 2,
  kCapacity = 3,
  kInfeasible = 4,
  kNotWalrasian = 5,
  kUsage = 64,
  kInvariant = 70,
};

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw InputError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

struct RunArgs {
  std::string market;
  std::string scheme = "dynamic-matching";
  std::string prices;
  std::string order;
  bool all_orders = false;
  std::string tie_break = "adversarial";
  std::string out = "-";
  std::size_t max_traces = 50;
};

int cmd_run(const RunArgs& a) {
  const Market m = load_market(a.market);
  std::optional<ItemPrices> prices;
  if (!a.prices.empty()) {
    prices = parse_prices(read_text_file(a.prices), m);
    if (!prices->nonnegative()) throw InputError("posted prices must be non-negative");
  }
  const auto scheme = make_scheme(a.scheme, m, prices);

  SimulationOptions options;
  options.node_guard = env_size("SEQPRICE_NODE_GUARD", kDefaultNodeGuard);
  options.demand_guard = env_size("SEQPRICE_DEMAND_GUARD", kDefaultDemandGuard);
  options.max_traces = a.max_traces;

  TieBreakPolicy policy;
  std::string policy_name = a.tie_break;
  if (a.tie_break == "adversarial") {
    policy = TieBreakPolicy::adversarial();
  } else if (a.tie_break == "first") {
    policy = TieBreakPolicy::first();
  } else if (a.tie_break.rfind("scripted:", 0) == 0) {
    policy = TieBreakPolicy::scripted(parse_script(read_text_file(a.tie_break.substr(9)), m));
    policy_name = "scripted";
  } else {
    throw InputError("unknown tie-break '" + a.tie_break + "'");
  }

  ReportInput in;
  in.scheme = scheme->name();
  in.tie_break = policy_name;
  in.max_traces = a.max_traces;
  SimulationResult result;
  if (!a.order.empty()) {
    std::vector<std::size_t> order;
    for (const auto& name : split_names(a.order)) order.push_back(m.agent_index(name));
    in.order = order;
    result = run_order(m, *scheme, order, policy, options);
  } else {
    if (policy.kind == TieBreakPolicy::Kind::Scripted) throw InputError("a scripted tie-break needs --order");
    result = run_all_orders(m, *scheme, policy, options);
  }
  try {
    in.optimum = brute_force_optimum(m).welfare;
  } catch (const CapacityError&) {
    in.optimum.reset();  // too large to enumerate; the report leaves opt empty
  }
  write_output(a.out, render_report(m, in, result));
  return kOk;
}

int cmd_verify(const std::string& market, const std::string& prices, const std::string& allocation) {
  const Market m = load_market(market);
  const ItemPrices p = parse_prices(read_text_file(prices), m);
  const Allocation x = parse_allocation(read_text_file(allocation), m);
  if (auto why = walrasian_violation(m, x, p)) {
    std::cout << "not walrasian: " << *why << "\n";
    return kNotWalrasian;
  }
  std::cout << "walrasian\n";
  return kOk;
}

int cmd_feas(const std::string& path, bool show_stages) {
  const LinearSystem sys = parse_system(read_text_file(path));
  const FeasibilityResult r = feasible(sys);
  if (show_stages) {
    for (std::size_t k = 0; k < r.stages.size(); ++k) {
      std::cout << "# stage " << k;
      if (k > 0) std::cout << " (eliminated " << sys.variables()[k - 1] << ")";
      std::cout << "\n" << r.stages[k].to_text();
    }
  }
  if (r.feasible) {
    std::cout << "feasible\n";
    for (std::size_t j = 0; j < sys.variables().size(); ++j)
      std::cout << sys.variables()[j] << " = " << r.point[j] << "\n";
    return kOk;
  }
  std::cout << "infeasible\n" << format_certificate(sys, r);
  return kInfeasible;
}

int cmd_graph(const std::string& market) {
  const Market m = load_market(market);
  const MatchingRound round = dynamic_matching_prices(m, m.all_agents(), m.all_items());
  const auto labels = round.graph.labels();
  std::cout << "# relation graph\n" << dump_edges(round.graph.graph, labels);
  std::cout << "# removed\n";
  for (const auto& [u, v] : round.pruned.removed) std::cout << labels[u] << " " << labels[v] << "\n";
  std::cout << "# delta " << round.pruned.delta << "\n# epsilon " << round.pruned.epsilon << "\n";
  std::cout << "# prices\n";
  for (std::size_t v = 0; v < labels.size(); ++v) std::cout << labels[v] << " " << round.vertex_prices[v] << "\n";
  return kOk;
}

int cmd_canon(const std::string& market) {
  std::cout << dump_market(load_market(market));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential posted pricing for combinatorial markets"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a pricing scheme over arrival orders and write a JSON report");
  run_cmd->add_option("market", run.market, "Market file")->required();
  run_cmd->add_option("--scheme", run.scheme, "Pricing scheme")->check(CLI::IsMember(scheme_names()));
  run_cmd->add_option("--prices", run.prices, "Item prices file (static-items)");
  auto* order_opt = run_cmd->add_option("--order", run.order, "Comma-separated arrival order");
  run_cmd->add_flag("--all-orders", run.all_orders, "Every arrival order (default)")->excludes(order_opt);
  run_cmd->add_option("--tie-break", run.tie_break, "adversarial, first or scripted:<file>");
  run_cmd->add_option("--out", run.out, "Report path, - for standard output");
  run_cmd->add_option("--max-traces", run.max_traces, "Traces written to the report");

  std::string market, prices, allocation;
  auto* verify_cmd = app.add_subcommand("verify-walrasian", "Check prices and an allocation for equilibrium");
  verify_cmd->add_option("market", market, "Market file")->required();
  verify_cmd->add_option("prices", prices, "Prices file")->required();
  verify_cmd->add_option("allocation", allocation, "Allocation file")->required();

  std::string system;
  bool stages = false;
  auto* feas_cmd = app.add_subcommand("feas", "Decide feasibility of a strict/weak inequality system");
  feas_cmd->add_option("system", system, "System file")->required();
  feas_cmd->add_flag("--stages", stages, "Print the system after each elimination");

  auto* graph_cmd = app.add_subcommand("graph", "Print the first-round relation graph and prices");
  graph_cmd->add_option("market", market, "Market file")->required();

  auto* canon_cmd = app.add_subcommand("canon", "Re-emit a market file in canonical form");
  canon_cmd->add_option("market", market, "Market file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(market, prices, allocation);
    if (*feas_cmd) return cmd_feas(system, stages);
    if (*graph_cmd) return cmd_graph(market);
    if (*canon_cmd) return cmd_canon(market);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}
