#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqprice/errors.hpp"
#include "seqprice/feasibility.hpp"
#include "seqprice/fixtures.hpp"
#include "seqprice/io.hpp"
#include "seqprice/simulator.hpp"
#include "seqprice/validators.hpp"

namespace py = pybind11;
using namespace seqprice;

// Rationals travel as "p/q" strings; the Python package turns them into
// fractions.Fraction.

namespace {

using NamedPrices = std::map<std::string, std::string>;
using NamedBundles = std::map<std::string, std::vector<std::string>>;

ItemPrices to_prices(const Market& m, const NamedPrices& p) {
  ItemPrices out(m.item_count());
  for (const auto& [item, price] : p) out.set(m.item_index(item), Rational::parse(price));
  for (std::size_t b = 0; b < m.item_count(); ++b)
    if (!out.has(b)) throw InputError("no price for item '" + m.items()[b] + "'");
  return out;
}

NamedPrices from_prices(const Market& m, const ItemPrices& p) {
  NamedPrices out;
  for (std::size_t b = 0; b < m.item_count(); ++b)
    if (p.has(b)) out[m.items()[b]] = p.at(b).str();
  return out;
}

Allocation to_allocation(const Market& m, const NamedBundles& x) {
  Allocation a = Allocation::empty(m.agent_count());
  for (const auto& [agent, items] : x) a.bundles[m.agent_index(agent)] = m.item_set(items);
  a.validate(m);
  return a;
}

NamedBundles from_allocation(const Market& m, const Allocation& a) {
  NamedBundles out;
  for (std::size_t i = 0; i < m.agent_count(); ++i) out[m.agents()[i].name] = m.item_names(a.bundles[i]);
  return out;
}

std::vector<std::pair<std::vector<std::string>, std::string>> from_bundles(const Market& m, const BundlePrices& p) {
  std::vector<std::pair<std::vector<std::string>, std::string>> out;
  for (std::size_t j = 0; j < p.bundles.size(); ++j) out.emplace_back(m.item_names(p.bundles[j]), p.prices[j].str());
  return out;
}

AgentSet agent_set(const Market& m, const std::optional<std::vector<std::string>>& names) {
  if (!names) return m.all_agents();
  AgentSet s;
  for (const auto& n : *names) s = s.with(m.agent_index(n));
  return s;
}

std::string simulate(const Market& m, const std::string& scheme_name, const std::optional<NamedPrices>& prices,
                     const std::optional<std::vector<std::string>>& order, const std::string& tie_break,
                     const std::optional<std::vector<std::vector<std::string>>>& script, std::size_t max_traces) {
  std::optional<ItemPrices> p;
  if (prices) p = to_prices(m, *prices);
  const auto scheme = make_scheme(scheme_name, m, p);

  TieBreakPolicy policy;
  if (tie_break == "adversarial") {
    policy = TieBreakPolicy::adversarial();
  } else if (tie_break == "first") {
    policy = TieBreakPolicy::first();
  } else if (tie_break == "scripted") {
    if (!script || !order) throw InputError("a scripted tie-break needs an order and a script");
    std::vector<ItemSet> choices;
    for (const auto& c : *script) choices.push_back(m.item_set(c));
    policy = TieBreakPolicy::scripted(std::move(choices));
  } else {
    throw InputError("unknown tie-break '" + tie_break + "'");
  }

  ReportInput in;
  in.scheme = scheme->name();
  in.tie_break = tie_break;
  in.max_traces = max_traces;
  SimulationOptions opts;
  opts.max_traces = max_traces;
  SimulationResult r;
  {
    py::gil_scoped_release release;
    if (order) {
      std::vector<std::size_t> idx;
      for (const auto& n : *order) idx.push_back(m.agent_index(n));
      in.order = idx;
      r = run_order(m, *scheme, idx, policy, opts);
    } else {
      r = run_all_orders(m, *scheme, policy, opts);
    }
    try {
      in.optimum = brute_force_optimum(m).welfare;
    } catch (const CapacityError&) {
    }
  }
  return render_report(m, in, r);
}

py::dict feasibility(const std::string& text) {
  const LinearSystem sys = parse_system(text);
  const FeasibilityResult r = feasible(sys);
  py::dict out;
  out["feasible"] = r.feasible;
  if (r.feasible) {
    NamedPrices point;
    for (std::size_t j = 0; j < sys.variables().size(); ++j) point[sys.variables()[j]] = r.point[j].str();
    out["point"] = point;
    out["certificate"] = py::none();
  } else {
    std::vector<std::string> y;
    for (const auto& x : r.multipliers) y.push_back(x.str());
    out["point"] = py::none();
    out["multipliers"] = y;
    out["certificate"] = format_certificate(sys, r);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_seqprice, mod) {
  mod.doc() = "Exact posted-price mechanisms for sequentially arriving buyers";

  auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(mod, "InputError", base.ptr());
  py::register_exception<ParseError>(mod, "ParseError", mod.attr("InputError").ptr());
  py::register_exception<PreconditionError>(mod, "PreconditionError", base.ptr());
  py::register_exception<CapacityError>(mod, "CapacityError", base.ptr());
  py::register_exception<InvariantViolation>(mod, "InvariantViolation", base.ptr());

  py::class_<Market>(mod, "Market")
      .def_property_readonly("items", &Market::items)
      .def_property_readonly("agents",
                             [](const Market& m) {
                               std::vector<std::string> out;
                               for (const auto& a : m.agents()) out.push_back(a.name);
                               return out;
                             })
      .def(
          "value",
          [](const Market& m, const std::string& agent, const std::vector<std::string>& items) {
            return m.value(m.agent_index(agent), m.item_set(items)).str();
          },
          py::arg("agent"), py::arg("items"))
      .def("kind", [](const Market& m, const std::string& agent) {
        return std::string(kind_name(m.valuation(m.agent_index(agent)).kind()));
      })
      .def("dump", &dump_market)
      .def("__repr__", [](const Market& m) {
        return "<Market " + std::to_string(m.agent_count()) + " agents, " + std::to_string(m.item_count()) +
               " items>";
      });

  mod.def("parse_market", [](const std::string& text) { return parse_market(text); }, py::arg("text"));
  mod.def("load_market", &load_market, py::arg("path"));
  mod.def(
      "builtin_market",
      [](const std::string& name) {
        if (name == "alice_bob") return fixtures::alice_bob();
        if (name == "cyclic_three") return fixtures::cyclic_three();
        if (name == "coverage") return fixtures::coverage_instance();
        throw InputError("unknown built-in market '" + name + "'");
      },
      py::arg("name"));

  mod.def(
      "optimum",
      [](const Market& m) {
        const auto o = brute_force_optimum(m);
        return py::make_tuple(from_allocation(m, o.allocation), o.welfare.str());
      },
      py::arg("market"), "Brute-force welfare-maximizing allocation and its welfare.");
  mod.def(
      "unique_optimum",
      [](const Market& m) -> std::optional<NamedBundles> {
        if (auto a = check_unique_optimum(m)) return from_allocation(m, *a);
        return std::nullopt;
      },
      py::arg("market"));
  mod.def(
      "welfare",
      [](const Market& m, const NamedBundles& x) { return welfare(m, to_allocation(m, x)).str(); },
      py::arg("market"), py::arg("allocation"));
  mod.def(
      "demand",
      [](const Market& m, const std::string& agent, const NamedPrices& p,
         const std::optional<std::vector<std::string>>& available) {
        const ItemSet avail = available ? m.item_set(*available) : m.all_items();
        std::vector<std::vector<std::string>> out;
        for (auto s : demand_sets(m, m.agent_index(agent), avail, to_prices(m, p))) out.push_back(m.item_names(s));
        return out;
      },
      py::arg("market"), py::arg("agent"), py::arg("prices"), py::arg("available") = py::none(),
      "Demanded bundles in which every item adds value.");
  mod.def(
      "is_gross_substitutes",
      [](const Market& m, const std::string& agent) { return check_gross_substitutes(m.valuation(m.agent_index(agent))); },
      py::arg("market"), py::arg("agent"));
  mod.def(
      "is_superadditive",
      [](const Market& m, const std::string& agent) { return check_superadditive(m.valuation(m.agent_index(agent))); },
      py::arg("market"), py::arg("agent"));

  mod.def(
      "dynamic_matching_prices",
      [](const Market& m, const std::optional<std::vector<std::string>>& remaining,
         const std::optional<std::vector<std::string>>& unsold) {
        const ItemSet items = unsold ? m.item_set(*unsold) : m.all_items();
        return from_prices(m, dynamic_matching_prices(m, agent_set(m, remaining), items).prices);
      },
      py::arg("market"), py::arg("remaining") = py::none(), py::arg("unsold") = py::none());
  mod.def(
      "gs_unique_prices", [](const Market& m) { return from_prices(m, gs_unique_static_prices(m).prices); },
      py::arg("market"));
  mod.def(
      "static_half_prices",
      [](const Market& m) { return from_bundles(m, static_half_bundle_prices(m, covering_optimal_partition(m))); },
      py::arg("market"));
  mod.def(
      "sapb",
      [](const Market& m, const std::optional<NamedBundles>& initial) {
        const auto start = initial ? to_allocation(m, *initial).bundles : covering_optimal_partition(m);
        const auto r = sapb(m, start);
        py::dict out;
        out["bundles"] = from_allocation(m, Allocation{r.bundles});
        out["prices"] = from_bundles(m, r.prices);
        out["delta"] = r.delta.str();
        out["epsilon"] = r.epsilon.str();
        out["merges"] = r.merges;
        return out;
      },
      py::arg("market"), py::arg("initial") = py::none());
  mod.def(
      "walrasian_violation",
      [](const Market& m, const NamedPrices& p, const NamedBundles& x) {
        return walrasian_violation(m, to_allocation(m, x), to_prices(m, p));
      },
      py::arg("market"), py::arg("prices"), py::arg("allocation"));

  mod.def("scheme_names", &scheme_names);
  mod.def("simulate", &simulate, py::arg("market"), py::arg("scheme"), py::arg("prices") = py::none(),
          py::arg("order") = py::none(), py::arg("tie_break") = "adversarial", py::arg("script") = py::none(),
          py::arg("max_traces") = 50, "Runs the scheme and returns the JSON report.");
  mod.def("feasible", &feasibility, py::arg("system"), "Fourier-Motzkin verdict for a system in text form.");
}
