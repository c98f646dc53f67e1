#include "seqprice/io.hpp"

#include <fstream>
#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "seqprice/errors.hpp"

namespace seqprice {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& msg) {
  const auto mark = node.Mark();
  if (mark.is_null()) throw ParseError(msg, 0, 0);
  throw ParseError(msg, static_cast<std::size_t>(mark.line) + 1, static_cast<std::size_t>(mark.column) + 1);
}

YAML::Node load_document(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line) + 1, static_cast<std::size_t>(e.mark.column) + 1);
  }
}

void expect_map(const YAML::Node& node, const std::string& what) {
  if (!node.IsMap()) fail_at(node, what + " must be a mapping");
}

void expect_seq(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) fail_at(node, what + " must be a list");
}

std::string scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail_at(node, what + " must be a scalar");
  return node.Scalar();
}

void only_fields(const YAML::Node& node, std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : node) {
    const std::string key = scalar(kv.first, "field name");
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail_at(kv.first, "unknown field '" + key + "'");
  }
}

const YAML::Node required(const YAML::Node& node, const std::string& key) {
  const YAML::Node child = node[key];
  if (!child) fail_at(node, "missing field '" + key + "'");
  return child;
}

Rational rational(const YAML::Node& node) {
  const std::string text = scalar(node, "number");
  try {
    return Rational::parse(text);
  } catch (const InputError&) {
    fail_at(node, "'" + text + "' is not an exact rational (expected p or p/q)");
  }
}

std::size_t whole(const YAML::Node& node, const std::string& what) {
  const Rational r = rational(node);
  if (!r.is_integer() || r.sign() < 0) fail_at(node, what + " must be a non-negative integer");
  return static_cast<std::size_t>(r.raw().get_num().get_ui());
}

std::vector<std::string> name_list(const YAML::Node& node, const std::string& what) {
  expect_seq(node, what);
  std::vector<std::string> out;
  for (const auto& n : node) out.push_back(scalar(n, what + " entry"));
  return out;
}

ItemSet item_list(const YAML::Node& node, const std::vector<std::string>& items, const std::string& what) {
  expect_seq(node, what);
  ItemSet s;
  for (const auto& n : node) {
    const std::string name = scalar(n, "item");
    std::size_t i = 0;
    while (i < items.size() && items[i] != name) ++i;
    if (i == items.size()) fail_at(n, "unknown item '" + name + "'");
    if (s.contains(i)) fail_at(n, "item '" + name + "' listed twice");
    s = s.with(i);
  }
  return s;
}

std::size_t item_key(const YAML::Node& key, const std::vector<std::string>& items) {
  const std::string name = scalar(key, "item");
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i] == name) return i;
  fail_at(key, "unknown item '" + name + "'");
}

// Per-item numbers given as a mapping item -> value; every item required.
std::vector<Rational> per_item(const YAML::Node& node, const std::vector<std::string>& items,
                               const std::string& what) {
  expect_map(node, what);
  std::vector<std::optional<Rational>> seen(items.size());
  for (const auto& kv : node) {
    const std::size_t i = item_key(kv.first, items);
    if (seen[i]) fail_at(kv.first, "item '" + items[i] + "' listed twice");
    seen[i] = rational(kv.second);
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!seen[i]) fail_at(node, what + " is missing item '" + items[i] + "'");
    out.push_back(*seen[i]);
  }
  return out;
}

template <class F>
auto guarded(const YAML::Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    fail_at(node, e.what());
  }
}

Valuation parse_valuation(const YAML::Node& node, const std::vector<std::string>& items) {
  expect_map(node, "valuation");
  const std::string type = scalar(required(node, "type"), "type");
  const std::size_t m = items.size();
  if (type == "unit_demand") {
    only_fields(node, {"type", "values"});
    auto values = per_item(required(node, "values"), items, "values");
    return guarded(node, [&] { return Valuation::unit_demand(std::move(values)); });
  }
  if (type == "explicit") {
    only_fields(node, {"type", "values"});
    if (m > 16) fail_at(node, "explicit tables are limited to 16 items");
    const YAML::Node values = required(node, "values");
    expect_seq(values, "values");
    std::vector<std::optional<Rational>> table(std::size_t{1} << m);
    table[0] = Rational(0);
    for (const auto& entry : values) {
      expect_map(entry, "table entry");
      only_fields(entry, {"bundle", "value"});
      const ItemSet s = item_list(required(entry, "bundle"), items, "bundle");
      if (s.empty()) {
        if (rational(required(entry, "value")) != Rational(0)) fail_at(entry, "the empty bundle must be worth 0");
        continue;
      }
      if (table[s.bits()] && s.bits() != 0) fail_at(entry, "bundle listed twice");
      table[s.bits()] = rational(required(entry, "value"));
    }
    std::vector<Rational> full;
    for (std::uint32_t s = 0; s < table.size(); ++s) {
      if (!table[s]) {
        std::string name;
        for (auto i : ItemSet(s).indices()) name += (name.empty() ? "" : ",") + items[i];
        fail_at(values, "missing value for bundle {" + name + "}");
      }
      full.push_back(*table[s]);
    }
    return guarded(node, [&] { return Valuation::explicit_table(m, std::move(full)); });
  }
  if (type == "k_demand_item_dependent") {
    only_fields(node, {"type", "k", "weights", "interested"});
    const std::size_t k = whole(required(node, "k"), "k");
    auto weights = per_item(required(node, "weights"), items, "weights");
    ItemSet interested = ItemSet::first_n(m);
    if (node["interested"]) interested = item_list(node["interested"], items, "interested");
    return guarded(node, [&] { return Valuation::k_demand(k, interested, std::move(weights)); });
  }
  if (type == "coverage") {
    only_fields(node, {"type", "elements", "covers"});
    const YAML::Node elements = required(node, "elements");
    expect_map(elements, "elements");
    std::map<std::string, Rational> weights;
    for (const auto& kv : elements) {
      const std::string name = scalar(kv.first, "element");
      if (weights.count(name)) fail_at(kv.first, "element '" + name + "' listed twice");
      weights[name] = rational(kv.second);
    }
    const YAML::Node covers = required(node, "covers");
    expect_map(covers, "covers");
    std::vector<std::vector<std::string>> cover(m);
    std::vector<bool> seen(m, false);
    for (const auto& kv : covers) {
      const std::size_t i = item_key(kv.first, items);
      if (seen[i]) fail_at(kv.first, "item '" + items[i] + "' listed twice");
      seen[i] = true;
      cover[i] = name_list(kv.second, "cover");
      for (std::size_t j = 0; j < cover[i].size(); ++j)
        if (!weights.count(cover[i][j])) fail_at(kv.second[j], "unknown element '" + cover[i][j] + "'");
    }
    return guarded(node, [&] { return build_coverage_valuation(m, weights, cover); });
  }
  fail_at(node["type"], "unknown valuation type '" + type + "'");
}

void emit_number(YAML::Emitter& out, const Rational& r) { out << YAML::DoubleQuoted << r.str(); }

void emit_items(YAML::Emitter& out, const Market& m, ItemSet s) {
  out << YAML::Flow << YAML::BeginSeq;
  for (auto i : s.indices()) out << m.items()[i];
  out << YAML::EndSeq;
}

void emit_per_item(YAML::Emitter& out, const Market& m, const std::vector<Rational>& values) {
  out << YAML::Flow << YAML::BeginMap;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << YAML::Key << m.items()[i] << YAML::Value;
    emit_number(out, values[i]);
  }
  out << YAML::EndMap;
}

}  // namespace

Market parse_market(std::string_view yaml) {
  const YAML::Node doc = load_document(yaml);
  expect_map(doc, "market");
  only_fields(doc, {"items", "agents"});
  const auto items = name_list(required(doc, "items"), "items");
  const YAML::Node agents_node = required(doc, "agents");
  expect_seq(agents_node, "agents");
  std::vector<Agent> agents;
  for (const auto& a : agents_node) {
    expect_map(a, "agent");
    only_fields(a, {"name", "valuation"});
    agents.push_back(Agent{scalar(required(a, "name"), "name"), parse_valuation(required(a, "valuation"), items)});
  }
  return guarded(doc, [&] { return Market(items, std::move(agents)); });
}

Market load_market(const std::string& path) { return parse_market(read_text_file(path)); }

std::string dump_market(const Market& m) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "items" << YAML::Value;
  emit_items(out, m, m.all_items());
  out << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
  for (const auto& agent : m.agents()) {
    out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << agent.name;
    out << YAML::Key << "valuation" << YAML::Value << YAML::BeginMap;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, UnitDemand>) {
            out << YAML::Key << "type" << YAML::Value << "unit_demand";
            out << YAML::Key << "values" << YAML::Value;
            emit_per_item(out, m, v.values);
          } else if constexpr (std::is_same_v<T, ExplicitTable>) {
            out << YAML::Key << "type" << YAML::Value << "explicit";
            out << YAML::Key << "values" << YAML::Value << YAML::BeginSeq;
            for (std::uint32_t s = 1; s < v.table.size(); ++s) {
              out << YAML::Flow << YAML::BeginMap << YAML::Key << "bundle" << YAML::Value;
              emit_items(out, m, ItemSet(s));
              out << YAML::Key << "value" << YAML::Value;
              emit_number(out, v.table[s]);
              out << YAML::EndMap;
            }
            out << YAML::EndSeq;
          } else if constexpr (std::is_same_v<T, KDemandItemDependent>) {
            out << YAML::Key << "type" << YAML::Value << "k_demand_item_dependent";
            out << YAML::Key << "k" << YAML::Value << v.k;
            out << YAML::Key << "interested" << YAML::Value;
            emit_items(out, m, v.interested);
            out << YAML::Key << "weights" << YAML::Value;
            emit_per_item(out, m, v.weights);
          } else {
            out << YAML::Key << "type" << YAML::Value << "coverage";
            out << YAML::Key << "elements" << YAML::Value << YAML::Flow << YAML::BeginMap;
            for (std::size_t e = 0; e < v.elements.size(); ++e) {
              out << YAML::Key << v.elements[e] << YAML::Value;
              emit_number(out, v.element_weights[e]);
            }
            out << YAML::EndMap;
            out << YAML::Key << "covers" << YAML::Value << YAML::BeginMap;
            for (std::size_t i = 0; i < v.covers.size(); ++i) {
              out << YAML::Key << m.items()[i] << YAML::Value << YAML::Flow << YAML::BeginSeq;
              for (std::size_t e = 0; e < v.elements.size(); ++e)
                if ((v.covers[i] >> e) & 1U) out << v.elements[e];
              out << YAML::EndSeq;
            }
            out << YAML::EndMap;
          }
        },
        agent.valuation.data());
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ItemPrices parse_prices(std::string_view yaml, const Market& m) {
  const YAML::Node doc = load_document(yaml);
  expect_map(doc, "prices document");
  only_fields(doc, {"prices"});
  return ItemPrices(per_item(required(doc, "prices"), m.items(), "prices"));
}

Allocation parse_allocation(std::string_view yaml, const Market& m) {
  const YAML::Node doc = load_document(yaml);
  expect_map(doc, "allocation document");
  only_fields(doc, {"allocation"});
  const YAML::Node node = required(doc, "allocation");
  Allocation x = Allocation::empty(m.agent_count());
  if (node.IsNull()) return x;
  expect_map(node, "allocation");
  std::vector<bool> seen(m.agent_count(), false);
  for (const auto& kv : node) {
    const std::string name = scalar(kv.first, "agent");
    std::size_t a = 0;
    while (a < m.agent_count() && m.agents()[a].name != name) ++a;
    if (a == m.agent_count()) fail_at(kv.first, "unknown agent '" + name + "'");
    if (seen[a]) fail_at(kv.first, "agent '" + name + "' listed twice");
    seen[a] = true;
    x.bundles[a] = item_list(kv.second, m.items(), "bundle");
  }
  for (std::size_t a = 0; a < m.agent_count(); ++a)
    for (std::size_t b = a + 1; b < m.agent_count(); ++b)
      if (!x.bundles[a].disjoint(x.bundles[b])) fail_at(node, "allocated bundles overlap");
  return x;
}

std::vector<ItemSet> parse_script(std::string_view yaml, const Market& m) {
  const YAML::Node doc = load_document(yaml);
  expect_map(doc, "script document");
  only_fields(doc, {"choices"});
  const YAML::Node node = required(doc, "choices");
  expect_seq(node, "choices");
  std::vector<ItemSet> out;
  for (const auto& c : node) out.push_back(item_list(c, m.items(), "choice"));
  return out;
}

namespace {

using Json = nlohmann::ordered_json;

Json item_json(const Market& m, ItemSet s) {
  Json a = Json::array();
  for (auto i : s.indices()) a.push_back(m.items()[i]);
  return a;
}

Json trace_json(const Market& m, const Trace& t) {
  Json j;
  Json order = Json::array();
  for (auto a : t.order) order.push_back(m.agents()[a].name);
  j["order"] = order;
  Json rounds = Json::array();
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const auto& rec = t.rounds[r];
    Json round;
    round["round"] = r + 1;
    round["agent"] = m.agents()[rec.agent].name;
    Json offer;
    offer["pricing"] = rec.offer->item_pricing ? "items" : "bundles";
    Json bundles = Json::array();
    for (std::size_t b = 0; b < rec.offer->prices.bundles.size(); ++b) {
      Json entry;
      entry["items"] = item_json(m, rec.offer->prices.bundles[b]);
      entry["price"] = rec.offer->prices.prices[b].str();
      bundles.push_back(entry);
    }
    offer["bundles"] = bundles;
    round["offer"] = offer;
    Json demand = Json::array();
    for (auto s : rec.demand) demand.push_back(item_json(m, s));
    round["demand"] = demand;
    round["chosen"] = item_json(m, rec.chosen);
    round["payment"] = rec.payment.str();
    rounds.push_back(round);
  }
  j["rounds"] = rounds;
  Json alloc = Json::object();
  for (std::size_t a = 0; a < m.agent_count(); ++a) alloc[m.agents()[a].name] = item_json(m, t.allocation.bundles[a]);
  j["allocation"] = alloc;
  j["welfare"] = t.welfare.str();
  return j;
}

}  // namespace

std::string render_report(const Market& m, const ReportInput& in, const SimulationResult& r) {
  Json j;
  j["scheme"] = in.scheme;
  if (in.order) {
    Json order = Json::array();
    for (auto a : *in.order) order.push_back(m.agents()[a].name);
    j["orders"] = order;
  } else {
    j["orders"] = "all";
  }
  j["tie_break"] = in.tie_break;
  j["items"] = item_json(m, m.all_items());
  Json agents = Json::array();
  for (const auto& a : m.agents()) agents.push_back(a.name);
  j["agents"] = agents;
  j["worst_welfare"] = r.worst_welfare.str();
  if (in.optimum) {
    j["opt"] = in.optimum->str();
    j["ratio"] = in.optimum->is_zero() ? Rational(1).str() : (r.worst_welfare / *in.optimum).str();
  } else {
    j["opt"] = nullptr;
    j["ratio"] = nullptr;
  }
  j["trace_count"] = r.trace_count;
  j["nodes"] = r.nodes;
  j["worst"] = r.trace_count > 0 ? trace_json(m, r.worst) : Json(nullptr);
  Json traces = Json::array();
  const std::size_t keep = std::min(in.max_traces, r.traces.size());
  for (std::size_t t = 0; t < keep; ++t) traces.push_back(trace_json(m, r.traces[t]));
  j["traces_included"] = keep;
  j["truncated"] = keep < r.trace_count;
  j["traces"] = traces;
  return j.dump(2) + "\n";
}

}  // namespace seqprice
