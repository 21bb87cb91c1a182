#pragma once

#include <json.hpp>

#include "factor_forge/colouring.hpp"
#include "factor_forge/extremal.hpp"
#include "factor_forge/factorizer.hpp"
#include "factor_forge/oracle.hpp"
#include "factor_forge/thresholds.hpp"

// JSON views of the library's reports. Key names match schema/*.schema.json.
namespace factor_forge::json_io {

using json = nlohmann::ordered_json;

inline json to_json(const ThresholdParams& p) {
  return {{"r", p.r}, {"s", p.s}, {"a", p.a}, {"t", p.t}, {"parity", to_string(p.parity())}};
}

inline json to_json(const Relation& rel) {
  return {{"left", rel.left},
          {"right", rel.right},
          {"relation", rel.kind == Relation::Kind::Equal ? "equal" : "at_most"},
          {"difference", rel.difference}};
}

inline json to_json(const FormulaValue& v) {
  json out{{"name", v.name}};
  switch (v.kind) {
    case FormulaValue::Kind::Integer: out["kind"] = "integer", out["value"] = v.value; break;
    case FormulaValue::Kind::Infinity: out["kind"] = "infinity", out["value"] = "inf"; break;
    case FormulaValue::Kind::Bounds: out["kind"] = "bounds", out["lower"] = v.lower, out["upper"] = v.upper; break;
    case FormulaValue::Kind::Undetermined: out["kind"] = "undetermined"; break;
  }
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

inline json to_json(const CrossCheckReport& rep) {
  json values = json::array(), agreements = json::array(), discrepancies = json::array();
  for (const auto& v : rep.values) values.push_back(to_json(v));
  for (const auto& r : rep.agreements) agreements.push_back(to_json(r));
  for (const auto& r : rep.discrepancies) discrepancies.push_back(to_json(r));
  return {{"params", to_json(rep.params)},
          {"values", values},
          {"agreements", agreements},
          {"discrepancies", discrepancies}};
}

inline json to_json(const FeasibleSet& fs) {
  return {{"lower", {{"num", fs.lower.num}, {"den", fs.lower.den}}},
          {"upper", {{"num", fs.upper.num}, {"den", fs.upper.den}}},
          {"lower_open", fs.lower_open},
          {"upper_open", fs.upper_open},
          {"side_condition_met", fs.side_condition_met},
          {"members", fs.members}};
}

inline json to_json(const SimpleGraph& g, const Factorization& f) {
  json factors = json::array();
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    const Edge& e = g.edge(id);
    factors.push_back({e.u, e.v, f.factor_of[static_cast<std::size_t>(id)]});
  }
  return {{"x", f.x}, {"r", f.r}, {"a", f.a}, {"edges", factors}};
}

inline json to_json(const VerificationReport& rep) {
  json violations = json::array();
  for (const auto& v : rep.violations) {
    json item{{"message", v.message}};
    if (v.factor >= 0) item["factor"] = v.factor;
    if (v.vertex >= 0) item["vertex"] = v.vertex;
    if (v.edge >= 0) item["edge"] = v.edge;
    violations.push_back(item);
  }
  return {{"valid", rep.ok()}, {"violations", violations}};
}

inline json to_json(const CountingCertificate& c) {
  return {{"total_edges", c.total_edges},
          {"per_factor_lower_bound", c.per_factor_lower_bound},
          {"aggregate_lower_bound", c.aggregate_lower_bound},
          {"contradiction_margin", c.contradiction_margin},
          {"odd_factors", c.odd_factors}};
}

/// Sidecar for a boundary instance written next to its edge list.
inline json to_json(const BoundaryInstance& inst) {
  json out{{"family", inst.family},
           {"r", inst.r},
           {"s", inst.s},
           {"a", inst.a},
           {"d", inst.d},
           {"x", inst.x},
           {"vertices", inst.graph.vertex_count()},
           {"edges", inst.graph.edge_count()},
           {"part_m_size", inst.part_m.size()},
           {"part_n_size", inst.part_n.size()},
           {"h_edges", inst.h_edges.size()},
           {"outside_stated_hypothesis", inst.outside_stated_hypothesis}};
  out["certificate"] = inst.certificate ? to_json(*inst.certificate) : json(nullptr);
  return out;
}

inline json to_json(const SimpleGraph& g, const OracleVerdict& v) {
  json out{{"exists", v.exists}, {"exhaustive", v.exhaustive}, {"nodes_explored", v.nodes_explored}};
  out["witness"] = v.witness ? to_json(g, *v.witness) : json(nullptr);
  return out;
}

inline json to_json(const ConformanceReport& rep, bool with_cells = true) {
  using C = ConformanceCell::Category;
  json summary{{"graphs_checked", rep.graphs_checked}, {"graphs_skipped", rep.graphs_skipped}, {"cells", rep.cells.size()}};
  for (C c : {C::Agree, C::Disagree, C::SideConditionExcluded, C::EndpointWitnessed, C::EndpointGraphSpecific})
    summary[to_string(c)] = rep.count(c);
  json out{{"r", rep.r}, {"a", rep.a}, {"summary", summary}, {"oracle_nodes", rep.oracle_nodes}};
  if (with_cells) {
    json cells = json::array();
    for (const auto& c : rep.cells)
      cells.push_back({{"graph", c.graph_index},
                       {"x", c.x},
                       {"d", c.d},
                       {"s", c.s},
                       {"member", c.member},
                       {"in_closed_window", c.in_closed_window},
                       {"side_condition_met", c.side_condition_met},
                       {"oracle_exists", c.oracle_exists},
                       {"category", to_string(c.category)}});
    out["cells"] = cells;
  }
  return out;
}

}  // namespace factor_forge::json_io
