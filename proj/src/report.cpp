#include "slamjs/report.hpp"

#include <json.hpp>

#include "slamjs/printer.hpp"

namespace slamjs {

using json = nlohmann::ordered_json;

namespace {

json abs_set_to_json(const std::set<AbsVal>& vals) {
  json arr = json::array();
  for (const auto& v : vals) arr.push_back(to_string(v));
  return arr;
}

json cfa_to_object(const CfaResult& cfa) {
  json out;
  out["variant"] = cfa.variant == CfaVariant::Simple ? "simple" : "improved";
  out["universe"] = json::array();
  for (const auto& s : cfa.universe) out["universe"].push_back(s);
  json gamma;
  for (const auto& [label, vals] : cfa.gamma)
    gamma[std::to_string(label)] = abs_set_to_json(vals);
  out["gamma"] = std::move(gamma);
  json rho;
  for (const auto& [var, vals] : cfa.rho)
    rho[to_string(var)] = abs_set_to_json(vals);
  out["rho"] = std::move(rho);
  if (cfa.variant == CfaVariant::Improved) {
    json res;
    for (const auto& [label, cells] : cfa.resolution) {
      json arr = json::array();
      for (const auto& cell : cells) arr.push_back(to_string(cell));
      res[std::to_string(label)] = std::move(arr);
    }
    out["resolution"] = std::move(res);
  }
  return out;
}

json flows_to_object(const FlowGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges) {
    json entry;
    entry["src"] = to_string(e.src);
    entry["dst"] = to_string(e.dst);
    entry["kind"] = e.direct ? "direct" : "indirect";
    entry["origin"] = e.origin;
    edges.push_back(std::move(entry));
  }
  json out;
  out["edges"] = std::move(edges);
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string cfa_to_json(const CfaResult& cfa, int indent) {
  return cfa_to_object(cfa).dump(indent);
}

std::string flows_to_json(const FlowGraph& graph, int indent) {
  return flows_to_object(graph).dump(indent);
}

std::string flows_to_dot(const FlowGraph& graph) {
  std::string out = "digraph flows {\n";
  for (const auto& e : graph.edges) {
    out += "  " + dot_quote(to_string(e.src)) + " -> " +
           dot_quote(to_string(e.dst));
    out += " [label=" + dot_quote(e.origin);
    if (!e.direct) out += ", style=dashed";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

std::string depends_to_json(const std::set<Marker>& markers, int indent) {
  json arr = json::array();
  for (const auto& m : markers) arr.push_back(m);
  json out;
  out["depends"] = std::move(arr);
  return out.dump(indent);
}

std::string depends_to_line(const std::set<Marker>& markers) {
  std::string out = "depends: {";
  bool first = true;
  for (const auto& m : markers) {
    if (!first) out += ", ";
    first = false;
    out += m;
  }
  out += "}";
  return out;
}

std::string analyze_to_json(const Expr& program, const CfaResult& cfa,
                            const FlowGraph& graph, int indent) {
  json out;
  out["program"] = to_string(program);
  json dep = json::array();
  for (const auto& m : graph.reaching_markers(program.label))
    dep.push_back(m);
  out["depends"] = std::move(dep);
  out["cfa"] = cfa_to_object(cfa);
  out["flows"] = flows_to_object(graph);
  return out.dump(indent);
}

std::string eval_result_to_json(const EvalResult& result, int indent) {
  json out;
  switch (result.outcome) {
    case Outcome::Value: out["outcome"] = "value"; break;
    case Outcome::Stuck: out["outcome"] = "stuck"; break;
    case Outcome::OutOfFuel: out["outcome"] = "out-of-fuel"; break;
  }
  out["steps"] = result.steps;
  out["final"] = to_string(result.final_expr);
  if (result.outcome == Outcome::Stuck && result.stuck)
    out["stuck_reason"] = stuck_reason_name(*result.stuck);
  return out.dump(indent);
}

std::string trace_line_to_json(long step, int stage, const std::string& rule,
                               const Expr& after) {
  json out;
  out["step"] = step;
  out["stage"] = stage;
  out["rule"] = rule;
  out["expr"] = to_string(after);
  return out.dump();
}

}  // namespace slamjs
