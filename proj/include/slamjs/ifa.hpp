#ifndef SLAMJS_IFA_HPP
#define SLAMJS_IFA_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slamjs/ast.hpp"
#include "slamjs/cfa.hpp"

namespace slamjs {

// Flow graph node: a term label, an abstract variable, or a marker.
struct FlowNode {
  enum Kind { Lbl, Var, Mark } kind = Lbl;
  Label label = -1;
  AbsVar var;
  Marker marker;

  static FlowNode lbl(Label l) { return {Lbl, l, {}, {}}; }
  static FlowNode var_cell(AbsVar v) { return {Var, -1, std::move(v), {}}; }
  static FlowNode mark(Marker m) { return {Mark, -1, {}, std::move(m)}; }

  auto key() const { return std::tie(kind, label, var, marker); }
  bool operator<(const FlowNode& o) const { return key() < o.key(); }
  bool operator==(const FlowNode& o) const { return key() == o.key(); }
};

std::string to_string(const FlowNode& n);

// direct: the value itself can flow; indirect: only influence over which
// value appears. Reachability treats both alike; dumps keep the distinction.
struct FlowEdge {
  FlowNode src, dst;
  bool direct = true;
  std::string origin;  // which analysis row produced it

  auto key() const { return std::tie(src, dst, direct, origin); }
  bool operator<(const FlowEdge& o) const { return key() < o.key(); }
};

struct FlowGraph {
  std::set<FlowEdge> edges;

  // Markers from which the given label is reachable.
  std::set<Marker> reaching_markers(Label target) const;
  bool reaches(const FlowNode& from, const FlowNode& to) const;
};

// Flow rows over the final value analysis: markers feed their node, values
// feed variables at bindings and writes, variables feed their occurrences,
// control positions (conditions, called functions, selectors, spliced
// templates) feed results indirectly.
FlowGraph analyze_flows(const Expr& program, const CfaResult& cfa);

// The markers that can influence the program's result: value analysis, flow
// rows, then reverse reachability from the root label.
std::set<Marker> depends(const Expr& program, CfaVariant variant);

}  // namespace slamjs

#endif  // SLAMJS_IFA_HPP
