#ifndef SLAMJS_REPORT_HPP
#define SLAMJS_REPORT_HPP

#include <set>
#include <string>

#include "slamjs/ast.hpp"
#include "slamjs/cfa.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/ifa.hpp"

namespace slamjs {

// Serialization for the command-line tool and the test drivers. Everything
// here iterates ordered containers only, so repeated runs over the same
// input produce byte-identical text.

// {"variant", "universe", "gamma", "rho", "resolution"}; gamma keys are the
// labels as decimal strings in numeric order.
std::string cfa_to_json(const CfaResult& cfa, int indent = 2);

// {"edges": [{"src", "dst", "kind": "direct"|"indirect", "origin"}]}
std::string flows_to_json(const FlowGraph& graph, int indent = 2);

// Graphviz digraph; indirect edges are dashed.
std::string flows_to_dot(const FlowGraph& graph);

std::string depends_to_json(const std::set<Marker>& markers, int indent = 2);

// "depends: {H, L}" / "depends: {}"
std::string depends_to_line(const std::set<Marker>& markers);

// Combined dump of one analysis run: variant, depends, value analysis and
// flow graph in a single object.
std::string analyze_to_json(const Expr& program, const CfaResult& cfa,
                            const FlowGraph& graph, int indent = 2);

std::string eval_result_to_json(const EvalResult& result, int indent = 2);

// Single-line JSON object for one trace entry.
std::string trace_line_to_json(long step, int stage, const std::string& rule,
                               const Expr& after);

}  // namespace slamjs

#endif  // SLAMJS_REPORT_HPP
