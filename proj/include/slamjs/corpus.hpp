#ifndef SLAMJS_CORPUS_HPP
#define SLAMJS_CORPUS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slamjs/ast.hpp"

namespace slamjs {

// A checked-in program with its expected analysis results and, where
// meaningful, its final value (pretty-printed, label-free).
struct CorpusEntry {
  std::string name;
  std::string source;
  std::set<Marker> depends_simple;
  std::set<Marker> depends_improved;
  std::optional<std::string> final_value;
};

// Marker-analysis showcase: each program exercises one way dependencies do
// or do not reach the result (lifting through control flow, staged code
// capturing rebound variables, prototype lookups, function-encoded state).
const std::vector<CorpusEntry>& corpus();

// Small evaluator showcase used by the semantics tests: plain control flow,
// splicing, dynamic capture, and marker lifting.
const std::vector<CorpusEntry>& semantics_examples();

}  // namespace slamjs

#endif  // SLAMJS_CORPUS_HPP
