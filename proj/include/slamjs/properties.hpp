#ifndef SLAMJS_PROPERTIES_HPP
#define SLAMJS_PROPERTIES_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "slamjs/ast.hpp"
#include "slamjs/cfa.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/generate.hpp"

namespace slamjs {

// Randomized checks tying the evaluator and the analyses together. Each
// check returns false with an explanation instead of throwing, so the same
// code backs the unit tests, the acceptance gate and the CLI.

// Marker transparency: erasing every marker from a program gives a run whose
// states match the original run's marker-erased states step for step (lift
// and marker bookkeeping steps collapse into their neighbours). Labels are
// ignored in the comparison; variable lookup re-tags fetched values, so the
// two runs tag mirror nodes differently.
bool check_simulation(const Expr& program, const EvalOptions& eval,
                      std::string* why = nullptr);

// Erasing exactly the marked subtrees whose markers do not survive into the
// result leaves a program that still reaches the very same result.
bool check_stability(const Expr& program, const EvalOptions& eval,
                     std::string* why = nullptr);

// True for results of the shape the marker-flow check applies to: a
// constant under zero or more markers.
bool constant_like_result(const Expr& v);

// Every marker present in the actual result is reported by the analysis.
bool check_flow_soundness(const Expr& final_value, const std::set<Marker>& reported,
                          std::string* why = nullptr);

// The value analysis predicts the shape of the actual result at the root:
// the constant's tag, the closure's parameter and body, or at least one
// record / box abstraction.
bool check_value_soundness(const Expr& final_value, Label root,
                           const CfaResult& cfa, std::string* why = nullptr);

// Along a run, whenever the whole-program label changes, the new label flows
// into the old one in the flow graph of the original program.
bool check_preservation(const Expr& program, const EvalOptions& eval,
                        std::string* why = nullptr);

// Differential check for one marker the analysis claims the result does not
// depend on: constants inside subtrees marked with it are replaced at
// random; every terminating variant must produce the same result modulo
// markers and labels. Trials whose variant gets stuck or runs out of fuel
// are not compared (the analysis does not speak about termination).
struct NoninterferenceOutcome {
  int trials = 0;
  int compared = 0;
  int mismatched = 0;
  bool ok() const { return mismatched == 0; }
};
NoninterferenceOutcome check_noninterference(const Expr& program,
                                             const Marker& marker, int trials,
                                             std::uint64_t seed,
                                             const EvalOptions& eval);

struct CheckCounts {
  int checked = 0;
  int passed = 0;
  bool all() const { return passed == checked; }
};

struct PropertyFailure {
  std::string property;
  std::string program;  // shrunk, pretty-printed
  std::string detail;
};

struct PropertyReport {
  int programs = 0;
  CheckCounts simulation;
  CheckCounts stability;
  CheckCounts flow_soundness_simple;
  CheckCounts flow_soundness_improved;
  CheckCounts value_soundness_simple;
  CheckCounts value_soundness_improved;
  CheckCounts preservation;
  std::vector<PropertyFailure> failures;
  bool all_passed() const;
};

struct PropertyOptions {
  std::uint64_t seed = 0;
  int count = 500;
  GenOptions gen;
  EvalOptions eval;
  bool preservation = false;  // extra spot-check, slower
  int max_failures = 10;      // cap on collected (and shrunk) failures
};

PropertyReport run_property_suite(const PropertyOptions& opts);

std::string report_to_text(const PropertyReport& report);

}  // namespace slamjs

#endif  // SLAMJS_PROPERTIES_HPP
