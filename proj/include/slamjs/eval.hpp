#ifndef SLAMJS_EVAL_HPP
#define SLAMJS_EVAL_HPP

#include <functional>
#include <optional>
#include <string>

#include "slamjs/ast.hpp"

namespace slamjs {

enum class StuckReason {
  ApplyNonFunction,
  BranchNonBoolean,
  ReadNonRecord,
  SelectorNonString,
  UnboxNonBox,
  RunNonBox,
  UnboundVariable,
  HoleDemanded,
  MissingProtoField,
  PrimTypeError,
  // No rule applies and the shape is not reachable from source programs
  // (bare fun or unbox outside a box at stage 0, nested substitutions, ...).
  NoRule,
};

const char* stuck_reason_name(StuckReason r);

struct EvalOptions {
  long fuel = 100000;
  // Deliberately broken Lift-If that forgets its marker. Exists so tests can
  // demonstrate which properties catch the breakage.
  bool mutate_drop_lift_if_marker = false;
};

// One reduction somewhere inside e, which sits at the given stage.
// stepped=false and no stuck reason means e is a value at that stage.
struct StepResult {
  bool stepped = false;
  Expr expr;
  std::string rule;
  int stage = 0;
  std::optional<StuckReason> stuck;
};

StepResult step_once(const Expr& e, int stage = 0, const EvalOptions& opts = {});

enum class Outcome { Value, Stuck, OutOfFuel };

struct EvalResult {
  Outcome outcome = Outcome::Value;
  Expr final_expr;  // the value, or the whole stuck term
  std::optional<StuckReason> stuck;
  long steps = 0;
};

// Called after each step with the 1-based step number, the stage the redex
// fired at, the rule name, and the whole program afterwards.
using TraceFn =
    std::function<void(long step, int stage, const std::string& rule,
                       const Expr& after)>;

// Wraps the program in a substitution with the empty environment (keeping
// the root label) and reduces at stage 0 until a value, a stuck term, or
// fuel runs out.
EvalResult evaluate(const Expr& program, const EvalOptions& opts = {},
                    const TraceFn& trace = nullptr);

}  // namespace slamjs

#endif  // SLAMJS_EVAL_HPP
