#ifndef SLAMJS_GENERATE_HPP
#define SLAMJS_GENERATE_HPP

#include <functional>
#include <random>

#include "slamjs/ast.hpp"
#include "slamjs/eval.hpp"

namespace slamjs {

struct GenOptions {
  int max_depth = 5;
  long eval_fuel = 10000;
  // Candidate programs per call before falling back to a constant.
  int max_attempts = 200;
};

struct Generated {
  Expr program;       // relabelled, evaluates to a value within eval_fuel
  EvalResult result;  // outcome is always Outcome::Value
};

// Draw random programs until one evaluates to a value. Shapes are biased so
// most results are constants (possibly under a chain of markers); programs
// whose result is a closure, box or record are kept only occasionally.
// All randomness comes from `rng` via modular reduction, so a fixed seed
// reproduces the same stream on any platform.
Generated generate_terminating(std::mt19937_64& rng,
                               const GenOptions& opts = {});

// Greedy minimization for failure reports: repeatedly replaces subtrees with
// a constant or strips a marker while `still_fails` keeps holding on the
// relabelled candidate. `budget` caps the number of predicate calls.
Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& still_fails,
            int budget = 200);

// Number of labelled nodes in the tree.
int node_count(const Expr& e);

}  // namespace slamjs

#endif  // SLAMJS_GENERATE_HPP
