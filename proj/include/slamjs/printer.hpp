#ifndef SLAMJS_PRINTER_HPP
#define SLAMJS_PRINTER_HPP

#include <string>

#include "slamjs/ast.hpp"

namespace slamjs {

struct PrintOptions {
  // Append @label to every node and parenthesize compounds so the
  // attachment is unambiguous. Meant for traces and debugging output.
  bool show_labels = false;
};

// Shortest decimal form that round-trips (2.0 prints as "2").
std::string num_to_string(double v);

// Double-quoted, JSON-style escapes.
std::string quote_string(const std::string& s);

std::string const_to_string(const Const& k);

// Substitutions print as (t, {x ↦ v}), run-in as run e in {…}; both parse
// back only when the parser allows intermediate forms.
std::string to_string(const Expr& e, const PrintOptions& opts = {});

std::string env_to_string(const EnvPtr& env, const PrintOptions& opts = {});

}  // namespace slamjs

#endif  // SLAMJS_PRINTER_HPP
