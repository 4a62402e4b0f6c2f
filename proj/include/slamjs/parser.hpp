#ifndef SLAMJS_PARSER_HPP
#define SLAMJS_PARSER_HPP

#include <stdexcept>
#include <string>

#include "slamjs/ast.hpp"

namespace slamjs {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseOptions {
  // Accept forms that only arise during evaluation: the hole `_`,
  // substitutions `(t, {x ↦ v})` and `run e in {x ↦ v}`. With this set,
  // `run e in { … }` is read as run-in, so a record literal directly after
  // a let's `in` needs parentheses.
  bool allow_intermediate = false;
};

// Grammar, loosest to tightest:
//   expr    := eq
//   eq      := sub ('==' sub)?                    -- non-associative
//   sub     := unary ('-' unary)?                 -- non-associative
//   unary   := ('box'|'unbox'|'run'|'typeof') unary
//            | 'del' unary                        -- operand must be e[s]
//            | postfix
//   postfix := primary ( '(' expr ')' | '[' expr ']' ('=' expr)? )*
//              -- a '= expr' tail makes a field write and ends the chain
//   primary := constants | ident | '-' number | fun | if | let | record
//            | '(' MARKER ':' expr ')' | '(' expr ')'
//   let x = e1 in e2 desugars to (fun (x) { e2 })(e1).
// Variables are lowercase identifiers, markers start with a capital.
// Comments run from // to end of line. Labels are assigned to the desugared
// tree in post order, children before parents, left to right.
Expr parse_program(const std::string& src, const ParseOptions& opts = {});

}  // namespace slamjs

#endif  // SLAMJS_PARSER_HPP
