#ifndef SLAMJS_CFA_HPP
#define SLAMJS_CFA_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slamjs/ast.hpp"

namespace slamjs {

enum class CfaVariant { Simple, Improved };

enum class AbsTag { Null, Undef, Bool, Num, Str, Fun, Box, Rec };

// Abstract value. Fun carries its parameter, body label and the fun node's
// own label (the binder); Box and Rec carry the body / record node label in
// `node`. Scalars use the tag alone.
struct AbsVal {
  AbsTag tag = AbsTag::Undef;
  std::string param;
  Label body = -1;
  Label node = -1;

  static AbsVal scalar(AbsTag t) { return {t, {}, -1, -1}; }
  static AbsVal fun(std::string p, Label body, Label binder) {
    return {AbsTag::Fun, std::move(p), body, binder};
  }
  static AbsVal box(Label body) { return {AbsTag::Box, {}, -1, body}; }
  static AbsVal rec(Label node) { return {AbsTag::Rec, {}, -1, node}; }

  auto key() const { return std::tie(tag, param, body, node); }
  bool operator<(const AbsVal& o) const { return key() < o.key(); }
  bool operator==(const AbsVal& o) const { return key() == o.key(); }
};

// Displays as NULL, UNDEF, BOOL, NUM, STR, FUN(x,3), BOX(5) or REC(7).
std::string to_string(const AbsVal& v);

// Abstract variable: a plain name (the simple variant and the improved
// variant's catch-all), a binder-qualified parameter, or a record field
// slot.
struct AbsVar {
  enum Kind { Global, Param, Slot } kind = Global;
  std::string name;
  Label binder = -1;  // Param: fun node label (-1 in the simple variant);
                      // Slot: record literal label

  static AbsVar global(std::string n) { return {Global, std::move(n), -1}; }
  static AbsVar param(std::string n, Label b) { return {Param, std::move(n), b}; }
  static AbsVar slot(Label rec, std::string field) {
    return {Slot, std::move(field), rec};
  }

  auto key() const { return std::tie(kind, name, binder); }
  bool operator<(const AbsVar& o) const { return key() < o.key(); }
  bool operator==(const AbsVar& o) const { return key() == o.key(); }
};

// Displays as x, x@3, x@global, or 3.field.
std::string to_string(const AbsVar& v);

struct CfaResult {
  CfaVariant variant = CfaVariant::Simple;
  std::map<Label, std::set<AbsVal>> gamma;
  std::map<AbsVar, std::set<AbsVal>> rho;
  // For each variable occurrence, the cells it can read: its static
  // resolution, or the cells recorded when a capture was resolved at a
  // splice site. Feeds the flow graph.
  std::map<Label, std::set<AbsVar>> resolution;
  // All field names the analysis tracks: every string constant in the
  // program, every record literal field name, and __proto__.
  std::set<std::string> universe;

  const std::set<AbsVal>& at(Label l) const;
  const std::set<AbsVal>& at(const AbsVar& v) const;
  // Least set of record labels reachable from rec through __proto__ slots.
  std::set<Label> proto_closure(Label rec) const;
};

// Constraint-based value analysis over the labelled tree. The improved
// variant qualifies parameters by their binder and resolves variables that
// are free inside code templates at the splice sites (run / run-in / unbox)
// where the code can actually arrive, using the lexical frame of the splice
// point; names that stay unresolved propagate into the enclosing template.
CfaResult analyze_cfa(const Expr& program, CfaVariant variant);

}  // namespace slamjs

#endif  // SLAMJS_CFA_HPP
