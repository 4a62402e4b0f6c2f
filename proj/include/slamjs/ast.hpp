#ifndef SLAMJS_AST_HPP
#define SLAMJS_AST_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace slamjs {

// Every node carries a label; analyses index their caches by it.
using Label = std::int32_t;
using Marker = std::string;

enum class ConstKind { Undef, Null, Bool, Num, Str };

struct Const {
  ConstKind kind = ConstKind::Undef;
  bool b = false;
  double num = 0.0;
  std::string str;

  static Const undef() { return {}; }
  static Const null() { return {ConstKind::Null, false, 0.0, {}}; }
  static Const boolean(bool v) { return {ConstKind::Bool, v, 0.0, {}}; }
  static Const number(double v) { return {ConstKind::Num, false, v, {}}; }
  static Const string(std::string v) {
    return {ConstKind::Str, false, 0.0, std::move(v)};
  }
};

bool operator==(const Const& a, const Const& b);
inline bool operator!=(const Const& a, const Const& b) { return !(a == b); }

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// A labelled term. Nodes are immutable and shared; stepping rebuilds the
// spine above the redex and shares everything else.
struct Expr {
  TermPtr term;
  Label label = 0;
};

// Environments bind variables to stage-0 values. Persistent: extension
// copies the (small) map, existing envs are never mutated.
using Env = std::map<std::string, Expr>;
using EnvPtr = std::shared_ptr<const Env>;

EnvPtr empty_env();
EnvPtr env_extend(const EnvPtr& env, const std::string& name, const Expr& v);

struct TConst { Const k; };
struct TVar { std::string name; };
struct TFun { std::string param; Expr body; };
struct TApp { Expr fn; Expr arg; };
struct TRecord { std::vector<std::pair<std::string, Expr>> fields; };
struct TBox { Expr body; };
struct TUnbox { Expr body; };
struct TRun { Expr body; };
struct TIf { Expr cond; Expr thn; Expr els; };
struct TRead { Expr rec; Expr sel; };
struct TWrite { Expr rec; Expr sel; Expr val; };
struct TDel { Expr rec; Expr sel; };
// (t, rho): a pending substitution. It wraps a bare term and shares the
// node's label with it — there is no separate inner label.
struct TSubst { TermPtr term; EnvPtr env; };
// run v in rho: intermediate form created when run sees its box at stage 0.
struct TRunIn { Expr body; EnvPtr env; };
// (m : e): dependency marker.
struct TMarked { Marker marker; Expr body; };
struct THole {};

enum class PrimOp { Eq, Sub, Typeof };
struct TPrim {
  PrimOp op;
  Expr lhs;
  std::optional<Expr> rhs;  // absent for typeof
};

struct Term {
  std::variant<TConst, TVar, TFun, TApp, TRecord, TBox, TUnbox, TRun, TIf,
               TRead, TWrite, TDel, TSubst, TRunIn, TMarked, THole, TPrim>
      v;
};

template <class T>
const T* as(const Expr& e) {
  return std::get_if<T>(&e.term->v);
}

// Constructors. mk_subst keeps the wrapped expression's label (shared).
Expr mk_const(Const k, Label l = 0);
Expr mk_undef(Label l = 0);
Expr mk_null(Label l = 0);
Expr mk_bool(bool v, Label l = 0);
Expr mk_num(double v, Label l = 0);
Expr mk_str(std::string v, Label l = 0);
Expr mk_var(std::string name, Label l = 0);
Expr mk_fun(std::string param, Expr body, Label l = 0);
Expr mk_app(Expr fn, Expr arg, Label l = 0);
Expr mk_record(std::vector<std::pair<std::string, Expr>> fields, Label l = 0);
Expr mk_box(Expr body, Label l = 0);
Expr mk_unbox(Expr body, Label l = 0);
Expr mk_run(Expr body, Label l = 0);
Expr mk_if(Expr cond, Expr thn, Expr els, Label l = 0);
Expr mk_read(Expr rec, Expr sel, Label l = 0);
Expr mk_write(Expr rec, Expr sel, Expr val, Label l = 0);
Expr mk_del(Expr rec, Expr sel, Label l = 0);
Expr mk_subst(const Expr& e, EnvPtr env);
Expr mk_run_in(Expr body, EnvPtr env, Label l = 0);
Expr mk_marked(Marker m, Expr body, Label l = 0);
Expr mk_hole(Label l = 0);
Expr mk_prim(PrimOp op, Expr lhs, std::optional<Expr> rhs, Label l = 0);

// Stage-indexed value test. Closures — substitutions wrapping a fun — are
// the only stage-0 values besides constants, records of values, boxes of
// stage-1 values, marked values and the hole. Higher stages add code shapes;
// unbox only becomes a value at stage >= 2.
bool is_value(const Expr& e, int stage);

// Structural equality. Record fields are matched by name regardless of
// order; field names are unique. Substitution environments compare
// pointwise.
bool equal_exprs(const Expr& a, const Expr& b, bool with_labels);
bool equal_envs(const EnvPtr& a, const EnvPtr& b, bool with_labels);

// a is a prefix of b: b with some subterms replaced by holes gives a.
// Labels are ignored.
bool is_prefix(const Expr& a, const Expr& b);

// Every marker occurring anywhere in e, including inside environments and
// box bodies.
std::set<Marker> markers_of(const Expr& e);

// Remove every marker node, splicing its body in place.
Expr unmark(const Expr& e);

// Replace every marked subterm whose marker is outside keep with a hole.
// The hole takes over the erased node's label.
Expr erase(const Expr& e, const std::set<Marker>& keep);

// Visit e and every descendant, preorder. Substitution nodes present their
// wrapped term as a child sharing the node's label; environments and
// run-in environments contribute their bound values.
void traverse(const Expr& e, const std::function<void(const Expr&)>& f);

// Direct children in evaluation order (record fields, then-else branches,
// operands left to right). Substitution wraps count their shared-label term
// as the single child plus the environment's values.
std::vector<Expr> children(const Expr& e);

// Assign labels 0..n-1 in post order, children before parents, left to
// right. A substitution node shares the label assigned to its wrapped term.
// Environments are left untouched.
Expr relabel(const Expr& e);

Label max_label(const Expr& e);

}  // namespace slamjs

#endif  // SLAMJS_AST_HPP
