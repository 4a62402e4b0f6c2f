#include "slamjs/generate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slamjs {

namespace {

// std::uniform_int_distribution is implementation-defined, so draw with a
// plain modulo; the tiny bias is irrelevant here and the stream is stable.
struct Dice {
  std::mt19937_64& rng;
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
  bool chance(unsigned num, unsigned den) { return rng() % den < num; }
  int pick(const std::vector<int>& weights) {
    int total = 0;
    for (int w : weights) total += w;
    int roll = static_cast<int>(rng() % static_cast<unsigned>(total));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      roll -= weights[i];
      if (roll < 0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }
};

const std::vector<std::string> kParams = {"x", "y", "z", "w", "p", "q"};
const std::vector<std::string> kFields = {"a", "b", "c"};
const std::vector<Marker> kMarkers = {"H", "L", "I"};

struct Gen {
  Dice dice;
  std::vector<std::string> scope;  // params of enclosing functions

  Expr constant() {
    switch (dice.index(8)) {
      case 0: return mk_bool(true);
      case 1: return mk_bool(false);
      case 2: return mk_num(0);
      case 3: return mk_num(1);
      case 4: return mk_num(static_cast<double>(dice.index(5)));
      case 5: return mk_str(kFields[dice.index(kFields.size())]);
      case 6: return mk_null();
      default: return mk_undef();
    }
  }

  Expr marked_leaf() {
    Expr body = constant();
    return mk_marked(kMarkers[dice.index(kMarkers.size())], body);
  }

  Expr leaf(int stage) {
    (void)stage;
    if (!scope.empty() && dice.chance(1, 4))
      return mk_var(scope[dice.index(scope.size())]);
    if (dice.chance(1, 3)) return marked_leaf();
    return constant();
  }

  Expr record(int depth, int stage) {
    std::vector<std::pair<std::string, Expr>> fields;
    fields.emplace_back("__proto__", mk_null());
    std::size_t first = dice.index(kFields.size());
    fields.emplace_back(kFields[first], expr(depth - 1, stage));
    if (dice.chance(1, 2)) {
      std::size_t second = (first + 1) % kFields.size();
      fields.emplace_back(kFields[second], expr(depth - 1, stage));
    }
    return mk_record(std::move(fields));
  }

  Expr selector(int depth, int stage) {
    if (dice.chance(9, 10)) return mk_str(kFields[dice.index(kFields.size())]);
    return expr(depth - 1, stage);
  }

  Expr expr(int depth, int stage) {
    if (depth <= 0) return leaf(stage);
    enum {
      kConst, kMarked, kVar, kIf, kAppFun, kFun, kRecord, kRead, kWrite,
      kDel, kPrim, kRunBox, kBox, kUnbox
    };
    std::vector<int> weights = {
        /*const*/ 4,
        /*marked*/ 3,
        /*var*/ scope.empty() ? 0 : 2,
        /*if*/ 3,
        /*app-of-fun*/ 4,
        /*fun*/ 1,
        /*record*/ 2,
        /*read*/ 2,
        /*write*/ 1,
        /*del*/ 1,
        /*prim*/ 3,
        /*run-box*/ stage < 2 ? 2 : 0,
        /*box*/ stage < 2 ? 1 : 0,
        /*unbox*/ stage >= 1 ? 2 : 0,
    };
    switch (dice.pick(weights)) {
      case kConst:
        return constant();
      case kMarked: {
        Expr body = dice.chance(7, 10) ? constant() : expr(depth - 1, stage);
        return mk_marked(kMarkers[dice.index(kMarkers.size())], body);
      }
      case kVar:
        return mk_var(scope[dice.index(scope.size())]);
      case kIf: {
        Expr cond = dice.chance(3, 5)
                        ? mk_bool(dice.chance(1, 2))
                        : (dice.chance(1, 2)
                               ? mk_marked(kMarkers[dice.index(kMarkers.size())],
                                           mk_bool(dice.chance(1, 2)))
                               : expr(depth - 1, stage));
        return mk_if(cond, expr(depth - 1, stage), expr(depth - 1, stage));
      }
      case kAppFun: {
        std::string param = kParams[dice.index(kParams.size())];
        scope.push_back(param);
        Expr body = expr(depth - 1, stage);
        scope.pop_back();
        return mk_app(mk_fun(param, body), expr(depth - 1, stage));
      }
      case kFun: {
        std::string param = kParams[dice.index(kParams.size())];
        scope.push_back(param);
        Expr body = expr(depth - 1, stage);
        scope.pop_back();
        return mk_fun(param, body);
      }
      case kRecord:
        return record(depth, stage);
      case kRead: {
        Expr rec = dice.chance(7, 10) ? record(depth, stage)
                                      : expr(depth - 1, stage);
        return mk_read(rec, selector(depth, stage));
      }
      case kWrite: {
        Expr rec = dice.chance(7, 10) ? record(depth, stage)
                                      : expr(depth - 1, stage);
        return mk_write(rec, selector(depth, stage), expr(depth - 1, stage));
      }
      case kDel: {
        return mk_del(record(depth, stage), selector(depth, stage));
      }
      case kPrim: {
        switch (dice.index(3)) {
          case 0:
            return mk_prim(PrimOp::Eq, expr(depth - 1, stage),
                           expr(depth - 1, stage));
          case 1: {
            Expr lhs = dice.chance(4, 5) ? mk_num(static_cast<double>(dice.index(9)))
                                         : expr(depth - 1, stage);
            Expr rhs = dice.chance(4, 5) ? mk_num(static_cast<double>(dice.index(9)))
                                         : expr(depth - 1, stage);
            return mk_prim(PrimOp::Sub, lhs, rhs);
          }
          default:
            return mk_prim(PrimOp::Typeof, expr(depth - 1, stage),
                           std::nullopt);
        }
      }
      case kRunBox:
        return mk_run(mk_box(expr(depth - 1, stage + 1)));
      case kBox:
        return mk_box(expr(depth - 1, stage + 1));
      case kUnbox:
        return mk_unbox(mk_box(expr(depth - 1, stage)));
      default:
        return constant();
    }
  }
};

bool qualifies(const Expr& e) {
  const Expr* cur = &e;
  while (const auto* m = as<TMarked>(*cur)) cur = &m->body;
  return as<TConst>(*cur) != nullptr;
}

// Rebuild with the preorder node at `target` transformed; `counter` walks in
// the same order node_count uses. Returns nullopt when the transform does
// not apply at the target.
std::optional<Expr> transform_at(const Expr& e, int& counter, int target,
                                 const std::function<std::optional<Expr>(const Expr&)>& f) {
  int self = counter++;
  if (self == target) return f(e);
  auto sub = [&](const Expr& child) -> std::optional<Expr> {
    return transform_at(child, counter, target, f);
  };
  if (const auto* t = as<TFun>(e)) {
    if (auto b = sub(t->body)) return mk_fun(t->param, *b, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TApp>(e)) {
    int mark = counter;
    if (auto fn = sub(t->fn)) return mk_app(*fn, t->arg, e.label);
    counter = mark + node_count(t->fn);
    if (auto arg = sub(t->arg)) return mk_app(t->fn, *arg, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TRecord>(e)) {
    for (std::size_t i = 0; i < t->fields.size(); ++i) {
      int mark = counter;
      if (auto v = sub(t->fields[i].second)) {
        auto fields = t->fields;
        fields[i].second = *v;
        return mk_record(std::move(fields), e.label);
      }
      counter = mark + node_count(t->fields[i].second);
    }
    return std::nullopt;
  }
  if (const auto* t = as<TBox>(e)) {
    if (auto b = sub(t->body)) return mk_box(*b, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TUnbox>(e)) {
    if (auto b = sub(t->body)) return mk_unbox(*b, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TRun>(e)) {
    if (auto b = sub(t->body)) return mk_run(*b, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TIf>(e)) {
    int mark = counter;
    if (auto c = sub(t->cond)) return mk_if(*c, t->thn, t->els, e.label);
    counter = mark + node_count(t->cond);
    mark = counter;
    if (auto th = sub(t->thn)) return mk_if(t->cond, *th, t->els, e.label);
    counter = mark + node_count(t->thn);
    if (auto el = sub(t->els)) return mk_if(t->cond, t->thn, *el, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TRead>(e)) {
    int mark = counter;
    if (auto r = sub(t->rec)) return mk_read(*r, t->sel, e.label);
    counter = mark + node_count(t->rec);
    if (auto s = sub(t->sel)) return mk_read(t->rec, *s, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TWrite>(e)) {
    int mark = counter;
    if (auto r = sub(t->rec)) return mk_write(*r, t->sel, t->val, e.label);
    counter = mark + node_count(t->rec);
    mark = counter;
    if (auto s = sub(t->sel)) return mk_write(t->rec, *s, t->val, e.label);
    counter = mark + node_count(t->sel);
    if (auto v = sub(t->val)) return mk_write(t->rec, t->sel, *v, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TDel>(e)) {
    int mark = counter;
    if (auto r = sub(t->rec)) return mk_del(*r, t->sel, e.label);
    counter = mark + node_count(t->rec);
    if (auto s = sub(t->sel)) return mk_del(t->rec, *s, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TMarked>(e)) {
    if (auto b = sub(t->body)) return mk_marked(t->marker, *b, e.label);
    return std::nullopt;
  }
  if (const auto* t = as<TPrim>(e)) {
    int mark = counter;
    if (auto l = sub(t->lhs)) {
      if (t->rhs) return mk_prim(t->op, *l, *t->rhs, e.label);
      return mk_prim(t->op, *l, std::nullopt, e.label);
    }
    if (t->rhs) {
      counter = mark + node_count(t->lhs);
      if (auto r = sub(*t->rhs)) return mk_prim(t->op, t->lhs, *r, e.label);
    }
    return std::nullopt;
  }
  // Leaves and intermediate forms: nothing below to transform.
  return std::nullopt;
}

std::optional<Expr> apply_at(const Expr& e, int target,
                             const std::function<std::optional<Expr>(const Expr&)>& f) {
  int counter = 0;
  return transform_at(e, counter, target, f);
}

}  // namespace

int node_count(const Expr& e) {
  int n = 0;
  traverse(e, [&](const Expr&) { ++n; });
  return n;
}

Generated generate_terminating(std::mt19937_64& rng, const GenOptions& opts) {
  Gen gen{Dice{rng}, {}};
  EvalOptions eval_opts;
  eval_opts.fuel = opts.eval_fuel;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    Expr candidate = relabel(gen.expr(opts.max_depth, 0));
    EvalResult r = evaluate(candidate, eval_opts);
    if (r.outcome != Outcome::Value) continue;
    if (qualifies(r.final_expr) || gen.dice.chance(1, 4))
      return {candidate, std::move(r)};
  }
  Expr fallback = relabel(mk_num(0));
  return {fallback, evaluate(fallback, eval_opts)};
}

Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& still_fails,
            int budget) {
  Expr best = e;
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    int total = node_count(best);
    for (int i = 0; i < total && budget > 0; ++i) {
      // Try stripping a marker first (keeps more structure), then try
      // collapsing the whole subtree to a constant.
      auto strip = apply_at(best, i, [](const Expr& node) -> std::optional<Expr> {
        if (const auto* m = as<TMarked>(node)) return m->body;
        return std::nullopt;
      });
      if (strip) {
        --budget;
        Expr candidate = relabel(*strip);
        if (still_fails(candidate)) {
          best = candidate;
          improved = true;
          break;
        }
      }
      auto collapse = apply_at(best, i, [](const Expr& node) -> std::optional<Expr> {
        if (as<TConst>(node)) return std::nullopt;
        return mk_num(0);
      });
      if (collapse) {
        --budget;
        Expr candidate = relabel(*collapse);
        if (still_fails(candidate)) {
          best = candidate;
          improved = true;
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace slamjs
