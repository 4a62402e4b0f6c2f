#include "slamjs/eval.hpp"

namespace slamjs {

const char* stuck_reason_name(StuckReason r) {
  switch (r) {
    case StuckReason::ApplyNonFunction: return "ApplyNonFunction";
    case StuckReason::BranchNonBoolean: return "BranchNonBoolean";
    case StuckReason::ReadNonRecord: return "ReadNonRecord";
    case StuckReason::SelectorNonString: return "SelectorNonString";
    case StuckReason::UnboxNonBox: return "UnboxNonBox";
    case StuckReason::RunNonBox: return "RunNonBox";
    case StuckReason::UnboundVariable: return "UnboundVariable";
    case StuckReason::HoleDemanded: return "HoleDemanded";
    case StuckReason::MissingProtoField: return "MissingProtoField";
    case StuckReason::PrimTypeError: return "PrimTypeError";
    case StuckReason::NoRule: return "NoRule";
  }
  return "NoRule";
}

namespace {

Expr with_label(const Expr& e, Label l) { return Expr{e.term, l}; }

struct Stepper {
  const EvalOptions& opts;

  struct Out {
    enum Tag { Value, Did, Bad } tag = Value;
    Expr expr;
    const char* rule = nullptr;
    int stage = 0;
    StuckReason reason = StuckReason::NoRule;
  };

  static Out value() { return {}; }
  static Out did(Expr e, const char* rule, int stage) {
    return {Out::Did, std::move(e), rule, stage, StuckReason::NoRule};
  }
  static Out bad(StuckReason r) {
    return {Out::Bad, {}, nullptr, 0, r};
  }

  static bool is_hole(const Expr& e) {
    return std::holds_alternative<THole>(e.term->v);
  }

  // Dispatch a pending substitution: push the environment one level down.
  // The node label stays on the rebuilt node; children wrapped anew share
  // their own labels with the fresh substitutions.
  Out prop(const Expr& e, const TSubst& s, int m) {
    const Term& t = *s.term;
    Label l = e.label;
    const EnvPtr& env = s.env;
    if (auto* c = std::get_if<TConst>(&t.v))
      return did(mk_const(c->k, l), "Prop-Const", m);
    if (auto* v = std::get_if<TVar>(&t.v)) {
      if (m == 0) {
        const Env& en = env ? *env : Env{};
        auto it = en.find(v->name);
        if (it == en.end()) return bad(StuckReason::UnboundVariable);
        return did(with_label(it->second, l), "Lookup", 0);
      }
      return did(mk_var(v->name, l), "Prop-Var", m);
    }
    if (auto* f = std::get_if<TFun>(&t.v)) {
      // At stage 0 a substitution around fun is a closure (a value); only
      // stages >= 1 push the environment into the body.
      return did(mk_fun(f->param, mk_subst(f->body, env), l), "Prop-Fun", m);
    }
    if (auto* a = std::get_if<TApp>(&t.v))
      return did(mk_app(mk_subst(a->fn, env), mk_subst(a->arg, env), l),
                 "Prop-App", m);
    if (auto* r = std::get_if<TRecord>(&t.v)) {
      std::vector<std::pair<std::string, Expr>> fs;
      for (auto& f : r->fields)
        fs.emplace_back(f.first, mk_subst(f.second, env));
      return did(mk_record(std::move(fs), l), "Prop-Record", m);
    }
    if (auto* b = std::get_if<TBox>(&t.v))
      return did(mk_box(mk_subst(b->body, env), l), "Prop-Box", m);
    if (auto* u = std::get_if<TUnbox>(&t.v))
      return did(mk_unbox(mk_subst(u->body, env), l), "Prop-Unbox", m);
    if (auto* r = std::get_if<TRun>(&t.v)) {
      if (m == 0)
        return did(mk_run_in(mk_subst(r->body, env), env, l), "Prop-Run", 0);
      return did(mk_run(mk_subst(r->body, env), l), "Prop-Run", m);
    }
    if (auto* i = std::get_if<TIf>(&t.v))
      return did(mk_if(mk_subst(i->cond, env), mk_subst(i->thn, env),
                       mk_subst(i->els, env), l),
                 "Prop-If", m);
    if (auto* r = std::get_if<TRead>(&t.v))
      return did(mk_read(mk_subst(r->rec, env), mk_subst(r->sel, env), l),
                 "Prop-Read", m);
    if (auto* w = std::get_if<TWrite>(&t.v))
      return did(mk_write(mk_subst(w->rec, env), mk_subst(w->sel, env),
                          mk_subst(w->val, env), l),
                 "Prop-Write", m);
    if (auto* d = std::get_if<TDel>(&t.v))
      return did(mk_del(mk_subst(d->rec, env), mk_subst(d->sel, env), l),
                 "Prop-Del", m);
    if (auto* mk = std::get_if<TMarked>(&t.v))
      return did(mk_marked(mk->marker, mk_subst(mk->body, env), l),
                 "Prop-Marker", m);
    if (std::holds_alternative<THole>(t.v))
      return did(mk_hole(l), "Prop-Hole", m);
    if (auto* p = std::get_if<TPrim>(&t.v)) {
      std::optional<Expr> rhs;
      if (p->rhs) rhs = mk_subst(*p->rhs, env);
      return did(mk_prim(p->op, mk_subst(p->lhs, env), std::move(rhs), l),
                 "Prop-Prim", m);
    }
    // Substitution wrapping a substitution or a run-in: no rule produces
    // these from source programs.
    return bad(StuckReason::NoRule);
  }

  // Step the leftmost non-value position of e at stage m, per the context
  // grammar: box bodies one stage up, unbox bodies one stage down, run and
  // run-in bodies at the same stage, no descent into stage-0 fun bodies.
  Out step(const Expr& e, int m) {
    if (is_value(e, m)) return value();
    const Term& t = *e.term;

    if (auto* s = std::get_if<TSubst>(&t.v)) return prop(e, *s, m);

    if (auto* mk = std::get_if<TMarked>(&t.v)) {
      Out r = step(mk->body, m);
      if (r.tag == Out::Did)
        r.expr = mk_marked(mk->marker, std::move(r.expr), e.label);
      return r;
    }

    if (auto* rec = std::get_if<TRecord>(&t.v)) {
      for (size_t i = 0; i < rec->fields.size(); ++i) {
        if (is_value(rec->fields[i].second, m)) continue;
        Out r = step(rec->fields[i].second, m);
        if (r.tag == Out::Did) {
          auto fs = rec->fields;
          fs[i].second = std::move(r.expr);
          r.expr = mk_record(std::move(fs), e.label);
        }
        return r;
      }
      return value();  // unreachable: all-values is a value
    }

    if (auto* f = std::get_if<TFun>(&t.v)) {
      if (m == 0) return bad(StuckReason::NoRule);  // bare fun at stage 0
      Out r = step(f->body, m);
      if (r.tag == Out::Did)
        r.expr = mk_fun(f->param, std::move(r.expr), e.label);
      return r;
    }

    if (auto* a = std::get_if<TApp>(&t.v)) {
      if (!is_value(a->fn, m)) {
        Out r = step(a->fn, m);
        if (r.tag == Out::Did)
          r.expr = mk_app(std::move(r.expr), a->arg, e.label);
        return r;
      }
      if (!is_value(a->arg, m)) {
        Out r = step(a->arg, m);
        if (r.tag == Out::Did)
          r.expr = mk_app(a->fn, std::move(r.expr), e.label);
        return r;
      }
      // m >= 1 would be a value; here m == 0 with both sides values.
      if (auto* s = as<TSubst>(a->fn)) {
        if (auto* f = std::get_if<TFun>(&s->term->v)) {
          EnvPtr ext = env_extend(s->env, f->param, a->arg);
          return did(mk_subst(f->body, std::move(ext)), "Apply", 0);
        }
      }
      if (auto* mk = as<TMarked>(a->fn))
        return did(mk_marked(mk->marker,
                             mk_app(mk->body, a->arg, e.label), e.label),
                   "Lift-App", 0);
      if (is_hole(a->fn)) return bad(StuckReason::HoleDemanded);
      return bad(StuckReason::ApplyNonFunction);
    }

    if (auto* b = std::get_if<TBox>(&t.v)) {
      Out r = step(b->body, m + 1);
      if (r.tag == Out::Did) r.expr = mk_box(std::move(r.expr), e.label);
      return r;
    }

    if (auto* u = std::get_if<TUnbox>(&t.v)) {
      if (m == 0) return bad(StuckReason::NoRule);  // unbox outside any box
      if (!is_value(u->body, m - 1)) {
        Out r = step(u->body, m - 1);
        if (r.tag == Out::Did) r.expr = mk_unbox(std::move(r.expr), e.label);
        return r;
      }
      // m >= 2 with a value body is itself a value; only m == 1 reduces.
      if (auto* bx = as<TBox>(u->body))
        return did(with_label(bx->body, e.label), "Unbox", 1);
      if (auto* mk = as<TMarked>(u->body))
        return did(mk_marked(mk->marker, mk_unbox(mk->body, e.label), e.label),
                   "Lift-Unbox", 1);
      if (is_hole(u->body)) return bad(StuckReason::HoleDemanded);
      return bad(StuckReason::UnboxNonBox);
    }

    if (auto* r = std::get_if<TRun>(&t.v)) {
      if (!is_value(r->body, m)) {
        Out o = step(r->body, m);
        if (o.tag == Out::Did) o.expr = mk_run(std::move(o.expr), e.label);
        return o;
      }
      // A bare run of a value at stage 0: only the run-in form reduces.
      return bad(StuckReason::NoRule);
    }

    if (auto* ri = std::get_if<TRunIn>(&t.v)) {
      if (!is_value(ri->body, m)) {
        Out o = step(ri->body, m);
        if (o.tag == Out::Did)
          o.expr = mk_run_in(std::move(o.expr), ri->env, e.label);
        return o;
      }
      if (m != 0) return bad(StuckReason::NoRule);
      if (auto* bx = as<TBox>(ri->body)) {
        Expr inner{bx->body.term, e.label};
        return did(mk_subst(inner, ri->env), "Run", 0);
      }
      if (auto* mk = as<TMarked>(ri->body))
        return did(mk_marked(mk->marker,
                             mk_run_in(mk->body, ri->env, e.label), e.label),
                   "Lift-RunIn", 0);
      if (is_hole(ri->body)) return bad(StuckReason::HoleDemanded);
      return bad(StuckReason::RunNonBox);
    }

    if (auto* i = std::get_if<TIf>(&t.v)) {
      if (!is_value(i->cond, m)) {
        Out o = step(i->cond, m);
        if (o.tag == Out::Did)
          o.expr = mk_if(std::move(o.expr), i->thn, i->els, e.label);
        return o;
      }
      if (m >= 1) {
        if (!is_value(i->thn, m)) {
          Out o = step(i->thn, m);
          if (o.tag == Out::Did)
            o.expr = mk_if(i->cond, std::move(o.expr), i->els, e.label);
          return o;
        }
        Out o = step(i->els, m);
        if (o.tag == Out::Did)
          o.expr = mk_if(i->cond, i->thn, std::move(o.expr), e.label);
        return o;
      }
      if (auto* mk = as<TMarked>(i->cond)) {
        Expr inner = mk_if(mk->body, i->thn, i->els, e.label);
        if (opts.mutate_drop_lift_if_marker)
          return did(std::move(inner), "Lift-If", 0);
        return did(mk_marked(mk->marker, std::move(inner), e.label),
                   "Lift-If", 0);
      }
      if (auto* c = as<TConst>(i->cond)) {
        if (c->k.kind == ConstKind::Bool)
          return c->k.b ? did(i->thn, "IfTrue", 0) : did(i->els, "IfFalse", 0);
      }
      if (is_hole(i->cond)) return bad(StuckReason::HoleDemanded);
      return bad(StuckReason::BranchNonBoolean);
    }

    if (auto* rd = std::get_if<TRead>(&t.v)) {
      if (!is_value(rd->rec, m)) {
        Out o = step(rd->rec, m);
        if (o.tag == Out::Did)
          o.expr = mk_read(std::move(o.expr), rd->sel, e.label);
        return o;
      }
      if (!is_value(rd->sel, m)) {
        Out o = step(rd->sel, m);
        if (o.tag == Out::Did)
          o.expr = mk_read(rd->rec, std::move(o.expr), e.label);
        return o;
      }
      // m == 0 from here (higher stages are values).
      if (auto* mk = as<TMarked>(rd->sel))
        return did(mk_marked(mk->marker,
                             mk_read(rd->rec, mk->body, e.label), e.label),
                   "Lift-ReadSel", 0);
      if (auto* mk = as<TMarked>(rd->rec))
        return did(mk_marked(mk->marker,
                             mk_read(mk->body, rd->sel, e.label), e.label),
                   "Lift-ReadRec", 0);
      if (is_hole(rd->rec)) return bad(StuckReason::HoleDemanded);
      auto* rec = as<TRecord>(rd->rec);
      if (!rec) return bad(StuckReason::ReadNonRecord);
      if (is_hole(rd->sel)) return bad(StuckReason::HoleDemanded);
      auto* sc = as<TConst>(rd->sel);
      if (!sc || sc->k.kind != ConstKind::Str)
        return bad(StuckReason::SelectorNonString);
      const std::string& name = sc->k.str;
      for (auto& f : rec->fields)
        if (f.first == name)
          return did(with_label(f.second, e.label), "Read1", 0);
      for (auto& f : rec->fields) {
        if (f.first != "__proto__") continue;
        const Expr& proto = f.second;
        if (auto* pc = as<TConst>(proto);
            pc && pc->k.kind == ConstKind::Null)
          return did(mk_undef(e.label), "Read3", 0);
        if (as<TRecord>(proto))
          return did(mk_read(proto, rd->sel, e.label), "Read2", 0);
        return bad(StuckReason::MissingProtoField);
      }
      return bad(StuckReason::MissingProtoField);
    }

    if (auto* wr = std::get_if<TWrite>(&t.v)) {
      if (!is_value(wr->rec, m)) {
        Out o = step(wr->rec, m);
        if (o.tag == Out::Did)
          o.expr = mk_write(std::move(o.expr), wr->sel, wr->val, e.label);
        return o;
      }
      if (!is_value(wr->sel, m)) {
        Out o = step(wr->sel, m);
        if (o.tag == Out::Did)
          o.expr = mk_write(wr->rec, std::move(o.expr), wr->val, e.label);
        return o;
      }
      if (!is_value(wr->val, m)) {
        Out o = step(wr->val, m);
        if (o.tag == Out::Did)
          o.expr = mk_write(wr->rec, wr->sel, std::move(o.expr), e.label);
        return o;
      }
      if (auto* mk = as<TMarked>(wr->sel))
        return did(mk_marked(mk->marker,
                             mk_write(wr->rec, mk->body, wr->val, e.label),
                             e.label),
                   "Lift-WriteSel", 0);
      if (auto* mk = as<TMarked>(wr->rec))
        return did(mk_marked(mk->marker,
                             mk_write(mk->body, wr->sel, wr->val, e.label),
                             e.label),
                   "Lift-WriteRec", 0);
      // A marked written value flows in directly; no lift.
      if (is_hole(wr->rec)) return bad(StuckReason::HoleDemanded);
      auto* rec = as<TRecord>(wr->rec);
      if (!rec) return bad(StuckReason::ReadNonRecord);
      if (is_hole(wr->sel)) return bad(StuckReason::HoleDemanded);
      auto* sc = as<TConst>(wr->sel);
      if (!sc || sc->k.kind != ConstKind::Str)
        return bad(StuckReason::SelectorNonString);
      auto fs = rec->fields;
      for (auto& f : fs) {
        if (f.first == sc->k.str) {
          f.second = wr->val;
          return did(mk_record(std::move(fs), e.label), "Write1", 0);
        }
      }
      fs.emplace_back(sc->k.str, wr->val);
      return did(mk_record(std::move(fs), e.label), "Write2", 0);
    }

    if (auto* dl = std::get_if<TDel>(&t.v)) {
      if (!is_value(dl->rec, m)) {
        Out o = step(dl->rec, m);
        if (o.tag == Out::Did)
          o.expr = mk_del(std::move(o.expr), dl->sel, e.label);
        return o;
      }
      if (!is_value(dl->sel, m)) {
        Out o = step(dl->sel, m);
        if (o.tag == Out::Did)
          o.expr = mk_del(dl->rec, std::move(o.expr), e.label);
        return o;
      }
      if (auto* mk = as<TMarked>(dl->sel))
        return did(mk_marked(mk->marker,
                             mk_del(dl->rec, mk->body, e.label), e.label),
                   "Lift-DelSel", 0);
      if (auto* mk = as<TMarked>(dl->rec))
        return did(mk_marked(mk->marker,
                             mk_del(mk->body, dl->sel, e.label), e.label),
                   "Lift-DelRec", 0);
      if (is_hole(dl->rec)) return bad(StuckReason::HoleDemanded);
      auto* rec = as<TRecord>(dl->rec);
      if (!rec) return bad(StuckReason::ReadNonRecord);
      if (is_hole(dl->sel)) return bad(StuckReason::HoleDemanded);
      auto* sc = as<TConst>(dl->sel);
      if (!sc || sc->k.kind != ConstKind::Str)
        return bad(StuckReason::SelectorNonString);
      auto fs = rec->fields;
      for (size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].first == sc->k.str) {
          fs.erase(fs.begin() + static_cast<long>(i));
          return did(mk_record(std::move(fs), e.label), "Del1", 0);
        }
      }
      return did(with_label(dl->rec, e.label), "Del2", 0);
    }

    if (auto* p = std::get_if<TPrim>(&t.v)) {
      if (!is_value(p->lhs, m)) {
        Out o = step(p->lhs, m);
        if (o.tag == Out::Did)
          o.expr = mk_prim(p->op, std::move(o.expr), p->rhs, e.label);
        return o;
      }
      if (p->rhs && !is_value(*p->rhs, m)) {
        Out o = step(*p->rhs, m);
        if (o.tag == Out::Did)
          o.expr = mk_prim(p->op, p->lhs, std::move(o.expr), e.label);
        return o;
      }
      if (auto* mk = as<TMarked>(p->lhs))
        return did(mk_marked(mk->marker,
                             mk_prim(p->op, mk->body, p->rhs, e.label),
                             e.label),
                   "Lift-Prim1", 0);
      if (p->rhs) {
        if (auto* mk = as<TMarked>(*p->rhs))
          return did(mk_marked(mk->marker,
                               mk_prim(p->op, p->lhs, mk->body, e.label),
                               e.label),
                     "Lift-Prim2", 0);
      }
      if (p->op == PrimOp::Typeof) {
        const Expr& v = p->lhs;
        if (is_hole(v)) return bad(StuckReason::HoleDemanded);
        const char* ty = nullptr;
        if (auto* c = as<TConst>(v)) {
          switch (c->k.kind) {
            case ConstKind::Undef: ty = "undefined"; break;
            case ConstKind::Null: ty = "null"; break;
            case ConstKind::Bool: ty = "boolean"; break;
            case ConstKind::Num: ty = "number"; break;
            case ConstKind::Str: ty = "string"; break;
          }
        } else if (as<TRecord>(v)) {
          ty = "object";
        } else if (as<TBox>(v)) {
          ty = "box";
        } else if (as<TSubst>(v)) {
          ty = "function";  // stage-0 value substitutions close over a fun
        }
        if (!ty) return bad(StuckReason::PrimTypeError);
        return did(mk_str(ty, e.label), "Prim", 0);
      }
      const Expr& a = p->lhs;
      const Expr& b = *p->rhs;
      if (is_hole(a) || is_hole(b)) return bad(StuckReason::HoleDemanded);
      if (p->op == PrimOp::Sub) {
        auto* ca = as<TConst>(a);
        auto* cb = as<TConst>(b);
        if (!ca || !cb || ca->k.kind != ConstKind::Num ||
            cb->k.kind != ConstKind::Num)
          return bad(StuckReason::PrimTypeError);
        return did(mk_num(ca->k.num - cb->k.num, e.label), "Prim", 0);
      }
      // Structural equality on constants; everything else compares false.
      auto* ca = as<TConst>(a);
      auto* cb = as<TConst>(b);
      bool eq = ca && cb && ca->k == cb->k;
      return did(mk_bool(eq, e.label), "Prim", 0);
    }

    // Bare variables and holes at stage 0 have no rule; values were handled
    // above.
    return bad(StuckReason::NoRule);
  }
};

}  // namespace

StepResult step_once(const Expr& e, int stage, const EvalOptions& opts) {
  Stepper st{opts};
  Stepper::Out o = st.step(e, stage);
  StepResult r;
  if (o.tag == Stepper::Out::Did) {
    r.stepped = true;
    r.expr = std::move(o.expr);
    r.rule = o.rule;
    r.stage = o.stage;
  } else if (o.tag == Stepper::Out::Bad) {
    r.expr = e;
    r.stuck = o.reason;
  } else {
    r.expr = e;
  }
  return r;
}

EvalResult evaluate(const Expr& program, const EvalOptions& opts,
                    const TraceFn& trace) {
  Stepper st{opts};
  Expr cur = mk_subst(program, empty_env());
  EvalResult res;
  for (;;) {
    if (res.steps >= opts.fuel) {
      res.outcome = Outcome::OutOfFuel;
      res.final_expr = cur;
      return res;
    }
    Stepper::Out o = st.step(cur, 0);
    if (o.tag == Stepper::Out::Value) {
      res.outcome = Outcome::Value;
      res.final_expr = cur;
      return res;
    }
    if (o.tag == Stepper::Out::Bad) {
      res.outcome = Outcome::Stuck;
      res.final_expr = cur;
      res.stuck = o.reason;
      return res;
    }
    cur = std::move(o.expr);
    ++res.steps;
    if (trace) trace(res.steps, o.stage, o.rule, cur);
  }
}

}  // namespace slamjs
