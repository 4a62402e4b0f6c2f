#include "slamjs/ast.hpp"

#include <algorithm>

namespace slamjs {

bool operator==(const Const& a, const Const& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ConstKind::Undef:
    case ConstKind::Null:
      return true;
    case ConstKind::Bool:
      return a.b == b.b;
    case ConstKind::Num:
      return a.num == b.num;  // IEEE: NaN compares unequal to itself
    case ConstKind::Str:
      return a.str == b.str;
  }
  return false;
}

EnvPtr empty_env() {
  static const EnvPtr e = std::make_shared<Env>();
  return e;
}

EnvPtr env_extend(const EnvPtr& env, const std::string& name, const Expr& v) {
  auto copy = std::make_shared<Env>(env ? *env : Env{});
  (*copy)[name] = v;
  return copy;
}

namespace {
Expr wrap(Term&& t, Label l) {
  return Expr{std::make_shared<Term>(std::move(t)), l};
}
}  // namespace

Expr mk_const(Const k, Label l) { return wrap(Term{TConst{std::move(k)}}, l); }
Expr mk_undef(Label l) { return mk_const(Const::undef(), l); }
Expr mk_null(Label l) { return mk_const(Const::null(), l); }
Expr mk_bool(bool v, Label l) { return mk_const(Const::boolean(v), l); }
Expr mk_num(double v, Label l) { return mk_const(Const::number(v), l); }
Expr mk_str(std::string v, Label l) {
  return mk_const(Const::string(std::move(v)), l);
}
Expr mk_var(std::string name, Label l) {
  return wrap(Term{TVar{std::move(name)}}, l);
}
Expr mk_fun(std::string param, Expr body, Label l) {
  return wrap(Term{TFun{std::move(param), std::move(body)}}, l);
}
Expr mk_app(Expr fn, Expr arg, Label l) {
  return wrap(Term{TApp{std::move(fn), std::move(arg)}}, l);
}
Expr mk_record(std::vector<std::pair<std::string, Expr>> fields, Label l) {
  return wrap(Term{TRecord{std::move(fields)}}, l);
}
Expr mk_box(Expr body, Label l) { return wrap(Term{TBox{std::move(body)}}, l); }
Expr mk_unbox(Expr body, Label l) {
  return wrap(Term{TUnbox{std::move(body)}}, l);
}
Expr mk_run(Expr body, Label l) { return wrap(Term{TRun{std::move(body)}}, l); }
Expr mk_if(Expr cond, Expr thn, Expr els, Label l) {
  return wrap(Term{TIf{std::move(cond), std::move(thn), std::move(els)}}, l);
}
Expr mk_read(Expr rec, Expr sel, Label l) {
  return wrap(Term{TRead{std::move(rec), std::move(sel)}}, l);
}
Expr mk_write(Expr rec, Expr sel, Expr val, Label l) {
  return wrap(Term{TWrite{std::move(rec), std::move(sel), std::move(val)}}, l);
}
Expr mk_del(Expr rec, Expr sel, Label l) {
  return wrap(Term{TDel{std::move(rec), std::move(sel)}}, l);
}
Expr mk_subst(const Expr& e, EnvPtr env) {
  return wrap(Term{TSubst{e.term, std::move(env)}}, e.label);
}
Expr mk_run_in(Expr body, EnvPtr env, Label l) {
  return wrap(Term{TRunIn{std::move(body), std::move(env)}}, l);
}
Expr mk_marked(Marker m, Expr body, Label l) {
  return wrap(Term{TMarked{std::move(m), std::move(body)}}, l);
}
Expr mk_hole(Label l) { return wrap(Term{THole{}}, l); }
Expr mk_prim(PrimOp op, Expr lhs, std::optional<Expr> rhs, Label l) {
  return wrap(Term{TPrim{op, std::move(lhs), std::move(rhs)}}, l);
}

bool is_value(const Expr& e, int stage) {
  const Term& t = *e.term;
  if (auto* c = std::get_if<TConst>(&t.v)) {
    (void)c;
    return true;
  }
  if (std::holds_alternative<THole>(t.v)) return true;
  if (auto* m = std::get_if<TMarked>(&t.v)) return is_value(m->body, stage);
  if (auto* r = std::get_if<TRecord>(&t.v)) {
    return std::all_of(r->fields.begin(), r->fields.end(),
                       [&](auto& f) { return is_value(f.second, stage); });
  }
  if (auto* b = std::get_if<TBox>(&t.v)) return is_value(b->body, stage + 1);
  if (stage == 0) {
    // Only substitutions closing over a fun are stage-0 values.
    if (auto* s = std::get_if<TSubst>(&t.v))
      return std::holds_alternative<TFun>(s->term->v);
    return false;
  }
  // stage >= 1: code shapes are values once their pieces are.
  if (std::holds_alternative<TVar>(t.v)) return true;
  if (auto* f = std::get_if<TFun>(&t.v)) return is_value(f->body, stage);
  if (auto* a = std::get_if<TApp>(&t.v))
    return is_value(a->fn, stage) && is_value(a->arg, stage);
  if (auto* r = std::get_if<TRun>(&t.v)) return is_value(r->body, stage);
  if (auto* i = std::get_if<TIf>(&t.v))
    return is_value(i->cond, stage) && is_value(i->thn, stage) &&
           is_value(i->els, stage);
  if (auto* r = std::get_if<TRead>(&t.v))
    return is_value(r->rec, stage) && is_value(r->sel, stage);
  if (auto* w = std::get_if<TWrite>(&t.v))
    return is_value(w->rec, stage) && is_value(w->sel, stage) &&
           is_value(w->val, stage);
  if (auto* d = std::get_if<TDel>(&t.v))
    return is_value(d->rec, stage) && is_value(d->sel, stage);
  if (auto* u = std::get_if<TUnbox>(&t.v))
    return stage >= 2 && is_value(u->body, stage - 1);
  if (auto* p = std::get_if<TPrim>(&t.v))
    return is_value(p->lhs, stage) &&
           (!p->rhs || is_value(*p->rhs, stage));
  // TSubst over non-fun and TRunIn are always redexes.
  return false;
}

bool equal_envs(const EnvPtr& a, const EnvPtr& b, bool with_labels) {
  const Env& ea = a ? *a : Env{};
  const Env& eb = b ? *b : Env{};
  if (ea.size() != eb.size()) return false;
  auto ia = ea.begin();
  auto ib = eb.begin();
  for (; ia != ea.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!equal_exprs(ia->second, ib->second, with_labels)) return false;
  }
  return true;
}

bool equal_exprs(const Expr& a, const Expr& b, bool with_labels) {
  if (with_labels && a.label != b.label) return false;
  const Term& ta = *a.term;
  const Term& tb = *b.term;
  if (ta.v.index() != tb.v.index()) return false;
  auto eq = [&](const Expr& x, const Expr& y) {
    return equal_exprs(x, y, with_labels);
  };
  if (auto* ca = std::get_if<TConst>(&ta.v))
    return ca->k == std::get<TConst>(tb.v).k;
  if (auto* va = std::get_if<TVar>(&ta.v))
    return va->name == std::get<TVar>(tb.v).name;
  if (auto* fa = std::get_if<TFun>(&ta.v)) {
    auto& fb = std::get<TFun>(tb.v);
    return fa->param == fb.param && eq(fa->body, fb.body);
  }
  if (auto* aa = std::get_if<TApp>(&ta.v)) {
    auto& ab = std::get<TApp>(tb.v);
    return eq(aa->fn, ab.fn) && eq(aa->arg, ab.arg);
  }
  if (auto* ra = std::get_if<TRecord>(&ta.v)) {
    auto& rb = std::get<TRecord>(tb.v);
    if (ra->fields.size() != rb.fields.size()) return false;
    // Field order is irrelevant; names are unique.
    std::map<std::string, const Expr*> mb;
    for (auto& f : rb.fields) mb[f.first] = &f.second;
    for (auto& f : ra->fields) {
      auto it = mb.find(f.first);
      if (it == mb.end() || !eq(f.second, *it->second)) return false;
    }
    return true;
  }
  if (auto* ba = std::get_if<TBox>(&ta.v))
    return eq(ba->body, std::get<TBox>(tb.v).body);
  if (auto* ua = std::get_if<TUnbox>(&ta.v))
    return eq(ua->body, std::get<TUnbox>(tb.v).body);
  if (auto* ra = std::get_if<TRun>(&ta.v))
    return eq(ra->body, std::get<TRun>(tb.v).body);
  if (auto* ia = std::get_if<TIf>(&ta.v)) {
    auto& ib = std::get<TIf>(tb.v);
    return eq(ia->cond, ib.cond) && eq(ia->thn, ib.thn) && eq(ia->els, ib.els);
  }
  if (auto* ra = std::get_if<TRead>(&ta.v)) {
    auto& rb = std::get<TRead>(tb.v);
    return eq(ra->rec, rb.rec) && eq(ra->sel, rb.sel);
  }
  if (auto* wa = std::get_if<TWrite>(&ta.v)) {
    auto& wb = std::get<TWrite>(tb.v);
    return eq(wa->rec, wb.rec) && eq(wa->sel, wb.sel) && eq(wa->val, wb.val);
  }
  if (auto* da = std::get_if<TDel>(&ta.v)) {
    auto& db = std::get<TDel>(tb.v);
    return eq(da->rec, db.rec) && eq(da->sel, db.sel);
  }
  if (auto* sa = std::get_if<TSubst>(&ta.v)) {
    auto& sb = std::get<TSubst>(tb.v);
    return eq(Expr{sa->term, a.label}, Expr{sb.term, b.label}) &&
           equal_envs(sa->env, sb.env, with_labels);
  }
  if (auto* ra = std::get_if<TRunIn>(&ta.v)) {
    auto& rb = std::get<TRunIn>(tb.v);
    return eq(ra->body, rb.body) && equal_envs(ra->env, rb.env, with_labels);
  }
  if (auto* ma = std::get_if<TMarked>(&ta.v)) {
    auto& mb = std::get<TMarked>(tb.v);
    return ma->marker == mb.marker && eq(ma->body, mb.body);
  }
  if (std::holds_alternative<THole>(ta.v)) return true;
  if (auto* pa = std::get_if<TPrim>(&ta.v)) {
    auto& pb = std::get<TPrim>(tb.v);
    if (pa->op != pb.op || pa->rhs.has_value() != pb.rhs.has_value())
      return false;
    if (!eq(pa->lhs, pb.lhs)) return false;
    return !pa->rhs || eq(*pa->rhs, *pb.rhs);
  }
  return false;
}

bool is_prefix(const Expr& a, const Expr& b) {
  if (std::holds_alternative<THole>(a.term->v)) return true;
  const Term& ta = *a.term;
  const Term& tb = *b.term;
  if (ta.v.index() != tb.v.index()) return false;
  if (auto* ca = std::get_if<TConst>(&ta.v))
    return ca->k == std::get<TConst>(tb.v).k;
  if (auto* va = std::get_if<TVar>(&ta.v))
    return va->name == std::get<TVar>(tb.v).name;
  if (auto* fa = std::get_if<TFun>(&ta.v)) {
    auto& fb = std::get<TFun>(tb.v);
    return fa->param == fb.param && is_prefix(fa->body, fb.body);
  }
  if (auto* aa = std::get_if<TApp>(&ta.v)) {
    auto& ab = std::get<TApp>(tb.v);
    return is_prefix(aa->fn, ab.fn) && is_prefix(aa->arg, ab.arg);
  }
  if (auto* ra = std::get_if<TRecord>(&ta.v)) {
    auto& rb = std::get<TRecord>(tb.v);
    if (ra->fields.size() != rb.fields.size()) return false;
    std::map<std::string, const Expr*> mb;
    for (auto& f : rb.fields) mb[f.first] = &f.second;
    for (auto& f : ra->fields) {
      auto it = mb.find(f.first);
      if (it == mb.end() || !is_prefix(f.second, *it->second)) return false;
    }
    return true;
  }
  if (auto* ba = std::get_if<TBox>(&ta.v))
    return is_prefix(ba->body, std::get<TBox>(tb.v).body);
  if (auto* ua = std::get_if<TUnbox>(&ta.v))
    return is_prefix(ua->body, std::get<TUnbox>(tb.v).body);
  if (auto* ra = std::get_if<TRun>(&ta.v))
    return is_prefix(ra->body, std::get<TRun>(tb.v).body);
  if (auto* ia = std::get_if<TIf>(&ta.v)) {
    auto& ib = std::get<TIf>(tb.v);
    return is_prefix(ia->cond, ib.cond) && is_prefix(ia->thn, ib.thn) &&
           is_prefix(ia->els, ib.els);
  }
  if (auto* ra = std::get_if<TRead>(&ta.v)) {
    auto& rb = std::get<TRead>(tb.v);
    return is_prefix(ra->rec, rb.rec) && is_prefix(ra->sel, rb.sel);
  }
  if (auto* wa = std::get_if<TWrite>(&ta.v)) {
    auto& wb = std::get<TWrite>(tb.v);
    return is_prefix(wa->rec, wb.rec) && is_prefix(wa->sel, wb.sel) &&
           is_prefix(wa->val, wb.val);
  }
  if (auto* da = std::get_if<TDel>(&ta.v)) {
    auto& db = std::get<TDel>(tb.v);
    return is_prefix(da->rec, db.rec) && is_prefix(da->sel, db.sel);
  }
  if (auto* sa = std::get_if<TSubst>(&ta.v)) {
    auto& sb = std::get<TSubst>(tb.v);
    if (!is_prefix(Expr{sa->term, a.label}, Expr{sb.term, b.label}))
      return false;
    const Env& ea = sa->env ? *sa->env : Env{};
    const Env& eb = sb.env ? *sb.env : Env{};
    if (ea.size() != eb.size()) return false;
    auto ibnd = eb.begin();
    for (auto& [k, v] : ea) {
      if (k != ibnd->first || !is_prefix(v, ibnd->second)) return false;
      ++ibnd;
    }
    return true;
  }
  if (auto* ra = std::get_if<TRunIn>(&ta.v)) {
    auto& rb = std::get<TRunIn>(tb.v);
    if (!is_prefix(ra->body, rb.body)) return false;
    const Env& ea = ra->env ? *ra->env : Env{};
    const Env& eb = rb.env ? *rb.env : Env{};
    if (ea.size() != eb.size()) return false;
    auto ibnd = eb.begin();
    for (auto& [k, v] : ea) {
      if (k != ibnd->first || !is_prefix(v, ibnd->second)) return false;
      ++ibnd;
    }
    return true;
  }
  if (auto* ma = std::get_if<TMarked>(&ta.v)) {
    auto& mb = std::get<TMarked>(tb.v);
    return ma->marker == mb.marker && is_prefix(ma->body, mb.body);
  }
  if (auto* pa = std::get_if<TPrim>(&ta.v)) {
    auto& pb = std::get<TPrim>(tb.v);
    if (pa->op != pb.op || pa->rhs.has_value() != pb.rhs.has_value())
      return false;
    if (!is_prefix(pa->lhs, pb.lhs)) return false;
    return !pa->rhs || is_prefix(*pa->rhs, *pb.rhs);
  }
  return false;
}

std::vector<Expr> children(const Expr& e) {
  std::vector<Expr> out;
  const Term& t = *e.term;
  if (auto* f = std::get_if<TFun>(&t.v)) {
    out.push_back(f->body);
  } else if (auto* a = std::get_if<TApp>(&t.v)) {
    out.push_back(a->fn);
    out.push_back(a->arg);
  } else if (auto* r = std::get_if<TRecord>(&t.v)) {
    for (auto& fld : r->fields) out.push_back(fld.second);
  } else if (auto* b = std::get_if<TBox>(&t.v)) {
    out.push_back(b->body);
  } else if (auto* u = std::get_if<TUnbox>(&t.v)) {
    out.push_back(u->body);
  } else if (auto* r = std::get_if<TRun>(&t.v)) {
    out.push_back(r->body);
  } else if (auto* i = std::get_if<TIf>(&t.v)) {
    out.push_back(i->cond);
    out.push_back(i->thn);
    out.push_back(i->els);
  } else if (auto* r = std::get_if<TRead>(&t.v)) {
    out.push_back(r->rec);
    out.push_back(r->sel);
  } else if (auto* w = std::get_if<TWrite>(&t.v)) {
    out.push_back(w->rec);
    out.push_back(w->sel);
    out.push_back(w->val);
  } else if (auto* d = std::get_if<TDel>(&t.v)) {
    out.push_back(d->rec);
    out.push_back(d->sel);
  } else if (auto* s = std::get_if<TSubst>(&t.v)) {
    out.push_back(Expr{s->term, e.label});
    if (s->env)
      for (auto& [k, v] : *s->env) out.push_back(v);
  } else if (auto* r = std::get_if<TRunIn>(&t.v)) {
    out.push_back(r->body);
    if (r->env)
      for (auto& [k, v] : *r->env) out.push_back(v);
  } else if (auto* m = std::get_if<TMarked>(&t.v)) {
    out.push_back(m->body);
  } else if (auto* p = std::get_if<TPrim>(&t.v)) {
    out.push_back(p->lhs);
    if (p->rhs) out.push_back(*p->rhs);
  }
  return out;
}

void traverse(const Expr& e, const std::function<void(const Expr&)>& f) {
  f(e);
  for (const Expr& c : children(e)) traverse(c, f);
}

std::set<Marker> markers_of(const Expr& e) {
  std::set<Marker> out;
  traverse(e, [&](const Expr& x) {
    if (auto* m = as<TMarked>(x)) out.insert(m->marker);
  });
  return out;
}

Expr unmark(const Expr& e) {
  const Term& t = *e.term;
  if (auto* m = std::get_if<TMarked>(&t.v)) return unmark(m->body);
  if (auto* c = std::get_if<TConst>(&t.v)) return mk_const(c->k, e.label);
  if (auto* v = std::get_if<TVar>(&t.v)) return mk_var(v->name, e.label);
  if (auto* f = std::get_if<TFun>(&t.v))
    return mk_fun(f->param, unmark(f->body), e.label);
  if (auto* a = std::get_if<TApp>(&t.v))
    return mk_app(unmark(a->fn), unmark(a->arg), e.label);
  if (auto* r = std::get_if<TRecord>(&t.v)) {
    std::vector<std::pair<std::string, Expr>> fs;
    for (auto& f : r->fields) fs.emplace_back(f.first, unmark(f.second));
    return mk_record(std::move(fs), e.label);
  }
  if (auto* b = std::get_if<TBox>(&t.v)) return mk_box(unmark(b->body), e.label);
  if (auto* u = std::get_if<TUnbox>(&t.v))
    return mk_unbox(unmark(u->body), e.label);
  if (auto* r = std::get_if<TRun>(&t.v)) return mk_run(unmark(r->body), e.label);
  if (auto* i = std::get_if<TIf>(&t.v))
    return mk_if(unmark(i->cond), unmark(i->thn), unmark(i->els), e.label);
  if (auto* r = std::get_if<TRead>(&t.v))
    return mk_read(unmark(r->rec), unmark(r->sel), e.label);
  if (auto* w = std::get_if<TWrite>(&t.v))
    return mk_write(unmark(w->rec), unmark(w->sel), unmark(w->val), e.label);
  if (auto* d = std::get_if<TDel>(&t.v))
    return mk_del(unmark(d->rec), unmark(d->sel), e.label);
  if (auto* s = std::get_if<TSubst>(&t.v)) {
    Expr inner = unmark(Expr{s->term, e.label});
    auto env = std::make_shared<Env>();
    if (s->env)
      for (auto& [k, v] : *s->env) (*env)[k] = unmark(v);
    return mk_subst(inner, env);
  }
  if (auto* r = std::get_if<TRunIn>(&t.v)) {
    auto env = std::make_shared<Env>();
    if (r->env)
      for (auto& [k, v] : *r->env) (*env)[k] = unmark(v);
    return mk_run_in(unmark(r->body), env, e.label);
  }
  if (std::holds_alternative<THole>(t.v)) return mk_hole(e.label);
  if (auto* p = std::get_if<TPrim>(&t.v)) {
    std::optional<Expr> rhs;
    if (p->rhs) rhs = unmark(*p->rhs);
    return mk_prim(p->op, unmark(p->lhs), std::move(rhs), e.label);
  }
  return e;
}

Expr erase(const Expr& e, const std::set<Marker>& keep) {
  const Term& t = *e.term;
  if (auto* m = std::get_if<TMarked>(&t.v)) {
    if (!keep.count(m->marker)) return mk_hole(e.label);
    return mk_marked(m->marker, erase(m->body, keep), e.label);
  }
  if (auto* c = std::get_if<TConst>(&t.v)) return mk_const(c->k, e.label);
  if (auto* v = std::get_if<TVar>(&t.v)) return mk_var(v->name, e.label);
  if (auto* f = std::get_if<TFun>(&t.v))
    return mk_fun(f->param, erase(f->body, keep), e.label);
  if (auto* a = std::get_if<TApp>(&t.v))
    return mk_app(erase(a->fn, keep), erase(a->arg, keep), e.label);
  if (auto* r = std::get_if<TRecord>(&t.v)) {
    std::vector<std::pair<std::string, Expr>> fs;
    for (auto& f : r->fields) fs.emplace_back(f.first, erase(f.second, keep));
    return mk_record(std::move(fs), e.label);
  }
  if (auto* b = std::get_if<TBox>(&t.v))
    return mk_box(erase(b->body, keep), e.label);
  if (auto* u = std::get_if<TUnbox>(&t.v))
    return mk_unbox(erase(u->body, keep), e.label);
  if (auto* r = std::get_if<TRun>(&t.v))
    return mk_run(erase(r->body, keep), e.label);
  if (auto* i = std::get_if<TIf>(&t.v))
    return mk_if(erase(i->cond, keep), erase(i->thn, keep), erase(i->els, keep),
                 e.label);
  if (auto* r = std::get_if<TRead>(&t.v))
    return mk_read(erase(r->rec, keep), erase(r->sel, keep), e.label);
  if (auto* w = std::get_if<TWrite>(&t.v))
    return mk_write(erase(w->rec, keep), erase(w->sel, keep),
                    erase(w->val, keep), e.label);
  if (auto* d = std::get_if<TDel>(&t.v))
    return mk_del(erase(d->rec, keep), erase(d->sel, keep), e.label);
  if (auto* s = std::get_if<TSubst>(&t.v)) {
    Expr inner = erase(Expr{s->term, e.label}, keep);
    auto env = std::make_shared<Env>();
    if (s->env)
      for (auto& [k, v] : *s->env) (*env)[k] = erase(v, keep);
    return mk_subst(inner, env);
  }
  if (auto* r = std::get_if<TRunIn>(&t.v)) {
    auto env = std::make_shared<Env>();
    if (r->env)
      for (auto& [k, v] : *r->env) (*env)[k] = erase(v, keep);
    return mk_run_in(erase(r->body, keep), env, e.label);
  }
  if (std::holds_alternative<THole>(t.v)) return mk_hole(e.label);
  if (auto* p = std::get_if<TPrim>(&t.v)) {
    std::optional<Expr> rhs;
    if (p->rhs) rhs = erase(*p->rhs, keep);
    return mk_prim(p->op, erase(p->lhs, keep), std::move(rhs), e.label);
  }
  return e;
}

namespace {
Expr relabel_rec(const Expr& e, Label& next) {
  const Term& t = *e.term;
  if (auto* c = std::get_if<TConst>(&t.v)) return mk_const(c->k, next++);
  if (auto* v = std::get_if<TVar>(&t.v)) return mk_var(v->name, next++);
  if (auto* f = std::get_if<TFun>(&t.v)) {
    Expr b = relabel_rec(f->body, next);
    return mk_fun(f->param, std::move(b), next++);
  }
  if (auto* a = std::get_if<TApp>(&t.v)) {
    Expr fn = relabel_rec(a->fn, next);
    Expr arg = relabel_rec(a->arg, next);
    return mk_app(std::move(fn), std::move(arg), next++);
  }
  if (auto* r = std::get_if<TRecord>(&t.v)) {
    std::vector<std::pair<std::string, Expr>> fs;
    for (auto& f : r->fields)
      fs.emplace_back(f.first, relabel_rec(f.second, next));
    return mk_record(std::move(fs), next++);
  }
  if (auto* b = std::get_if<TBox>(&t.v)) {
    Expr body = relabel_rec(b->body, next);
    return mk_box(std::move(body), next++);
  }
  if (auto* u = std::get_if<TUnbox>(&t.v)) {
    Expr body = relabel_rec(u->body, next);
    return mk_unbox(std::move(body), next++);
  }
  if (auto* r = std::get_if<TRun>(&t.v)) {
    Expr body = relabel_rec(r->body, next);
    return mk_run(std::move(body), next++);
  }
  if (auto* i = std::get_if<TIf>(&t.v)) {
    Expr c = relabel_rec(i->cond, next);
    Expr th = relabel_rec(i->thn, next);
    Expr el = relabel_rec(i->els, next);
    return mk_if(std::move(c), std::move(th), std::move(el), next++);
  }
  if (auto* r = std::get_if<TRead>(&t.v)) {
    Expr rec = relabel_rec(r->rec, next);
    Expr sel = relabel_rec(r->sel, next);
    return mk_read(std::move(rec), std::move(sel), next++);
  }
  if (auto* w = std::get_if<TWrite>(&t.v)) {
    Expr rec = relabel_rec(w->rec, next);
    Expr sel = relabel_rec(w->sel, next);
    Expr val = relabel_rec(w->val, next);
    return mk_write(std::move(rec), std::move(sel), std::move(val), next++);
  }
  if (auto* d = std::get_if<TDel>(&t.v)) {
    Expr rec = relabel_rec(d->rec, next);
    Expr sel = relabel_rec(d->sel, next);
    return mk_del(std::move(rec), std::move(sel), next++);
  }
  if (auto* s = std::get_if<TSubst>(&t.v)) {
    // The wrapped term takes the fresh label; the node shares it.
    Expr inner = relabel_rec(Expr{s->term, e.label}, next);
    return mk_subst(inner, s->env);
  }
  if (auto* r = std::get_if<TRunIn>(&t.v)) {
    Expr body = relabel_rec(r->body, next);
    return mk_run_in(std::move(body), r->env, next++);
  }
  if (auto* m = std::get_if<TMarked>(&t.v)) {
    Expr body = relabel_rec(m->body, next);
    return mk_marked(m->marker, std::move(body), next++);
  }
  if (std::holds_alternative<THole>(t.v)) return mk_hole(next++);
  if (auto* p = std::get_if<TPrim>(&t.v)) {
    Expr lhs = relabel_rec(p->lhs, next);
    std::optional<Expr> rhs;
    if (p->rhs) rhs = relabel_rec(*p->rhs, next);
    return mk_prim(p->op, std::move(lhs), std::move(rhs), next++);
  }
  return e;
}
}  // namespace

Expr relabel(const Expr& e) {
  Label next = 0;
  return relabel_rec(e, next);
}

Label max_label(const Expr& e) {
  Label m = 0;
  traverse(e, [&](const Expr& x) { m = std::max(m, x.label); });
  return m;
}

}  // namespace slamjs
