#include "slamjs/cfa.hpp"

#include <cassert>
#include <optional>

namespace slamjs {

std::string to_string(const AbsVal& v) {
  switch (v.tag) {
    case AbsTag::Null: return "NULL";
    case AbsTag::Undef: return "UNDEF";
    case AbsTag::Bool: return "BOOL";
    case AbsTag::Num: return "NUM";
    case AbsTag::Str: return "STR";
    case AbsTag::Fun:
      return "FUN(" + v.param + "," + std::to_string(v.body) + ")";
    case AbsTag::Box: return "BOX(" + std::to_string(v.node) + ")";
    case AbsTag::Rec: return "REC(" + std::to_string(v.node) + ")";
  }
  return "?";
}

std::string to_string(const AbsVar& v) {
  switch (v.kind) {
    case AbsVar::Global: return v.name + "@global";
    case AbsVar::Param:
      return v.binder < 0 ? v.name : v.name + "@" + std::to_string(v.binder);
    case AbsVar::Slot: return std::to_string(v.binder) + "." + v.name;
  }
  return "?";
}

const std::set<AbsVal>& CfaResult::at(Label l) const {
  static const std::set<AbsVal> none;
  auto it = gamma.find(l);
  return it == gamma.end() ? none : it->second;
}

const std::set<AbsVal>& CfaResult::at(const AbsVar& v) const {
  static const std::set<AbsVal> none;
  auto it = rho.find(v);
  return it == rho.end() ? none : it->second;
}

std::set<Label> CfaResult::proto_closure(Label rec) const {
  std::set<Label> out{rec};
  std::vector<Label> work{rec};
  while (!work.empty()) {
    Label p = work.back();
    work.pop_back();
    for (const AbsVal& v : at(AbsVar::slot(p, "__proto__"))) {
      if (v.tag == AbsTag::Rec && out.insert(v.node).second)
        work.push_back(v.node);
    }
  }
  return out;
}

namespace {

struct FactApp {
  Label node, fn, arg;
};
struct FactRead {
  Label node, rec;
};
struct FactWrite {
  Label rec, val;
};
// A place where code templates arrive and get spliced: run, run-in, unbox.
// frame is the lexical frame of the stage the spliced code lands in;
// unresolved names missing from it either climb into the enclosing
// template (fallback) or, at stage 0, fall back to the catch-all cell.
struct FactSplice {
  Label node, operand;
  std::map<std::string, Label> frame;
  std::optional<Label> fallback;
};

struct Facts {
  std::vector<std::pair<Label, AbsVal>> members;
  std::vector<std::pair<Label, Label>> subsets;  // Γ(first) ⊆ Γ(second)
  std::vector<std::pair<Label, AbsVar>> var_reads;
  std::vector<std::pair<Label, AbsVar>> binds;  // Γ(label) ⊆ ϱ(cell)
  std::vector<FactApp> apps;
  std::vector<FactRead> reads;
  std::vector<FactWrite> writes;
  std::vector<FactSplice> splices;
  std::map<Label, std::set<std::pair<std::string, Label>>> unres_seed;
};

struct Gen {
  CfaVariant variant;
  Facts facts;
  std::set<std::string> universe;
  // params by name -> all fun nodes binding that name (for environment
  // bindings of intermediate terms in the improved variant).
  std::map<std::string, std::set<Label>> funs_by_param;

  std::vector<std::map<std::string, Label>> frames{{}};
  std::vector<Label> boxes;

  bool improved() const { return variant == CfaVariant::Improved; }

  std::vector<AbsVar> env_cells(const std::string& name) {
    if (!improved()) return {AbsVar::param(name, -1)};
    std::vector<AbsVar> cells{AbsVar::global(name)};
    if (auto it = funs_by_param.find(name); it != funs_by_param.end())
      for (Label f : it->second) cells.push_back(AbsVar::param(name, f));
    return cells;
  }

  void gen_env(const EnvPtr& env) {
    if (!env) return;
    for (auto& [name, val] : *env) {
      for (AbsVar cell : env_cells(name))
        facts.binds.emplace_back(val.label, cell);
      // Environment values live at stage 0 with no lexical context of
      // their own.
      auto saved_frames = std::move(frames);
      auto saved_boxes = std::move(boxes);
      frames = {{}};
      boxes.clear();
      gen(val, 0);
      frames = std::move(saved_frames);
      boxes = std::move(saved_boxes);
    }
  }

  void gen(const Expr& e, int stage) {
    const Term& t = *e.term;
    Label l = e.label;
    if (auto* c = std::get_if<TConst>(&t.v)) {
      switch (c->k.kind) {
        case ConstKind::Undef:
          facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Undef));
          break;
        case ConstKind::Null:
          facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Null));
          break;
        case ConstKind::Bool:
          facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Bool));
          break;
        case ConstKind::Num:
          facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Num));
          break;
        case ConstKind::Str:
          facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Str));
          break;
      }
      return;
    }
    if (auto* v = std::get_if<TVar>(&t.v)) {
      if (!improved()) {
        facts.var_reads.emplace_back(l, AbsVar::param(v->name, -1));
        return;
      }
      auto& frame = frames[static_cast<size_t>(stage)];
      if (auto it = frame.find(v->name); it != frame.end()) {
        facts.var_reads.emplace_back(l, AbsVar::param(v->name, it->second));
      } else if (stage == 0) {
        facts.var_reads.emplace_back(l, AbsVar::global(v->name));
      } else {
        // Free inside a code template: resolved where the template is
        // spliced, not here.
        facts.unres_seed[boxes[static_cast<size_t>(stage - 1)]].emplace(
            v->name, l);
      }
      return;
    }
    if (auto* f = std::get_if<TFun>(&t.v)) {
      facts.members.emplace_back(l, AbsVal::fun(f->param, f->body.label, l));
      auto& frame = frames[static_cast<size_t>(stage)];
      std::optional<Label> saved;
      if (improved()) {
        if (auto it = frame.find(f->param); it != frame.end())
          saved = it->second;
        frame[f->param] = l;
      }
      gen(f->body, stage);
      if (improved()) {
        auto& fr = frames[static_cast<size_t>(stage)];
        if (saved) fr[f->param] = *saved;
        else fr.erase(f->param);
      }
      return;
    }
    if (auto* a = std::get_if<TApp>(&t.v)) {
      facts.apps.push_back({l, a->fn.label, a->arg.label});
      gen(a->fn, stage);
      gen(a->arg, stage);
      return;
    }
    if (auto* r = std::get_if<TRecord>(&t.v)) {
      facts.members.emplace_back(l, AbsVal::rec(l));
      for (auto& f : r->fields) {
        facts.binds.emplace_back(f.second.label, AbsVar::slot(l, f.first));
        gen(f.second, stage);
      }
      return;
    }
    if (auto* b = std::get_if<TBox>(&t.v)) {
      facts.members.emplace_back(l, AbsVal::box(b->body.label));
      frames.emplace_back();
      boxes.push_back(l);
      gen(b->body, stage + 1);
      frames.pop_back();
      boxes.pop_back();
      return;
    }
    if (auto* u = std::get_if<TUnbox>(&t.v)) {
      FactSplice sp;
      sp.node = l;
      sp.operand = u->body.label;
      sp.frame = frames[static_cast<size_t>(stage)];
      if (stage >= 1) sp.fallback = boxes[static_cast<size_t>(stage - 1)];
      facts.splices.push_back(std::move(sp));
      if (stage >= 1) {
        auto frame = std::move(frames.back());
        frames.pop_back();
        Label box = boxes.back();
        boxes.pop_back();
        gen(u->body, stage - 1);
        frames.push_back(std::move(frame));
        boxes.push_back(box);
      } else {
        // Stuck at runtime; keep the operand's constraints anyway.
        gen(u->body, 0);
      }
      return;
    }
    if (auto* r = std::get_if<TRun>(&t.v)) {
      FactSplice sp;
      sp.node = l;
      sp.operand = r->body.label;
      sp.frame = frames[static_cast<size_t>(stage)];
      if (stage >= 1) sp.fallback = boxes[static_cast<size_t>(stage - 1)];
      facts.splices.push_back(std::move(sp));
      gen(r->body, stage);
      return;
    }
    if (auto* r = std::get_if<TRunIn>(&t.v)) {
      FactSplice sp;
      sp.node = l;
      sp.operand = r->body.label;
      sp.frame = frames[static_cast<size_t>(stage)];
      if (stage >= 1) sp.fallback = boxes[static_cast<size_t>(stage - 1)];
      facts.splices.push_back(std::move(sp));
      gen(r->body, stage);
      gen_env(r->env);
      return;
    }
    if (auto* i = std::get_if<TIf>(&t.v)) {
      facts.subsets.emplace_back(i->thn.label, l);
      facts.subsets.emplace_back(i->els.label, l);
      gen(i->cond, stage);
      gen(i->thn, stage);
      gen(i->els, stage);
      return;
    }
    if (auto* r = std::get_if<TRead>(&t.v)) {
      facts.reads.push_back({l, r->rec.label});
      facts.members.emplace_back(l, AbsVal::scalar(AbsTag::Undef));
      gen(r->rec, stage);
      gen(r->sel, stage);
      return;
    }
    if (auto* w = std::get_if<TWrite>(&t.v)) {
      facts.subsets.emplace_back(w->rec.label, l);
      facts.writes.push_back({w->rec.label, w->val.label});
      gen(w->rec, stage);
      gen(w->sel, stage);
      gen(w->val, stage);
      return;
    }
    if (auto* d = std::get_if<TDel>(&t.v)) {
      facts.subsets.emplace_back(d->rec.label, l);
      gen(d->rec, stage);
      gen(d->sel, stage);
      return;
    }
    if (auto* s = std::get_if<TSubst>(&t.v)) {
      gen(Expr{s->term, l}, stage);
      gen_env(s->env);
      return;
    }
    if (auto* m = std::get_if<TMarked>(&t.v)) {
      facts.subsets.emplace_back(m->body.label, l);
      gen(m->body, stage);
      return;
    }
    if (std::holds_alternative<THole>(t.v)) return;
    if (auto* p = std::get_if<TPrim>(&t.v)) {
      AbsTag tag = p->op == PrimOp::Eq
                       ? AbsTag::Bool
                       : p->op == PrimOp::Sub ? AbsTag::Num : AbsTag::Str;
      facts.members.emplace_back(l, AbsVal::scalar(tag));
      gen(p->lhs, stage);
      if (p->rhs) gen(*p->rhs, stage);
      return;
    }
  }
};

template <class T>
bool union_into(std::set<T>& dst, const std::set<T>& src) {
  bool grew = false;
  for (const T& x : src) grew |= dst.insert(x).second;
  return grew;
}

}  // namespace

CfaResult analyze_cfa(const Expr& program, CfaVariant variant) {
  Gen g{variant, {}, {}, {}, {{}}, {}};

  // Field-name universe and the binder index come from one full walk that
  // also sees environments.
  g.universe.insert("__proto__");
  traverse(program, [&](const Expr& e) {
    if (auto* c = as<TConst>(e); c && c->k.kind == ConstKind::Str)
      g.universe.insert(c->k.str);
    if (auto* r = as<TRecord>(e))
      for (auto& f : r->fields) g.universe.insert(f.first);
    if (auto* f = as<TFun>(e)) g.funs_by_param[f->param].insert(e.label);
  });

  g.gen(program, 0);

  CfaResult res;
  res.variant = variant;
  res.universe = g.universe;

  auto& gamma = res.gamma;
  auto& rho = res.rho;
  std::map<Label, std::set<std::pair<std::string, Label>>> unres =
      g.facts.unres_seed;

  for (auto& [l, v] : g.facts.members) gamma[l].insert(v);
  for (auto& [l, cell] : g.facts.var_reads) res.resolution[l].insert(cell);

  bool improved = variant == CfaVariant::Improved;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [from, to] : g.facts.subsets)
      changed |= union_into(gamma[to], gamma[from]);
    for (auto& [l, cell] : g.facts.var_reads)
      changed |= union_into(gamma[l], rho[cell]);
    for (auto& [l, cell] : g.facts.binds)
      changed |= union_into(rho[cell], gamma[l]);
    for (auto& a : g.facts.apps) {
      // Iterate over a copy: insertions into gamma invalidate nothing here,
      // but gamma[a.fn] may alias gamma[a.node] when labels repeat.
      std::set<AbsVal> fns = gamma[a.fn];
      for (const AbsVal& f : fns) {
        if (f.tag != AbsTag::Fun) continue;
        AbsVar cell = improved ? AbsVar::param(f.param, f.node)
                               : AbsVar::param(f.param, -1);
        changed |= union_into(rho[cell], gamma[a.arg]);
        changed |= union_into(gamma[a.node], gamma[f.body]);
      }
    }
    for (auto& r : g.facts.reads) {
      std::set<AbsVal> recs = gamma[r.rec];
      for (const AbsVal& v : recs) {
        if (v.tag != AbsTag::Rec) continue;
        for (Label p : res.proto_closure(v.node))
          for (const std::string& s : res.universe)
            changed |= union_into(gamma[r.node], rho[AbsVar::slot(p, s)]);
      }
    }
    for (auto& w : g.facts.writes) {
      std::set<AbsVal> recs = gamma[w.rec];
      for (const AbsVal& v : recs) {
        if (v.tag != AbsTag::Rec) continue;
        for (const std::string& s : res.universe)
          changed |= union_into(rho[AbsVar::slot(v.node, s)], gamma[w.val]);
      }
    }
    for (auto& sp : g.facts.splices) {
      std::set<AbsVal> ops = gamma[sp.operand];
      for (const AbsVal& v : ops) {
        if (v.tag != AbsTag::Box) continue;
        changed |= union_into(gamma[sp.node], gamma[v.node]);
        auto pend = unres[v.node];  // copy: resolving may grow other cells
        for (auto& [name, occ] : pend) {
          if (auto it = sp.frame.find(name); it != sp.frame.end()) {
            AbsVar cell = AbsVar::param(name, it->second);
            changed |= union_into(gamma[occ], rho[cell]);
            changed |= res.resolution[occ].insert(cell).second;
          } else if (sp.fallback) {
            changed |= unres[*sp.fallback].emplace(name, occ).second;
          } else {
            AbsVar cell = AbsVar::global(name);
            changed |= union_into(gamma[occ], rho[cell]);
            changed |= res.resolution[occ].insert(cell).second;
          }
        }
      }
    }
  }

  // Drop empty cells so dumps stay tidy and deterministic.
  for (auto it = gamma.begin(); it != gamma.end();)
    it = it->second.empty() ? gamma.erase(it) : std::next(it);
  for (auto it = rho.begin(); it != rho.end();)
    it = it->second.empty() ? rho.erase(it) : std::next(it);
  return res;
}

}  // namespace slamjs
