#include "slamjs/ifa.hpp"

#include <deque>

namespace slamjs {

std::string to_string(const FlowNode& n) {
  switch (n.kind) {
    case FlowNode::Lbl: return std::to_string(n.label);
    case FlowNode::Var: return "var:" + to_string(n.var);
    case FlowNode::Mark: return "marker:" + n.marker;
  }
  return "?";
}

std::set<Marker> FlowGraph::reaching_markers(Label target) const {
  // Reverse reachability from the target over all edges.
  std::map<FlowNode, std::vector<FlowNode>> preds;
  for (const FlowEdge& e : edges) preds[e.dst].push_back(e.src);
  std::set<FlowNode> seen;
  std::deque<FlowNode> work{FlowNode::lbl(target)};
  seen.insert(FlowNode::lbl(target));
  std::set<Marker> out;
  while (!work.empty()) {
    FlowNode n = work.front();
    work.pop_front();
    if (n.kind == FlowNode::Mark) out.insert(n.marker);
    auto it = preds.find(n);
    if (it == preds.end()) continue;
    for (const FlowNode& p : it->second)
      if (seen.insert(p).second) work.push_back(p);
  }
  return out;
}

bool FlowGraph::reaches(const FlowNode& from, const FlowNode& to) const {
  std::map<FlowNode, std::vector<FlowNode>> succs;
  for (const FlowEdge& e : edges) succs[e.src].push_back(e.dst);
  std::set<FlowNode> seen{from};
  std::deque<FlowNode> work{from};
  while (!work.empty()) {
    FlowNode n = work.front();
    work.pop_front();
    if (n == to) return true;
    auto it = succs.find(n);
    if (it == succs.end()) continue;
    for (const FlowNode& s : it->second)
      if (seen.insert(s).second) work.push_back(s);
  }
  return false;
}

namespace {

struct FlowGen {
  const CfaResult& cfa;
  FlowGraph graph;
  bool improved;

  void edge(FlowNode src, FlowNode dst, bool direct, const char* origin) {
    graph.edges.insert(
        {std::move(src), std::move(dst), direct, origin});
  }

  void walk(const Expr& e) {
    const Term& t = *e.term;
    Label l = e.label;
    if (std::holds_alternative<TConst>(t.v) ||
        std::holds_alternative<THole>(t.v))
      return;
    if (std::holds_alternative<TVar>(t.v)) {
      // Every cell this occurrence can read, including cells discovered
      // when captures were resolved at splice sites.
      if (auto it = cfa.resolution.find(l); it != cfa.resolution.end())
        for (const AbsVar& cell : it->second)
          edge(FlowNode::var_cell(cell), FlowNode::lbl(l), true, "var");
      return;
    }
    if (auto* f = std::get_if<TFun>(&t.v)) {
      walk(f->body);
      return;
    }
    if (auto* a = std::get_if<TApp>(&t.v)) {
      for (const AbsVal& v : cfa.at(a->fn.label)) {
        if (v.tag != AbsTag::Fun) continue;
        AbsVar cell = improved ? AbsVar::param(v.param, v.node)
                               : AbsVar::param(v.param, -1);
        edge(FlowNode::lbl(a->arg.label), FlowNode::var_cell(cell), true,
             "app");
        edge(FlowNode::lbl(v.body), FlowNode::lbl(l), true, "app");
      }
      edge(FlowNode::lbl(a->fn.label), FlowNode::lbl(l), false, "app");
      walk(a->fn);
      walk(a->arg);
      return;
    }
    if (auto* r = std::get_if<TRecord>(&t.v)) {
      for (const AbsVal& v : cfa.at(l)) {
        if (v.tag != AbsTag::Rec) continue;
        for (auto& f : r->fields)
          edge(FlowNode::lbl(f.second.label),
               FlowNode::var_cell(AbsVar::slot(v.node, f.first)), true,
               "record");
      }
      for (auto& f : r->fields) walk(f.second);
      return;
    }
    if (auto* b = std::get_if<TBox>(&t.v)) {
      walk(b->body);
      return;
    }
    if (auto* u = std::get_if<TUnbox>(&t.v)) {
      splice_edges(l, u->body.label, "unbox");
      walk(u->body);
      return;
    }
    if (auto* r = std::get_if<TRun>(&t.v)) {
      splice_edges(l, r->body.label, "run");
      walk(r->body);
      return;
    }
    if (auto* r = std::get_if<TRunIn>(&t.v)) {
      splice_edges(l, r->body.label, "run");
      walk(r->body);
      if (r->env)
        for (auto& [k, v] : *r->env) walk(v);
      return;
    }
    if (auto* i = std::get_if<TIf>(&t.v)) {
      edge(FlowNode::lbl(i->thn.label), FlowNode::lbl(l), true, "if");
      edge(FlowNode::lbl(i->els.label), FlowNode::lbl(l), true, "if");
      edge(FlowNode::lbl(i->cond.label), FlowNode::lbl(l), false, "if");
      walk(i->cond);
      walk(i->thn);
      walk(i->els);
      return;
    }
    if (auto* rd = std::get_if<TRead>(&t.v)) {
      for (const AbsVal& v : cfa.at(rd->rec.label)) {
        if (v.tag != AbsTag::Rec) continue;
        for (Label p : cfa.proto_closure(v.node))
          for (const std::string& s : cfa.universe)
            edge(FlowNode::var_cell(AbsVar::slot(p, s)), FlowNode::lbl(l),
                 true, "read");
      }
      edge(FlowNode::lbl(rd->rec.label), FlowNode::lbl(l), false, "read");
      edge(FlowNode::lbl(rd->sel.label), FlowNode::lbl(l), false, "read");
      walk(rd->rec);
      walk(rd->sel);
      return;
    }
    if (auto* w = std::get_if<TWrite>(&t.v)) {
      edge(FlowNode::lbl(w->rec.label), FlowNode::lbl(l), true, "write");
      for (const AbsVal& v : cfa.at(w->rec.label)) {
        if (v.tag != AbsTag::Rec) continue;
        for (const std::string& s : cfa.universe)
          edge(FlowNode::lbl(w->val.label),
               FlowNode::var_cell(AbsVar::slot(v.node, s)), true, "write");
      }
      edge(FlowNode::lbl(w->sel.label), FlowNode::lbl(l), false, "write");
      walk(w->rec);
      walk(w->sel);
      walk(w->val);
      return;
    }
    if (auto* d = std::get_if<TDel>(&t.v)) {
      edge(FlowNode::lbl(d->rec.label), FlowNode::lbl(l), true, "del");
      edge(FlowNode::lbl(d->sel.label), FlowNode::lbl(l), false, "del");
      walk(d->rec);
      walk(d->sel);
      return;
    }
    if (auto* s = std::get_if<TSubst>(&t.v)) {
      walk(Expr{s->term, l});
      if (s->env)
        for (auto& [k, v] : *s->env) walk(v);
      return;
    }
    if (auto* m = std::get_if<TMarked>(&t.v)) {
      edge(FlowNode::lbl(m->body.label), FlowNode::lbl(l), true, "marker");
      edge(FlowNode::mark(m->marker), FlowNode::lbl(l), true, "marker");
      walk(m->body);
      return;
    }
    if (auto* p = std::get_if<TPrim>(&t.v)) {
      edge(FlowNode::lbl(p->lhs.label), FlowNode::lbl(l), true, "prim");
      if (p->rhs)
        edge(FlowNode::lbl(p->rhs->label), FlowNode::lbl(l), true, "prim");
      walk(p->lhs);
      if (p->rhs) walk(*p->rhs);
      return;
    }
  }

  void splice_edges(Label node, Label operand, const char* origin) {
    for (const AbsVal& v : cfa.at(operand))
      if (v.tag == AbsTag::Box)
        edge(FlowNode::lbl(v.node), FlowNode::lbl(node), true, origin);
    edge(FlowNode::lbl(operand), FlowNode::lbl(node), false, origin);
  }
};

}  // namespace

FlowGraph analyze_flows(const Expr& program, const CfaResult& cfa) {
  FlowGen gen{cfa, {}, cfa.variant == CfaVariant::Improved};
  gen.walk(program);
  return std::move(gen.graph);
}

std::set<Marker> depends(const Expr& program, CfaVariant variant) {
  CfaResult cfa = analyze_cfa(program, variant);
  FlowGraph flows = analyze_flows(program, cfa);
  return flows.reaching_markers(program.label);
}

}  // namespace slamjs
