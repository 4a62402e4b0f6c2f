#include "slamjs/properties.hpp"

#include <random>
#include <utility>

#include "slamjs/ifa.hpp"
#include "slamjs/printer.hpp"

namespace slamjs {

namespace {

// Whole-program states of one run, consecutive duplicates removed. The
// initial state is the program wrapped in the empty substitution, the same
// way evaluate() starts.
std::vector<Expr> run_images(const Expr& program, const EvalOptions& eval,
                             bool erase_markers, EvalResult* out) {
  std::vector<Expr> seq;
  Expr initial = mk_subst(program, empty_env());
  seq.push_back(erase_markers ? unmark(initial) : initial);
  EvalResult r = evaluate(
      program, eval,
      [&](long, int, const std::string&, const Expr& after) {
        Expr img = erase_markers ? unmark(after) : after;
        if (!equal_exprs(seq.back(), img, false)) seq.push_back(std::move(img));
      });
  if (out) *out = r;
  return seq;
}

void explain(std::string* why, std::string text) {
  if (why) *why = std::move(text);
}

AbsTag tag_of(ConstKind k) {
  switch (k) {
    case ConstKind::Undef: return AbsTag::Undef;
    case ConstKind::Null: return AbsTag::Null;
    case ConstKind::Bool: return AbsTag::Bool;
    case ConstKind::Num: return AbsTag::Num;
    case ConstKind::Str: return AbsTag::Str;
  }
  return AbsTag::Undef;
}

// Same-kind random constant; undef and null have a single inhabitant.
Const random_same_kind(const Const& k, std::mt19937_64& rng) {
  switch (k.kind) {
    case ConstKind::Bool: return Const::boolean(rng() % 2 == 1);
    case ConstKind::Num:
      return Const::number(static_cast<double>(rng() % 10));
    case ConstKind::Str: {
      static const char* pool[] = {"a", "b", "c", "x", "hi"};
      return Const::string(pool[rng() % 5]);
    }
    default: return k;
  }
}

// Rebuilds the tree keeping every label; constants inside subtrees marked
// with `m` are replaced by random same-kind constants.
Expr randomize_marked(const Expr& e, const Marker& m, bool inside,
                      std::mt19937_64& rng) {
  if (const auto* t = as<TConst>(e)) {
    if (!inside) return e;
    return mk_const(random_same_kind(t->k, rng), e.label);
  }
  if (const auto* t = as<TMarked>(e)) {
    bool in = inside || t->marker == m;
    return mk_marked(t->marker, randomize_marked(t->body, m, in, rng), e.label);
  }
  auto go = [&](const Expr& c) { return randomize_marked(c, m, inside, rng); };
  if (const auto* t = as<TFun>(e)) return mk_fun(t->param, go(t->body), e.label);
  if (const auto* t = as<TApp>(e)) return mk_app(go(t->fn), go(t->arg), e.label);
  if (const auto* t = as<TRecord>(e)) {
    auto fields = t->fields;
    for (auto& f : fields) f.second = go(f.second);
    return mk_record(std::move(fields), e.label);
  }
  if (const auto* t = as<TBox>(e)) return mk_box(go(t->body), e.label);
  if (const auto* t = as<TUnbox>(e)) return mk_unbox(go(t->body), e.label);
  if (const auto* t = as<TRun>(e)) return mk_run(go(t->body), e.label);
  if (const auto* t = as<TIf>(e))
    return mk_if(go(t->cond), go(t->thn), go(t->els), e.label);
  if (const auto* t = as<TRead>(e)) return mk_read(go(t->rec), go(t->sel), e.label);
  if (const auto* t = as<TWrite>(e))
    return mk_write(go(t->rec), go(t->sel), go(t->val), e.label);
  if (const auto* t = as<TDel>(e)) return mk_del(go(t->rec), go(t->sel), e.label);
  if (const auto* t = as<TPrim>(e)) {
    if (t->rhs) return mk_prim(t->op, go(t->lhs), go(*t->rhs), e.label);
    return mk_prim(t->op, go(t->lhs), std::nullopt, e.label);
  }
  // Variables, holes and intermediate forms carry no constants to replace.
  return e;
}

}  // namespace

bool check_simulation(const Expr& program, const EvalOptions& eval,
                      std::string* why) {
  EvalResult marked_run, plain_run;
  std::vector<Expr> marked_seq = run_images(program, eval, true, &marked_run);
  std::vector<Expr> plain_seq =
      run_images(unmark(program), eval, false, &plain_run);
  if (marked_run.outcome != Outcome::Value) {
    explain(why, "marked run did not reach a value");
    return false;
  }
  if (plain_run.outcome != Outcome::Value) {
    explain(why, "marker-erased run did not reach a value");
    return false;
  }
  if (marked_seq.size() != plain_seq.size()) {
    explain(why, "runs have " + std::to_string(marked_seq.size()) + " vs " +
                     std::to_string(plain_seq.size()) + " distinct states");
    return false;
  }
  for (std::size_t i = 0; i < marked_seq.size(); ++i) {
    if (!equal_exprs(marked_seq[i], plain_seq[i], false)) {
      explain(why, "state " + std::to_string(i) + " differs: " +
                       to_string(marked_seq[i]) + " vs " +
                       to_string(plain_seq[i]));
      return false;
    }
  }
  return true;
}

bool check_stability(const Expr& program, const EvalOptions& eval,
                     std::string* why) {
  EvalResult base = evaluate(program, eval);
  if (base.outcome != Outcome::Value) {
    explain(why, "baseline run did not reach a value");
    return false;
  }
  std::set<Marker> keep = markers_of(base.final_expr);
  Expr erased = erase(program, keep);
  EvalResult again = evaluate(erased, eval);
  if (again.outcome != Outcome::Value) {
    explain(why, "erased program did not reach a value (kept {" +
                     [&] {
                       std::string s;
                       for (const auto& m : keep) s += s.empty() ? m : ", " + m;
                       return s;
                     }() +
                     "})");
    return false;
  }
  if (!equal_exprs(again.final_expr, base.final_expr, true)) {
    explain(why, "erased program produced " + to_string(again.final_expr) +
                     " instead of " + to_string(base.final_expr));
    return false;
  }
  return true;
}

bool constant_like_result(const Expr& v) {
  const Expr* cur = &v;
  while (const auto* m = as<TMarked>(*cur)) cur = &m->body;
  return as<TConst>(*cur) != nullptr;
}

bool check_flow_soundness(const Expr& final_value,
                          const std::set<Marker>& reported, std::string* why) {
  for (const Marker& m : markers_of(final_value)) {
    if (!reported.count(m)) {
      explain(why, "marker " + m + " is in the result " +
                       to_string(final_value) + " but not reported");
      return false;
    }
  }
  return true;
}

bool check_value_soundness(const Expr& final_value, Label root,
                           const CfaResult& cfa, std::string* why) {
  const Expr* v = &final_value;
  while (const auto* m = as<TMarked>(*v)) v = &m->body;
  const std::set<AbsVal>& vals = cfa.at(root);
  auto has_tag = [&](AbsTag t) {
    for (const auto& av : vals)
      if (av.tag == t) return true;
    return false;
  };
  auto fail = [&](const std::string& want) {
    explain(why, "no " + want + " at root " + std::to_string(root) +
                     " for result " + to_string(final_value));
    return false;
  };
  if (const auto* c = as<TConst>(*v))
    return has_tag(tag_of(c->k.kind)) ? true : fail("matching constant tag");
  if (const auto* s = as<TSubst>(*v)) {
    const auto* f = std::get_if<TFun>(&s->term->v);
    if (!f) return fail("closure shape");  // substitutions only close funs
    for (const auto& av : vals)
      if (av.tag == AbsTag::Fun && av.param == f->param &&
          av.body == f->body.label)
        return true;
    return fail("closure over parameter " + f->param + " with body " +
                std::to_string(f->body.label));
  }
  if (as<TRecord>(*v)) return has_tag(AbsTag::Rec) ? true : fail("record");
  if (as<TBox>(*v)) return has_tag(AbsTag::Box) ? true : fail("box");
  if (as<THole>(*v)) return true;  // nothing is claimed about holes
  return fail("known value shape");
}

bool check_preservation(const Expr& program, const EvalOptions& eval,
                        std::string* why) {
  CfaResult cfa = analyze_cfa(program, CfaVariant::Simple);
  FlowGraph graph = analyze_flows(program, cfa);
  Label prev = program.label;
  bool ok = true;
  std::string reason;
  evaluate(program, eval,
           [&](long step, int, const std::string& rule, const Expr& after) {
             if (!ok) return;
             Label cur = after.label;
             if (cur != prev &&
                 !graph.reaches(FlowNode::lbl(cur), FlowNode::lbl(prev))) {
               ok = false;
               reason = "step " + std::to_string(step) + " (" + rule +
                        ") moved the root from " + std::to_string(prev) +
                        " to " + std::to_string(cur) +
                        " without a flow between them";
             }
             prev = cur;
           });
  if (!ok) explain(why, reason);
  return ok;
}

NoninterferenceOutcome check_noninterference(const Expr& program,
                                             const Marker& marker, int trials,
                                             std::uint64_t seed,
                                             const EvalOptions& eval) {
  NoninterferenceOutcome out;
  EvalResult base = evaluate(program, eval);
  if (base.outcome != Outcome::Value) return out;
  Expr base_image = unmark(base.final_expr);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    ++out.trials;
    Expr variant = randomize_marked(program, marker, false, rng);
    EvalResult r = evaluate(variant, eval);
    if (r.outcome != Outcome::Value) continue;
    ++out.compared;
    if (!equal_exprs(unmark(r.final_expr), base_image, false)) ++out.mismatched;
  }
  return out;
}

bool PropertyReport::all_passed() const {
  return simulation.all() && stability.all() && flow_soundness_simple.all() &&
         flow_soundness_improved.all() && value_soundness_simple.all() &&
         value_soundness_improved.all() && preservation.all();
}

namespace {

void record_failure(PropertyReport& rep, const PropertyOptions& opts,
                    const std::string& property, const Expr& program,
                    const std::string& detail,
                    const std::function<bool(const Expr&)>& still_fails) {
  if (static_cast<int>(rep.failures.size()) >= opts.max_failures) return;
  Expr small = shrink(program, still_fails, 200);
  rep.failures.push_back({property, to_string(small), detail});
}

}  // namespace

PropertyReport run_property_suite(const PropertyOptions& opts) {
  PropertyReport rep;
  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < opts.count; ++i) {
    Generated g = generate_terminating(rng, opts.gen);
    const Expr& p = g.program;
    ++rep.programs;
    std::string why;

    ++rep.simulation.checked;
    if (check_simulation(p, opts.eval, &why)) {
      ++rep.simulation.passed;
    } else {
      record_failure(rep, opts, "simulation", p, why, [&](const Expr& c) {
        return !check_simulation(c, opts.eval, nullptr);
      });
    }

    ++rep.stability.checked;
    if (check_stability(p, opts.eval, &why)) {
      ++rep.stability.passed;
    } else {
      record_failure(rep, opts, "stability", p, why, [&](const Expr& c) {
        return !check_stability(c, opts.eval, nullptr);
      });
    }

    for (CfaVariant variant : {CfaVariant::Simple, CfaVariant::Improved}) {
      bool simple = variant == CfaVariant::Simple;
      CfaResult cfa = analyze_cfa(p, variant);
      FlowGraph graph = analyze_flows(p, cfa);

      CheckCounts& value_counts =
          simple ? rep.value_soundness_simple : rep.value_soundness_improved;
      ++value_counts.checked;
      if (check_value_soundness(g.result.final_expr, p.label, cfa, &why)) {
        ++value_counts.passed;
      } else {
        record_failure(
            rep, opts,
            simple ? "value soundness (simple)" : "value soundness (improved)",
            p, why, [&, variant](const Expr& c) {
              EvalResult r = evaluate(c, opts.eval);
              if (r.outcome != Outcome::Value) return false;
              CfaResult c_cfa = analyze_cfa(c, variant);
              return !check_value_soundness(r.final_expr, c.label, c_cfa,
                                            nullptr);
            });
      }

      if (constant_like_result(g.result.final_expr)) {
        CheckCounts& flow_counts =
            simple ? rep.flow_soundness_simple : rep.flow_soundness_improved;
        ++flow_counts.checked;
        std::set<Marker> reported = graph.reaching_markers(p.label);
        if (check_flow_soundness(g.result.final_expr, reported, &why)) {
          ++flow_counts.passed;
        } else {
          record_failure(
              rep, opts,
              simple ? "flow soundness (simple)" : "flow soundness (improved)",
              p, why, [&, variant](const Expr& c) {
                EvalResult r = evaluate(c, opts.eval);
                if (r.outcome != Outcome::Value ||
                    !constant_like_result(r.final_expr))
                  return false;
                return !check_flow_soundness(r.final_expr,
                                             depends(c, variant), nullptr);
              });
        }
      }
    }

    if (opts.preservation) {
      ++rep.preservation.checked;
      if (check_preservation(p, opts.eval, &why)) {
        ++rep.preservation.passed;
      } else {
        record_failure(rep, opts, "preservation", p, why, [&](const Expr& c) {
          return !check_preservation(c, opts.eval, nullptr);
        });
      }
    }
  }
  return rep;
}

std::string report_to_text(const PropertyReport& report) {
  auto line = [](const std::string& name, const CheckCounts& c) {
    if (c.checked == 0) return std::string();
    return "  " + name + ": " + std::to_string(c.passed) + "/" +
           std::to_string(c.checked) + (c.all() ? "" : "  FAILED") + "\n";
  };
  std::string out = "property suite: " + std::to_string(report.programs) +
                    " generated programs\n";
  out += line("simulation", report.simulation);
  out += line("stability", report.stability);
  out += line("flow soundness (simple)", report.flow_soundness_simple);
  out += line("flow soundness (improved)", report.flow_soundness_improved);
  out += line("value soundness (simple)", report.value_soundness_simple);
  out += line("value soundness (improved)", report.value_soundness_improved);
  out += line("preservation", report.preservation);
  for (const auto& f : report.failures) {
    out += "failure [" + f.property + "]: " + f.detail + "\n  program: " +
           f.program + "\n";
  }
  return out;
}

}  // namespace slamjs
