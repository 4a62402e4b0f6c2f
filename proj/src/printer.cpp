#include "slamjs/printer.hpp"

#include <charconv>
#include <cstdio>

namespace slamjs {

std::string num_to_string(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

std::string const_to_string(const Const& k) {
  switch (k.kind) {
    case ConstKind::Undef: return "undef";
    case ConstKind::Null: return "null";
    case ConstKind::Bool: return k.b ? "true" : "false";
    case ConstKind::Num: return num_to_string(k.num);
    case ConstKind::Str: return quote_string(k.str);
  }
  return "undef";
}

namespace {

// Mirrors the grammar: lower levels need parens in higher-level positions.
enum Prec { PExpr = 0, PBinary = 1, PUnary = 2, PPostfix = 3, PPrimary = 4 };

struct Printer {
  PrintOptions opts;

  std::string env(const EnvPtr& env) {
    std::string out = "{";
    bool first = true;
    if (env) {
      for (auto& [k, v] : *env) {
        if (!first) out += ", ";
        first = false;
        out += k + " ↦ " + print(v, PExpr);
      }
    }
    out += "}";
    return out;
  }

  // Natural precedence of a node as an operand.
  static Prec prec_of(const Expr& e) {
    const Term& t = *e.term;
    if (std::holds_alternative<TApp>(t.v) ||
        std::holds_alternative<TRead>(t.v))
      return PPostfix;
    if (std::holds_alternative<TBox>(t.v) ||
        std::holds_alternative<TUnbox>(t.v) ||
        std::holds_alternative<TRun>(t.v) ||
        std::holds_alternative<TDel>(t.v))
      return PUnary;
    if (auto* p = std::get_if<TPrim>(&t.v))
      return p->op == PrimOp::Typeof ? PUnary : PBinary;
    // Writes carry a trailing "= e" and run-in a trailing environment, so
    // both get parenthesized in any operand position.
    if (std::holds_alternative<TWrite>(t.v) ||
        std::holds_alternative<TRunIn>(t.v))
      return PExpr;
    return PPrimary;
  }

  std::string print(const Expr& e, Prec need) {
    std::string body = render(e);
    bool parens = prec_of(e) < need;
    if (opts.show_labels) {
      // Parenthesize everything that is not self-delimiting, then tag.
      const Term& t = *e.term;
      bool atom = std::holds_alternative<TConst>(t.v) ||
                  std::holds_alternative<TVar>(t.v) ||
                  std::holds_alternative<THole>(t.v) ||
                  std::holds_alternative<TRecord>(t.v) ||
                  std::holds_alternative<TMarked>(t.v) ||
                  std::holds_alternative<TSubst>(t.v) ||
                  std::holds_alternative<TFun>(t.v) ||
                  std::holds_alternative<TIf>(t.v);
      if (!atom) body = "(" + body + ")";
      return body + "@" + std::to_string(e.label);
    }
    return parens ? "(" + body + ")" : body;
  }

  std::string render(const Expr& e) {
    const Term& t = *e.term;
    if (auto* c = std::get_if<TConst>(&t.v)) return const_to_string(c->k);
    if (auto* v = std::get_if<TVar>(&t.v)) return v->name;
    if (std::holds_alternative<THole>(t.v)) return "_";
    if (auto* f = std::get_if<TFun>(&t.v))
      return "fun (" + f->param + ") { " + print(f->body, PExpr) + " }";
    if (auto* a = std::get_if<TApp>(&t.v)) {
      std::string fn = print(a->fn, PPostfix);
      // fun/if literals in call position parse fine but read badly bare.
      if (!opts.show_labels && (as<TFun>(a->fn) || as<TIf>(a->fn)))
        fn = "(" + fn + ")";
      return fn + "(" + print(a->arg, PExpr) + ")";
    }
    if (auto* r = std::get_if<TRecord>(&t.v)) {
      if (r->fields.empty()) return "{}";
      std::string out = "{ ";
      bool first = true;
      for (auto& f : r->fields) {
        if (!first) out += ", ";
        first = false;
        out += quote_string(f.first) + " : " + print(f.second, PExpr);
      }
      return out + " }";
    }
    if (auto* b = std::get_if<TBox>(&t.v))
      return "box " + print(b->body, PUnary);
    if (auto* u = std::get_if<TUnbox>(&t.v))
      return "unbox " + print(u->body, PUnary);
    if (auto* r = std::get_if<TRun>(&t.v))
      return "run " + print(r->body, PUnary);
    if (auto* i = std::get_if<TIf>(&t.v))
      return "if (" + print(i->cond, PExpr) + ") { " + print(i->thn, PExpr) +
             " } else { " + print(i->els, PExpr) + " }";
    if (auto* r = std::get_if<TRead>(&t.v)) {
      std::string base = print(r->rec, PPostfix);
      if (!opts.show_labels && (as<TFun>(r->rec) || as<TIf>(r->rec)))
        base = "(" + base + ")";
      return base + "[" + print(r->sel, PExpr) + "]";
    }
    if (auto* w = std::get_if<TWrite>(&t.v)) {
      std::string base = print(w->rec, PPostfix);
      if (!opts.show_labels && (as<TFun>(w->rec) || as<TIf>(w->rec)))
        base = "(" + base + ")";
      return base + "[" + print(w->sel, PExpr) +
             "] = " + print(w->val, PExpr);
    }
    if (auto* d = std::get_if<TDel>(&t.v)) {
      std::string base = print(d->rec, PPostfix);
      return "del " + base + "[" + print(d->sel, PExpr) + "]";
    }
    if (auto* s = std::get_if<TSubst>(&t.v)) {
      // The wrapped term shares the node's label, so it is rendered bare
      // here and the tag (if any) lands once on the whole substitution.
      Expr inner{s->term, e.label};
      return "(" + render(inner) + ", " + env(s->env) + ")";
    }
    if (auto* r = std::get_if<TRunIn>(&t.v))
      return "run " + print(r->body, PUnary) + " in " + env(r->env);
    if (auto* m = std::get_if<TMarked>(&t.v))
      return "(" + m->marker + " : " + print(m->body, PExpr) + ")";
    if (auto* p = std::get_if<TPrim>(&t.v)) {
      if (p->op == PrimOp::Typeof) return "typeof " + print(p->lhs, PUnary);
      const char* op = p->op == PrimOp::Eq ? " == " : " - ";
      return print(p->lhs, PUnary) + op + print(*p->rhs, PUnary);
    }
    return "?";
  }
};

}  // namespace

std::string to_string(const Expr& e, const PrintOptions& opts) {
  return Printer{opts}.print(e, PExpr);
}

std::string env_to_string(const EnvPtr& env, const PrintOptions& opts) {
  return Printer{opts}.env(env);
}

}  // namespace slamjs
