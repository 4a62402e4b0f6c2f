#include "slamjs/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

namespace slamjs {

namespace {

enum class Tok {
  End, Ident, MarkerName, Number, String,
  KwFun, KwIf, KwElse, KwBox, KwUnbox, KwRun, KwDel, KwTypeof,
  KwTrue, KwFalse, KwUndef, KwNull, KwLet, KwIn,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Colon, Comma, Eq, EqEq, Minus, MapsTo, Hole,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double num = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "parse error at " << line << ":" << col << ": " << msg;
    throw ParseError(os.str());
  }

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() &&
             std::isspace(static_cast<unsigned char>(src[pos])))
        advance();
      if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) return t;
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_'))
        advance();
      t.text = src.substr(start, pos - start);
      static const std::map<std::string, Tok> kw = {
          {"fun", Tok::KwFun},     {"if", Tok::KwIf},
          {"else", Tok::KwElse},   {"box", Tok::KwBox},
          {"unbox", Tok::KwUnbox}, {"run", Tok::KwRun},
          {"del", Tok::KwDel},     {"typeof", Tok::KwTypeof},
          {"true", Tok::KwTrue},   {"false", Tok::KwFalse},
          {"undef", Tok::KwUndef}, {"null", Tok::KwNull},
          {"let", Tok::KwLet},     {"in", Tok::KwIn},
      };
      if (auto it = kw.find(t.text); it != kw.end()) {
        t.kind = it->second;
      } else if (t.text == "_") {
        t.kind = Tok::Hole;
      } else if (t.text[0] == '_') {
        fail("identifiers may not start with '_'");
      } else if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
        t.kind = Tok::MarkerName;
      } else {
        t.kind = Tok::Ident;
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '.'))
        advance();
      if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
        advance();
        if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) advance();
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos])))
          advance();
      }
      t.kind = Tok::Number;
      t.text = src.substr(start, pos - start);
      char* end = nullptr;
      t.num = std::strtod(t.text.c_str(), &end);
      if (end != t.text.c_str() + t.text.size()) fail("bad number literal");
      return t;
    }
    if (c == '"') {
      advance();
      std::string out;
      while (pos < src.size() && src[pos] != '"') {
        char ch = src[pos];
        if (ch == '\n') fail("newline in string literal");
        if (ch == '\\') {
          advance();
          if (pos >= src.size()) fail("unterminated string");
          char esc = src[pos];
          switch (esc) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case '/': out += '/'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case 'u': {
              if (pos + 4 >= src.size()) fail("bad \\u escape");
              unsigned v = 0;
              for (int i = 1; i <= 4; ++i) {
                char h = src[pos + i];
                v <<= 4;
                if (h >= '0' && h <= '9') v |= h - '0';
                else if (h >= 'a' && h <= 'f') v |= h - 'a' + 10;
                else if (h >= 'A' && h <= 'F') v |= h - 'A' + 10;
                else fail("bad \\u escape");
              }
              // UTF-8 encode the code point (no surrogate pairing).
              if (v < 0x80) {
                out += static_cast<char>(v);
              } else if (v < 0x800) {
                out += static_cast<char>(0xC0 | (v >> 6));
                out += static_cast<char>(0x80 | (v & 0x3F));
              } else {
                out += static_cast<char>(0xE0 | (v >> 12));
                out += static_cast<char>(0x80 | ((v >> 6) & 0x3F));
                out += static_cast<char>(0x80 | (v & 0x3F));
              }
              advance(4);
              break;
            }
            default: fail("unknown escape");
          }
          advance();
        } else {
          out += ch;
          advance();
        }
      }
      if (pos >= src.size()) fail("unterminated string");
      advance();
      t.kind = Tok::String;
      t.text = out;
      return t;
    }
    // ↦ (U+21A6)
    if (src.compare(pos, 3, "\xE2\x86\xA6") == 0) {
      advance(3);
      t.kind = Tok::MapsTo;
      return t;
    }
    if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
      advance(2);
      t.kind = Tok::MapsTo;
      return t;
    }
    if (c == '=' && pos + 1 < src.size() && src[pos + 1] == '=') {
      advance(2);
      t.kind = Tok::EqEq;
      return t;
    }
    switch (c) {
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case '{': advance(); t.kind = Tok::LBrace; return t;
      case '}': advance(); t.kind = Tok::RBrace; return t;
      case '[': advance(); t.kind = Tok::LBracket; return t;
      case ']': advance(); t.kind = Tok::RBracket; return t;
      case ':': advance(); t.kind = Tok::Colon; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '=': advance(); t.kind = Tok::Eq; return t;
      case '-': advance(); t.kind = Tok::Minus; return t;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lex;
  ParseOptions opts;
  Token cur, ahead;
  bool has_ahead = false;

  explicit Parser(const std::string& src, const ParseOptions& o)
      : lex{src}, opts(o) {
    cur = lex.next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "parse error at " << cur.line << ":" << cur.col << ": " << msg;
    throw ParseError(os.str());
  }

  const Token& peek() {
    if (!has_ahead) {
      ahead = lex.next();
      has_ahead = true;
    }
    return ahead;
  }

  void bump() {
    if (has_ahead) {
      cur = ahead;
      has_ahead = false;
    } else {
      cur = lex.next();
    }
  }

  bool accept(Tok k) {
    if (cur.kind != k) return false;
    bump();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (cur.kind != k) fail(std::string("expected ") + what);
    bump();
  }

  Expr expr() { return eq(); }

  Expr eq() {
    Expr lhs = sub();
    if (accept(Tok::EqEq)) {
      Expr rhs = sub();
      return mk_prim(PrimOp::Eq, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr sub() {
    Expr lhs = unary();
    if (accept(Tok::Minus)) {
      Expr rhs = unary();
      return mk_prim(PrimOp::Sub, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr unary() {
    switch (cur.kind) {
      case Tok::KwBox: bump(); return mk_box(unary());
      case Tok::KwUnbox: bump(); return mk_unbox(unary());
      case Tok::KwTypeof:
        bump();
        return mk_prim(PrimOp::Typeof, unary(), std::nullopt);
      case Tok::KwRun: {
        bump();
        Expr body = unary();
        // `run e in {…}` is the intermediate form; a let's `in` is always
        // followed by an expression other than an environment brace.
        if (opts.allow_intermediate && cur.kind == Tok::KwIn &&
            peek().kind == Tok::LBrace) {
          bump();
          EnvPtr env = parse_env();
          return mk_run_in(std::move(body), std::move(env));
        }
        return mk_run(std::move(body));
      }
      case Tok::KwDel: {
        bump();
        Expr rd = unary();
        auto* r = as<TRead>(rd);
        if (!r) fail("del expects a field selection e[s]");
        return mk_del(r->rec, r->sel);
      }
      default: return postfix();
    }
  }

  Expr postfix() {
    Expr base = primary();
    for (;;) {
      if (accept(Tok::LParen)) {
        Expr arg = expr();
        expect(Tok::RParen, "')'");
        base = mk_app(std::move(base), std::move(arg));
      } else if (accept(Tok::LBracket)) {
        Expr sel = expr();
        expect(Tok::RBracket, "']'");
        if (accept(Tok::Eq)) {
          Expr val = expr();
          return mk_write(std::move(base), std::move(sel), std::move(val));
        }
        base = mk_read(std::move(base), std::move(sel));
      } else {
        return base;
      }
    }
  }

  EnvPtr parse_env() {
    expect(Tok::LBrace, "'{'");
    auto env = std::make_shared<Env>();
    if (!accept(Tok::RBrace)) {
      for (;;) {
        if (cur.kind != Tok::Ident) fail("expected variable name");
        std::string name = cur.text;
        bump();
        expect(Tok::MapsTo, "'↦' or '->'");
        (*env)[name] = expr();
        if (accept(Tok::RBrace)) break;
        expect(Tok::Comma, "','");
      }
    }
    return env;
  }

  Expr record() {
    // cur is at '{'
    bump();
    std::vector<std::pair<std::string, Expr>> fields;
    std::set<std::string> seen;
    if (!accept(Tok::RBrace)) {
      for (;;) {
        if (cur.kind != Tok::String) fail("expected string field name");
        std::string name = cur.text;
        if (!seen.insert(name).second) fail("duplicate field \"" + name + "\"");
        bump();
        expect(Tok::Colon, "':'");
        fields.emplace_back(std::move(name), expr());
        if (accept(Tok::RBrace)) break;
        expect(Tok::Comma, "','");
      }
    }
    return mk_record(std::move(fields));
  }

  Expr primary() {
    switch (cur.kind) {
      case Tok::Number: {
        double v = cur.num;
        bump();
        return mk_num(v);
      }
      case Tok::Minus: {
        // Negative literal; binary minus never reaches primary position.
        bump();
        if (cur.kind != Tok::Number) fail("expected number after '-'");
        double v = cur.num;
        bump();
        return mk_num(-v);
      }
      case Tok::String: {
        std::string s = cur.text;
        bump();
        return mk_str(std::move(s));
      }
      case Tok::KwTrue: bump(); return mk_bool(true);
      case Tok::KwFalse: bump(); return mk_bool(false);
      case Tok::KwUndef: bump(); return mk_undef();
      case Tok::KwNull: bump(); return mk_null();
      case Tok::Hole:
        if (!opts.allow_intermediate) fail("'_' only allowed in traces");
        bump();
        return mk_hole();
      case Tok::Ident: {
        std::string name = cur.text;
        bump();
        return mk_var(std::move(name));
      }
      case Tok::MarkerName:
        fail("marker must appear as (Name : e)");
      case Tok::KwFun: {
        bump();
        expect(Tok::LParen, "'('");
        if (cur.kind != Tok::Ident) fail("expected parameter name");
        std::string param = cur.text;
        bump();
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        Expr body = expr();
        expect(Tok::RBrace, "'}'");
        return mk_fun(std::move(param), std::move(body));
      }
      case Tok::KwIf: {
        bump();
        expect(Tok::LParen, "'('");
        Expr c = expr();
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        Expr t = expr();
        expect(Tok::RBrace, "'}'");
        expect(Tok::KwElse, "'else'");
        expect(Tok::LBrace, "'{'");
        Expr e = expr();
        expect(Tok::RBrace, "'}'");
        return mk_if(std::move(c), std::move(t), std::move(e));
      }
      case Tok::KwLet: {
        bump();
        if (cur.kind != Tok::Ident) fail("expected variable name after let");
        std::string name = cur.text;
        bump();
        expect(Tok::Eq, "'='");
        Expr bound = expr();
        expect(Tok::KwIn, "'in'");
        Expr body = expr();
        return mk_app(mk_fun(std::move(name), std::move(body)),
                      std::move(bound));
      }
      case Tok::LBrace: return record();
      case Tok::LParen: {
        // (M : e) | (e) | (t, {x ↦ v})
        if (cur.kind == Tok::LParen && peek().kind == Tok::MarkerName) {
          bump();
          std::string m = cur.text;
          bump();
          expect(Tok::Colon, "':'");
          Expr body = expr();
          expect(Tok::RParen, "')'");
          return mk_marked(std::move(m), std::move(body));
        }
        bump();
        Expr inner = expr();
        if (cur.kind == Tok::Comma) {
          if (!opts.allow_intermediate)
            fail("substitutions only allowed in traces");
          bump();
          EnvPtr env = parse_env();
          expect(Tok::RParen, "')'");
          return mk_subst(inner, std::move(env));
        }
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail("expected expression");
    }
  }
};

}  // namespace

Expr parse_program(const std::string& src, const ParseOptions& opts) {
  Parser p(src, opts);
  Expr e = p.expr();
  if (p.cur.kind != Tok::End) p.fail("trailing input after expression");
  return relabel(e);
}

}  // namespace slamjs
