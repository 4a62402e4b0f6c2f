#include <doctest.h>

#include "slamjs/ast.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"

using namespace slamjs;

namespace {
Expr must_parse(const std::string& src, bool intermediate = false) {
  ParseOptions opts;
  opts.allow_intermediate = intermediate;
  return parse_program(src, opts);
}
}  // namespace

TEST_CASE("labels are assigned in post order") {
  Expr e = must_parse("((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))");
  // 0: the x occurrence, 1: fun(y), 2: the I node, 3: fun(x),
  // 4: 1, 5: the H node, 6: inner application, 7: 2, 8: the L node, 9: root.
  REQUIRE(max_label(e) == 9);
  CHECK(e.label == 9);
  const auto* root = as<TApp>(e);
  REQUIRE(root);
  CHECK(root->fn.label == 6);
  CHECK(root->arg.label == 8);
  const auto* larg = as<TMarked>(root->arg);
  REQUIRE(larg);
  CHECK(larg->marker == "L");
  CHECK(larg->body.label == 7);
  const auto* inner = as<TApp>(root->fn);
  REQUIRE(inner);
  CHECK(inner->fn.label == 3);
  CHECK(inner->arg.label == 5);
  const auto* fx = as<TFun>(inner->fn);
  REQUIRE(fx);
  CHECK(fx->param == "x");
  CHECK(fx->body.label == 2);
  const auto* marked = as<TMarked>(fx->body);
  REQUIRE(marked);
  CHECK(marked->marker == "I");
  CHECK(marked->body.label == 1);
  const auto* fy = as<TFun>(marked->body);
  REQUIRE(fy);
  CHECK(fy->body.label == 0);
  CHECK(as<TVar>(fy->body)->name == "x");
}

TEST_CASE("let is a function application") {
  Expr e = must_parse("let x = 1 in x");
  Expr direct = must_parse("(fun (x) { x })(1)");
  CHECK(equal_exprs(e, direct, true));  // labelling happens after rewriting
}

TEST_CASE("binary operators are non-associative") {
  CHECK_NOTHROW(must_parse("1 - 2"));
  CHECK_THROWS_AS(must_parse("1 - 2 - 3"), ParseError);
  CHECK_NOTHROW(must_parse("(1 - 2) - 3"));
  CHECK_NOTHROW(must_parse("1 - 2 == 3"));
  CHECK_THROWS_AS(must_parse("1 == 2 == 3"), ParseError);
}

TEST_CASE("postfix chains: calls, reads, one trailing write") {
  Expr e = must_parse("f(1)(2)[\"a\"]");
  CHECK(as<TRead>(e));
  Expr w = must_parse("r[\"a\"] = 1");
  CHECK(as<TWrite>(w));
  // the written value swallows further postfixes; parenthesize to keep going
  Expr value_read = must_parse("r[\"a\"] = 1[\"b\"]");
  REQUIRE(as<TWrite>(value_read));
  CHECK(as<TRead>(as<TWrite>(value_read)->val));
  Expr chained = must_parse("(r[\"a\"] = 1)[\"b\"]");
  CHECK(as<TRead>(chained));
}

TEST_CASE("del needs a field selection") {
  Expr e = must_parse("del r[\"a\"]");
  CHECK(as<TDel>(e));
  CHECK_THROWS_WITH_AS(must_parse("del r"), doctest::Contains("field selection"),
                       ParseError);
}

TEST_CASE("markers are capitalized and parenthesized") {
  Expr e = must_parse("(Secret1 : 1)");
  CHECK(as<TMarked>(e)->marker == "Secret1");
  // a lowercase name in marker position is a variable, not a marker
  CHECK_THROWS_AS(must_parse("(secret : 1)"), ParseError);
}

TEST_CASE("numbers, strings, comments") {
  CHECK(as<TConst>(must_parse("-2.5"))->k.num == -2.5);
  CHECK(as<TConst>(must_parse("1e3"))->k.num == 1000.0);
  CHECK(as<TConst>(must_parse("\"a\\n\\\"b\\u00e9\""))->k.str == "a\n\"b\xc3\xa9");
  Expr e = must_parse("// leading comment\n1 // trailing\n");
  CHECK(as<TConst>(e)->k.num == 1.0);
}

TEST_CASE("duplicate record fields are rejected") {
  CHECK_THROWS_AS(must_parse("{ \"a\" : 1, \"a\" : 2 }"), ParseError);
}

TEST_CASE("intermediate forms are opt-in") {
  CHECK_THROWS_AS(must_parse("_"), ParseError);
  CHECK(as<THole>(must_parse("_", true)));

  CHECK_THROWS_AS(must_parse("(1, { x \xe2\x86\xa6 2 })"), ParseError);
  Expr s = must_parse("(1, { x \xe2\x86\xa6 2 })", true);
  const auto* sub = as<TSubst>(s);
  REQUIRE(sub);
  CHECK(as<TConst>(sub->env->at("x"))->k.num == 2.0);
  // the ASCII arrow works too
  CHECK(equal_exprs(s, must_parse("(1, { x -> 2 })", true), false));

  Expr r = must_parse("run (box 1) in { x -> 2 }", true);
  CHECK(as<TRunIn>(r));
  // a let's `in` is never followed by an environment brace, so the captured
  // form does not steal it
  Expr still_let = must_parse("let y = run x in y", true);
  CHECK(as<TApp>(still_let));
}

TEST_CASE("parse errors carry positions") {
  try {
    must_parse("fun (x) {");
    FAIL("expected a parse error");
  } catch (const ParseError& pe) {
    CHECK(std::string(pe.what()).find("parse error at 1:") == 0);
  }
}

TEST_CASE("printing and reparsing is stable") {
  for (const char* src : {
           "if ((H : true)) { (L : false) } else { 1 }",
           "((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))",
           "run (box (if (unbox (box true)) { false } else { 1 }))",
           "{ \"__proto__\" : null, \"a\" : 1 }[\"b\"]",
           "del ({ \"a\" : 1 })[\"a\"]",
           "typeof (1 - 2) == \"number\"",
           "(r[\"a\"] = fun (x) { x })[\"a\"]",
       }) {
    Expr once = must_parse(src);
    Expr twice = must_parse(to_string(once));
    CHECK_MESSAGE(equal_exprs(once, twice, true), src);
  }
}
