#include <doctest.h>

#include "slamjs/ast.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"

using namespace slamjs;

TEST_CASE("values are stage dependent") {
  Expr fn = mk_fun("x", mk_var("x"));
  CHECK_FALSE(is_value(fn, 0));  // a bare function only closes under a subst
  CHECK(is_value(fn, 1));
  CHECK(is_value(mk_subst(fn, empty_env()), 0));
  CHECK_FALSE(is_value(mk_subst(mk_num(1), empty_env()), 0));

  CHECK(is_value(mk_num(1), 0));
  CHECK(is_value(mk_hole(), 0));
  CHECK(is_value(mk_hole(), 2));
  CHECK(is_value(mk_var("x"), 1));
  CHECK_FALSE(is_value(mk_var("x"), 0));

  Expr boxed = mk_box(mk_num(1));
  CHECK(is_value(boxed, 0));
  CHECK(is_value(boxed, 1));
  CHECK(is_value(mk_box(mk_run(mk_var("x"))), 0));  // run of code is code
  CHECK_FALSE(is_value(mk_run(mk_box(mk_num(1))), 0));  // but fires at stage 0
  CHECK_FALSE(is_value(mk_run_in(mk_box(mk_num(1)), empty_env()), 0));

  // unbox only counts as code from stage two upwards; at stage one it fires
  CHECK_FALSE(is_value(mk_unbox(mk_var("x")), 1));
  CHECK(is_value(mk_unbox(mk_var("x")), 2));

  Expr rec = mk_record({{"a", mk_num(1)}});
  CHECK(is_value(rec, 0));
  CHECK_FALSE(is_value(mk_record({{"a", mk_if(mk_bool(true), mk_num(1),
                                              mk_num(2))}}),
                       0));
  CHECK(is_value(mk_marked("H", mk_num(1)), 0));
  CHECK_FALSE(is_value(mk_marked("H", mk_var("x")), 0));

  // applications of values are code at stage >= 1 but never at stage 0
  Expr app = mk_app(mk_var("f"), mk_num(1));
  CHECK_FALSE(is_value(app, 0));
  CHECK(is_value(app, 1));
}

TEST_CASE("record equality ignores field order, expression equality can ignore labels") {
  Expr a = parse_program("{ \"x\" : 1, \"y\" : 2 }");
  Expr b = parse_program("{ \"y\" : 2, \"x\" : 1 }");
  CHECK(equal_exprs(a, b, false));
  CHECK_FALSE(equal_exprs(a, b, true));  // labels follow source order
  Expr c = parse_program("{ \"x\" : 1, \"y\" : 3 }");
  CHECK_FALSE(equal_exprs(a, c, false));
}

TEST_CASE("markers_of and unmark") {
  Expr e = parse_program("if ((H : true)) { (L : false) } else { (I : 1) }");
  CHECK(markers_of(e) == std::set<Marker>{"H", "I", "L"});
  Expr u = unmark(e);
  CHECK(markers_of(u).empty());
  CHECK(to_string(u) == "if (true) { false } else { 1 }");
}

TEST_CASE("erase keeps chosen markers and replaces the rest with holes") {
  Expr e = parse_program("if ((H : true)) { (L : false) } else { (I : 1) }");
  Expr kept = erase(e, {"H"});
  CHECK(to_string(kept) == "if ((H : true)) { _ } else { _ }");
  // the hole inherits the erased marker node's label
  const auto* iff = as<TIf>(kept);
  REQUIRE(iff != nullptr);
  const auto* orig_if = as<TIf>(e);
  CHECK(iff->thn.label == orig_if->thn.label);
  CHECK(as<THole>(iff->thn) != nullptr);

  // erasing recurses into kept markers' bodies
  Expr nested = parse_program("(L : (H : 1))");
  CHECK(to_string(erase(nested, {"L"})) == "(L : _)");
  CHECK(to_string(erase(nested, {"L", "H"})) == "(L : (H : 1))");
  CHECK(to_string(erase(nested, {})) == "_");
}

TEST_CASE("relabel numbers nodes bottom-up left to right") {
  Expr e = parse_program("f(1)");  // parse already relabels
  // expected: f=0, 1=1, app=2
  const auto* app = as<TApp>(e);
  REQUIRE(app != nullptr);
  CHECK(app->fn.label == 0);
  CHECK(app->arg.label == 1);
  CHECK(e.label == 2);
  CHECK(max_label(e) == 2);
}

TEST_CASE("is_prefix treats holes as wildcards and ignores labels") {
  Expr small = parse_program("if (_) { 1 } else { 2 }", {true});
  Expr big = parse_program("if (f(true)) { 1 } else { 2 }");
  CHECK(is_prefix(small, big));
  CHECK_FALSE(is_prefix(big, small));
  CHECK(is_prefix(parse_program("_", {true}), big));
}

TEST_CASE("environments are persistent") {
  EnvPtr base = empty_env();
  EnvPtr one = env_extend(base, "x", mk_num(1));
  EnvPtr two = env_extend(one, "x", mk_num(2));
  CHECK(base->count("x") == 0);
  CHECK(as<TConst>(one->at("x"))->k.num == 1.0);
  CHECK(as<TConst>(two->at("x"))->k.num == 2.0);
}
