#include <doctest.h>

#include <algorithm>
#include <vector>

#include "slamjs/ast.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"

using namespace slamjs;

namespace {

struct Run {
  EvalResult result;
  std::vector<std::string> rules;
};

Run run(const std::string& src, EvalOptions opts = {}) {
  ParseOptions popts;
  popts.allow_intermediate = true;
  Expr e = parse_program(src, popts);
  Run r;
  r.result = evaluate(e, opts, [&](long, int, const std::string& rule,
                                   const Expr&) { r.rules.push_back(rule); });
  return r;
}

std::string value_of(const std::string& src) {
  Run r = run(src);
  REQUIRE_MESSAGE(r.result.outcome == Outcome::Value, src);
  return to_string(r.result.final_expr);
}

StuckReason stuck_of(const std::string& src) {
  Run r = run(src);
  REQUIRE_MESSAGE(r.result.outcome == Outcome::Stuck, src);
  return *r.result.stuck;
}

}  // namespace

TEST_CASE("plain conditional, step by step") {
  Run r = run("if (true) { false } else { 1 }");
  CHECK(to_string(r.result.final_expr) == "false");
  CHECK(r.rules == std::vector<std::string>{"Prop-If", "Prop-Const", "IfTrue",
                                            "Prop-Const"});
}

TEST_CASE("staged conditional") {
  CHECK(value_of("run (box (if (unbox (box true)) { false } else { 1 }))") ==
        "false");
}

TEST_CASE("splicing captures the environment at the run site") {
  CHECK(value_of("((fun (x) { fun (y) { run x } })(box y))(true)") == "true");
}

TEST_CASE("marked condition lifts onto the result, step by step") {
  Run r = run("if ((H : true)) { (L : false) } else { (I : 1) }");
  CHECK(to_string(r.result.final_expr) == "(H : (L : false))");
  CHECK(r.rules == std::vector<std::string>{"Prop-If", "Prop-Marker",
                                            "Prop-Const", "Lift-If", "IfTrue",
                                            "Prop-Marker", "Prop-Const"});
}

TEST_CASE("marked closure carries its mark through application, step by step") {
  Run r = run("((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))");
  CHECK(to_string(r.result.final_expr) == "(I : (H : 1))");
  CHECK(r.rules ==
        std::vector<std::string>{"Prop-App", "Prop-App", "Prop-Marker",
                                 "Prop-Const", "Apply", "Prop-Marker",
                                 "Prop-Marker", "Prop-Const", "Lift-App",
                                 "Apply", "Lookup"});
  // label bookkeeping: the lift re-tags the hoisted mark with the outer
  // application's label, the application keeps its body's label, and lookup
  // re-tags the fetched value with the occurrence's label
  CHECK(r.result.final_expr.label == 9);
  const auto* outer = as<TMarked>(r.result.final_expr);
  REQUIRE(outer);
  CHECK(outer->body.label == 0);
  const auto* inner = as<TMarked>(outer->body);
  REQUIRE(inner);
  CHECK(inner->body.label == 4);
}

TEST_CASE("erasing marks that are absent from the result changes nothing") {
  Expr orig = parse_program(
      "((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))");
  EvalResult base = evaluate(orig);
  REQUIRE(base.outcome == Outcome::Value);
  EvalResult erased = evaluate(erase(orig, {"H", "I"}));
  REQUIRE(erased.outcome == Outcome::Value);
  CHECK(equal_exprs(base.final_expr, erased.final_expr, true));
}

TEST_CASE("application and lookup relabel as the rules dictate") {
  Run drop = run("(fun (x) { 1 })(2)");
  CHECK(to_string(drop.result.final_expr) == "1");
  CHECK(drop.result.final_expr.label == 0);  // the body's own label survives
  Run fetch = run("(fun (x) { x })(5)");
  CHECK(to_string(fetch.result.final_expr) == "5");
  CHECK(fetch.result.final_expr.label == 0);  // tagged with the occurrence

  Run spliced = run("run (box 1)");
  CHECK(to_string(spliced.result.final_expr) == "1");
  CHECK(spliced.result.final_expr.label == 2);  // the run node's label
}

TEST_CASE("records: read, write, delete, prototype chains") {
  CHECK(value_of("({ \"__proto__\" : null, \"a\" : 5 })[\"a\"]") == "5");
  CHECK(value_of("({ \"__proto__\" : { \"__proto__\" : null, \"a\" : 7 }, "
                 "\"b\" : 1 })[\"a\"]") == "7");
  CHECK(value_of("({ \"__proto__\" : null })[\"a\"]") == "undefined");
  CHECK(value_of("(({ \"__proto__\" : null, \"a\" : 1 })[\"a\"] = 2)[\"a\"]") ==
        "2");
  CHECK(value_of("(({ \"__proto__\" : null })[\"a\"] = 3)[\"a\"]") == "3");
  CHECK(value_of("(del ({ \"__proto__\" : null, \"a\" : 1 })[\"a\"])[\"a\"]") ==
        "undefined");
  CHECK(value_of("del ({ \"__proto__\" : null })[\"a\"]") ==
        "{ \"__proto__\" : null }");
  // a record read chases the prototype, not the record's own order
  CHECK(value_of("({ \"a\" : 1, \"__proto__\" : null })[\"a\"]") == "1");
}

TEST_CASE("writes pass the value through unlifted") {
  CHECK(value_of("(({ \"__proto__\" : null })[\"a\"] = (H : 1))[\"a\"]") ==
        "(H : 1)");
}

TEST_CASE("selector lifts fire before record lifts") {
  Run r = run("(H : { \"__proto__\" : null, \"a\" : 1 })[(L : \"a\")]");
  CHECK(to_string(r.result.final_expr) == "(L : (H : 1))");
  std::vector<std::string> lifts;
  for (const auto& rule : r.rules)
    if (rule.rfind("Lift-", 0) == 0) lifts.push_back(rule);
  CHECK(lifts == std::vector<std::string>{"Lift-ReadSel", "Lift-ReadRec"});
}

TEST_CASE("primitives") {
  CHECK(value_of("1 == 1") == "true");
  CHECK(value_of("\"a\" == \"b\"") == "false");
  CHECK(value_of("undef == undef") == "true");
  CHECK(value_of("1 == \"1\"") == "false");
  CHECK(value_of("(box 1) == (box 1)") == "false");  // only constants compare
  CHECK(value_of("{ \"a\" : 1 } == { \"a\" : 1 }") == "false");
  CHECK(value_of("3 - 1") == "2");
  CHECK(value_of("typeof 1") == "\"number\"");
  CHECK(value_of("typeof \"s\"") == "\"string\"");
  CHECK(value_of("typeof true") == "\"boolean\"");
  CHECK(value_of("typeof undef") == "\"undefined\"");
  CHECK(value_of("typeof null") == "\"null\"");
  CHECK(value_of("typeof (fun (x) { x })") == "\"function\"");
  CHECK(value_of("typeof { \"a\" : 1 }") == "\"object\"");
  CHECK(value_of("typeof (box 1)") == "\"box\"");
  CHECK(value_of("(H : 1) - 1") == "(H : 0)");
  CHECK(value_of("1 - (L : 1)") == "(L : 0)");
  CHECK(value_of("typeof (H : 1)") == "(H : \"number\")");
}

TEST_CASE("every stuck shape reports its reason") {
  CHECK(stuck_of("1(2)") == StuckReason::ApplyNonFunction);
  CHECK(stuck_of("if (1) { 1 } else { 2 }") == StuckReason::BranchNonBoolean);
  CHECK(stuck_of("1[\"a\"]") == StuckReason::ReadNonRecord);
  CHECK(stuck_of("(1)[\"a\"] = 2") == StuckReason::ReadNonRecord);
  CHECK(stuck_of("del (1)[\"a\"]") == StuckReason::ReadNonRecord);
  CHECK(stuck_of("({ \"a\" : 1 })[2]") == StuckReason::SelectorNonString);
  CHECK(stuck_of("run (box (unbox 1))") == StuckReason::UnboxNonBox);
  CHECK(stuck_of("run 1") == StuckReason::RunNonBox);
  CHECK(stuck_of("x") == StuckReason::UnboundVariable);
  CHECK(stuck_of("if (_) { 1 } else { 2 }") == StuckReason::HoleDemanded);
  CHECK(stuck_of("_(1)") == StuckReason::HoleDemanded);
  CHECK(stuck_of("_ == 1") == StuckReason::HoleDemanded);
  CHECK(stuck_of("run _") == StuckReason::HoleDemanded);
  CHECK(stuck_of("({ \"a\" : 1 })[\"b\"]") == StuckReason::MissingProtoField);
  CHECK(stuck_of("({ \"__proto__\" : 1 })[\"b\"]") ==
        StuckReason::MissingProtoField);
  CHECK(stuck_of("1 - true") == StuckReason::PrimTypeError);
  CHECK(stuck_of("\"a\" - \"b\"") == StuckReason::PrimTypeError);
}

TEST_CASE("shapes no source program reaches report no applicable rule") {
  EvalOptions opts;
  StepResult bare_fun = step_once(mk_fun("x", mk_var("x")), 0, opts);
  CHECK_FALSE(bare_fun.stepped);
  CHECK(bare_fun.stuck == StuckReason::NoRule);
  StepResult naked_unbox = step_once(mk_unbox(mk_box(mk_num(1))), 0, opts);
  CHECK_FALSE(naked_unbox.stepped);
  CHECK(naked_unbox.stuck == StuckReason::NoRule);
}

TEST_CASE("fuel runs out on loops") {
  EvalOptions opts;
  opts.fuel = 100;
  Run r = run("(fun (x) { x(x) })(fun (x) { x(x) })", opts);
  CHECK(r.result.outcome == Outcome::OutOfFuel);
  CHECK(r.result.steps == 100);
}

TEST_CASE("a recursive countdown terminates") {
  CHECK(value_of("(fun (n) { (fun (x) { (x(x))(n) })(fun (x) { fun (y) { "
                 "if (y == 0) { true } else { (x(x))(y - 1) } } }) })(3)") ==
        "true");
}

TEST_CASE("the broken lift rule drops the condition's marker") {
  EvalOptions opts;
  opts.mutate_drop_lift_if_marker = true;
  Run r = run("if ((H : true)) { (L : false) } else { (I : 1) }", opts);
  REQUIRE(r.result.outcome == Outcome::Value);
  CHECK(to_string(r.result.final_expr) == "(L : false)");
  // the rule still reports its name, only the marker is lost
  CHECK(std::count(r.rules.begin(), r.rules.end(), "Lift-If") == 1);
}

TEST_CASE("evaluating a bare value still takes its unwrapping step") {
  Run r = run("1");
  CHECK(r.result.steps == 1);
  CHECK(r.rules == std::vector<std::string>{"Prop-Const"});
}

TEST_CASE("splicing thaws frozen unboxes one stage at a time") {
  // under two boxes the unbox is a value; running one level off lets it fire
  CHECK(value_of("run (box (box (unbox (box 1))))") == "box 1");
}
