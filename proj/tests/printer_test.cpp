#include <doctest.h>

#include "slamjs/ast.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"

using namespace slamjs;

TEST_CASE("numbers print in the shortest form that reads back exactly") {
  CHECK(to_string(mk_num(1)) == "1");
  CHECK(to_string(mk_num(-2.5)) == "-2.5");
  CHECK(to_string(mk_num(0.1)) == "0.1");
  CHECK(to_string(mk_num(1e21)) == "1e+21");
}

TEST_CASE("strings are quoted with escapes") {
  CHECK(to_string(mk_str("a\n\"b")) == "\"a\\n\\\"b\"");
}

TEST_CASE("source forms print back in source syntax") {
  const char* src = "if ((H : true)) { (L : false) } else { 1 }";
  CHECK(to_string(parse_program(src)) == src);
  CHECK(to_string(parse_program("fun (x) { x(1) }")) == "fun (x) { x(1) }");
  CHECK(to_string(parse_program("{ \"a\" : 1 }")) == "{ \"a\" : 1 }");
  CHECK(to_string(parse_program("run (box 1)")) == "run (box 1)");
  CHECK(to_string(parse_program("typeof 1 == \"number\"")) ==
        "typeof 1 == \"number\"");
}

TEST_CASE("intermediate forms render with their environments") {
  ParseOptions opts;
  opts.allow_intermediate = true;
  Expr s = parse_program("(x, { x \xe2\x86\xa6 1 })", opts);
  CHECK(to_string(s) == "(x, { x \xe2\x86\xa6 1 })");
  Expr r = parse_program("run (box 1) in { y \xe2\x86\xa6 2 }", opts);
  CHECK(to_string(r) == "run (box 1) in { y \xe2\x86\xa6 2 }");
  CHECK(to_string(parse_program("_", opts)) == "_");
}

TEST_CASE("labels can be shown for debugging") {
  Expr e = parse_program("f(1)");
  PrintOptions opts;
  opts.show_labels = true;
  std::string s = to_string(e, opts);
  CHECK(s.find("@2") != std::string::npos);  // root application
  CHECK(s.find("@0") != std::string::npos);  // f
}

TEST_CASE("operands that could re-associate get parentheses") {
  Expr e = parse_program("(1 - 2) - 3");
  CHECK(to_string(e) == "(1 - 2) - 3");
  Expr w = parse_program("(r[\"a\"] = 1)[\"b\"]");
  CHECK(to_string(w) == "(r[\"a\"] = 1)[\"b\"]");
}
