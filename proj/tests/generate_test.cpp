#include <doctest.h>

#include <random>

#include "slamjs/ast.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/generate.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"
#include "slamjs/properties.hpp"

using namespace slamjs;

TEST_CASE("generation is deterministic in the seed") {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 20; ++i) {
    Generated ga = generate_terminating(a);
    Generated gb = generate_terminating(b);
    CHECK(to_string(ga.program) == to_string(gb.program));
  }
  std::mt19937_64 c(43);
  bool all_same = true;
  std::mt19937_64 a2(42);
  for (int i = 0; i < 20; ++i)
    all_same = all_same && to_string(generate_terminating(a2).program) ==
                               to_string(generate_terminating(c).program);
  CHECK_FALSE(all_same);
}

TEST_CASE("generated programs terminate and lean towards constant results") {
  std::mt19937_64 rng(7);
  int constant_like = 0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    Generated g = generate_terminating(rng);
    CHECK(g.result.outcome == Outcome::Value);
    CHECK(is_value(g.result.final_expr, 0));
    if (constant_like_result(g.result.final_expr)) ++constant_like;
  }
  CHECK(constant_like >= n * 6 / 10);
}

TEST_CASE("generated programs reparse from their own printout") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    Generated g = generate_terminating(rng);
    Expr back = parse_program(to_string(g.program));
    CHECK(equal_exprs(back, g.program, true));
  }
}

TEST_CASE("node_count counts labelled nodes") {
  CHECK(node_count(parse_program("1")) == 1);
  CHECK(node_count(parse_program("f(1)")) == 3);
  CHECK(node_count(parse_program("if (x) { 1 } else { 2 }")) == 4);
}

TEST_CASE("shrink keeps the predicate failing while the program shrinks") {
  Expr big = parse_program(
      "if ((H : true)) { (fun (x) { (L : x) })(1 - 0) } else { { \"a\" : 5 } }");
  auto has_h = [](const Expr& e) { return markers_of(e).count("H") == 1; };
  Expr small = shrink(big, has_h, 500);
  CHECK(has_h(small));
  CHECK(node_count(small) < node_count(big));
  CHECK(node_count(small) <= 3);  // the marker, its body, and little else
}
