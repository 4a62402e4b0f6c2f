#include <doctest.h>

#include "slamjs/ast.hpp"
#include "slamjs/cfa.hpp"
#include "slamjs/corpus.hpp"
#include "slamjs/ifa.hpp"
#include "slamjs/parser.hpp"

using namespace slamjs;

TEST_CASE("marked closure: which marks can reach the result") {
  Expr e = parse_program(
      "((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))");
  CfaResult cfa = analyze_cfa(e, CfaVariant::Simple);
  FlowGraph g = analyze_flows(e, cfa);
  REQUIRE(e.label == 9);
  CHECK(g.reaches(FlowNode::mark("H"), FlowNode::lbl(9)));
  CHECK(g.reaches(FlowNode::mark("I"), FlowNode::lbl(9)));
  CHECK_FALSE(g.reaches(FlowNode::mark("L"), FlowNode::lbl(9)));
  CHECK(g.reaching_markers(9) == std::set<Marker>{"H", "I"});

  // the H value rides the x cell: marker -> its node -> the parameter cell
  // -> the occurrence -> the inner body -> the outer application
  CHECK(g.reaches(FlowNode::lbl(5), FlowNode::var_cell(AbsVar::param("x", -1))));
  CHECK(g.reaches(FlowNode::var_cell(AbsVar::param("x", -1)), FlowNode::lbl(0)));

  // L lands in the y cell and stops there: y never occurs
  CHECK(g.reaches(FlowNode::mark("L"), FlowNode::var_cell(AbsVar::param("y", -1))));
}

TEST_CASE("condition markers reach indirectly, branch values directly") {
  Expr e = parse_program("if ((H : true)) { (L : false) } else { 1 }");
  CfaResult cfa = analyze_cfa(e, CfaVariant::Simple);
  FlowGraph g = analyze_flows(e, cfa);
  CHECK(g.reaching_markers(e.label) == std::set<Marker>{"H", "L"});
  bool saw_indirect_cond = false;
  for (const auto& edge : g.edges)
    if (edge.origin == "if" && !edge.direct) saw_indirect_cond = true;
  CHECK(saw_indirect_cond);
}

TEST_CASE("depends, simple variant, across the whole corpus") {
  for (const auto& entry : corpus()) {
    Expr e = parse_program(entry.source);
    CHECK_MESSAGE(depends(e, CfaVariant::Simple) == entry.depends_simple,
                  entry.name);
  }
}

TEST_CASE("depends, improved variant, across the whole corpus") {
  for (const auto& entry : corpus()) {
    Expr e = parse_program(entry.source);
    CHECK_MESSAGE(depends(e, CfaVariant::Improved) == entry.depends_improved,
                  entry.name);
  }
}

TEST_CASE("depends on the semantics examples") {
  for (const auto& entry : semantics_examples()) {
    Expr e = parse_program(entry.source);
    CHECK_MESSAGE(depends(e, CfaVariant::Simple) == entry.depends_simple,
                  entry.name);
    CHECK_MESSAGE(depends(e, CfaVariant::Improved) == entry.depends_improved,
                  entry.name);
  }
}

TEST_CASE("unmarked programs depend on nothing") {
  Expr e = parse_program("run (box (if (unbox (box true)) { false } else { 1 }))");
  CHECK(depends(e, CfaVariant::Simple).empty());
  CHECK(depends(e, CfaVariant::Improved).empty());
}

TEST_CASE("a marker dropped by branch selection still flows indirectly") {
  // the analysis cannot know the condition is constant
  Expr e = parse_program("if (true) { 1 } else { (H : 2) }");
  CHECK(depends(e, CfaVariant::Simple) == std::set<Marker>{"H"});
}

TEST_CASE("writes move values directly, selectors only steer") {
  Expr e = parse_program(
      "(({ \"__proto__\" : null })[(L : \"a\")] = (H : 1))[\"a\"]");
  CfaResult cfa = analyze_cfa(e, CfaVariant::Simple);
  FlowGraph g = analyze_flows(e, cfa);
  std::set<Marker> deps = g.reaching_markers(e.label);
  CHECK(deps.count("H") == 1);
  CHECK(deps.count("L") == 1);
  // H's path into the slot must be direct, L's into the write indirect
  bool h_direct_into_slot = false, l_indirect = false;
  for (const auto& edge : g.edges) {
    if (edge.origin == "write" && edge.direct &&
        edge.dst.kind == FlowNode::Var)
      h_direct_into_slot = true;
    if (edge.origin == "write" && !edge.direct) l_indirect = true;
  }
  CHECK(h_direct_into_slot);
  CHECK(l_indirect);
}
