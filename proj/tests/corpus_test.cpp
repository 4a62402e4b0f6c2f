#include <doctest.h>

#include <fstream>
#include <sstream>

#include "slamjs/corpus.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"

using namespace slamjs;

TEST_CASE("every corpus program reaches its expected value") {
  for (const auto& entry : corpus()) {
    Expr e = parse_program(entry.source);
    EvalResult r = evaluate(e);
    REQUIRE_MESSAGE(r.outcome == Outcome::Value, entry.name);
    REQUIRE_MESSAGE(entry.final_value.has_value(), entry.name);
    CHECK_MESSAGE(to_string(r.final_expr) == *entry.final_value, entry.name);
  }
}

TEST_CASE("every semantics example reaches its expected value") {
  for (const auto& entry : semantics_examples()) {
    Expr e = parse_program(entry.source);
    EvalResult r = evaluate(e);
    REQUIRE_MESSAGE(r.outcome == Outcome::Value, entry.name);
    CHECK_MESSAGE(to_string(r.final_expr) == *entry.final_value, entry.name);
  }
}

TEST_CASE("the checked-in program files match the built-in sources") {
  for (const auto& entry : corpus()) {
    std::string path =
        std::string(SLAMJS_SOURCE_DIR) + "/corpus/" + entry.name + ".sjs";
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream ss;
    ss << in.rdbuf();
    Expr from_file = parse_program(ss.str());
    Expr embedded = parse_program(entry.source);
    CHECK_MESSAGE(equal_exprs(from_file, embedded, true), entry.name);
  }
}
