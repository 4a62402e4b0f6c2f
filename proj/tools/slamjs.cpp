#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "slamjs/ast.hpp"
#include "slamjs/cfa.hpp"
#include "slamjs/corpus.hpp"
#include "slamjs/eval.hpp"
#include "slamjs/ifa.hpp"
#include "slamjs/parser.hpp"
#include "slamjs/printer.hpp"
#include "slamjs/properties.hpp"
#include "slamjs/report.hpp"

namespace {

using namespace slamjs;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(1);
  }
  ss << in.rdbuf();
  return ss.str();
}

CfaVariant variant_from(const std::string& name) {
  return name == "improved" ? CfaVariant::Improved : CfaVariant::Simple;
}

int run_eval(const std::string& path, long fuel, bool trace, bool json,
             bool show_labels, bool intermediate) {
  Expr program;
  try {
    ParseOptions popts;
    popts.allow_intermediate = intermediate;
    program = parse_program(read_input(path), popts);
  } catch (const ParseError& pe) {
    std::cerr << pe.what() << "\n";
    return 1;
  }
  EvalOptions opts;
  opts.fuel = fuel;
  TraceFn tracer = nullptr;
  if (trace)
    tracer = [](long step, int stage, const std::string& rule,
                const Expr& after) {
      std::cout << trace_line_to_json(step, stage, rule, after) << "\n";
    };
  EvalResult result = evaluate(program, opts, tracer);
  if (json) {
    std::cout << eval_result_to_json(result) << "\n";
  } else {
    PrintOptions print;
    print.show_labels = show_labels;
    switch (result.outcome) {
      case Outcome::Value:
        std::cout << to_string(result.final_expr, print) << "\n";
        break;
      case Outcome::Stuck:
        std::cerr << "stuck after " << result.steps << " steps ("
                  << (result.stuck ? stuck_reason_name(*result.stuck) : "?")
                  << "): " << to_string(result.final_expr, print) << "\n";
        break;
      case Outcome::OutOfFuel:
        std::cerr << "out of fuel after " << result.steps << " steps\n";
        break;
    }
  }
  switch (result.outcome) {
    case Outcome::Value: return 0;
    case Outcome::Stuck: return 2;
    case Outcome::OutOfFuel: return 3;
  }
  return 0;
}

int run_analyze(const std::string& path, const std::string& variant_name,
                bool json, bool dump_cfa, const std::string& dump_flows) {
  Expr program;
  try {
    program = parse_program(read_input(path));
  } catch (const ParseError& pe) {
    std::cerr << pe.what() << "\n";
    return 1;
  }
  CfaVariant variant = variant_from(variant_name);
  CfaResult cfa = analyze_cfa(program, variant);
  FlowGraph graph = analyze_flows(program, cfa);
  if (json) {
    std::cout << analyze_to_json(program, cfa, graph) << "\n";
    return 0;
  }
  if (dump_cfa) std::cout << cfa_to_json(cfa) << "\n";
  if (dump_flows == "dot") std::cout << flows_to_dot(graph);
  if (dump_flows == "json") std::cout << flows_to_json(graph) << "\n";
  if (!dump_cfa && dump_flows.empty())
    std::cout << depends_to_line(graph.reaching_markers(program.label)) << "\n";
  return 0;
}

int run_depends(const std::string& path, const std::string& variant_name,
                bool json) {
  Expr program;
  try {
    program = parse_program(read_input(path));
  } catch (const ParseError& pe) {
    std::cerr << pe.what() << "\n";
    return 1;
  }
  std::set<Marker> result = depends(program, variant_from(variant_name));
  if (json)
    std::cout << depends_to_json(result) << "\n";
  else
    std::cout << depends_to_line(result) << "\n";
  return 0;
}

std::string marker_set_text(const std::set<Marker>& markers) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : markers) {
    if (!first) out += ", ";
    first = false;
    out += m;
  }
  return out + "}";
}

int run_corpus(bool json) {
  bool ok = true;
  std::ostringstream text;
  for (const auto& entry : corpus()) {
    Expr program = parse_program(entry.source);
    EvalResult result = evaluate(program);
    std::set<Marker> simple = depends(program, CfaVariant::Simple);
    std::set<Marker> improved = depends(program, CfaVariant::Improved);
    bool entry_ok = simple == entry.depends_simple &&
                    improved == entry.depends_improved;
    if (entry.final_value) {
      entry_ok = entry_ok && result.outcome == Outcome::Value &&
                 to_string(result.final_expr) == *entry.final_value;
    }
    ok = ok && entry_ok;
    text << entry.name << ": simple=" << marker_set_text(simple)
         << " improved=" << marker_set_text(improved) << " final="
         << (result.outcome == Outcome::Value ? to_string(result.final_expr)
                                              : std::string("(none)"))
         << (entry_ok ? "" : "  MISMATCH") << "\n";
  }
  if (json) {
    std::ostringstream js;
    js << "[";
    bool first = true;
    for (const auto& entry : corpus()) {
      Expr program = parse_program(entry.source);
      CfaResult cfa = analyze_cfa(program, CfaVariant::Simple);
      FlowGraph graph = analyze_flows(program, cfa);
      if (!first) js << ",";
      first = false;
      js << "\n" << analyze_to_json(program, cfa, graph);
    }
    js << "\n]";
    std::cout << js.str() << "\n";
  } else {
    std::cout << text.str();
  }
  return ok ? 0 : 1;
}

int run_proptest(std::uint64_t seed, int count, bool mutate,
                 bool preservation) {
  if (const char* env = std::getenv("SLAMJS_SEED"))
    seed = std::strtoull(env, nullptr, 10);
  PropertyOptions opts;
  opts.seed = seed;
  opts.count = count;
  opts.eval.mutate_drop_lift_if_marker = mutate;
  opts.preservation = preservation;
  PropertyReport report = run_property_suite(opts);
  std::cout << report_to_text(report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evaluator and marker-dependency analyses for a staged "
               "functional language with prototype records"};
  app.require_subcommand(1);

  std::string path = "-";
  std::string variant = "simple";
  std::string dump_flows;
  long fuel = 100000;
  bool trace = false, json = false, show_labels = false, intermediate = false;
  bool dump_cfa = false;
  std::uint64_t seed = 0;
  int count = 500;
  bool mutate = false, preservation = false;

  CLI::App* eval_cmd = app.add_subcommand("eval", "reduce a program to a value");
  eval_cmd->add_option("file", path, "source file, or - for stdin");
  eval_cmd->add_option("--fuel", fuel, "maximum number of steps");
  eval_cmd->add_flag("--trace", trace, "print one JSON line per step");
  eval_cmd->add_flag("--json", json, "print the outcome as JSON");
  eval_cmd->add_flag("--show-labels", show_labels, "print node labels");
  eval_cmd->add_flag("--intermediate", intermediate,
                     "accept substitutions, run-in and holes in the input");

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "run the value and flow analyses");
  analyze_cmd->add_option("file", path, "source file, or - for stdin");
  analyze_cmd->add_option("--variant", variant, "simple or improved")
      ->check(CLI::IsMember({"simple", "improved"}));
  analyze_cmd->add_flag("--json", json, "print the full analysis as JSON");
  analyze_cmd->add_flag("--dump-cfa", dump_cfa, "print the value analysis");
  analyze_cmd->add_option("--dump-flows", dump_flows, "print the flow graph")
      ->check(CLI::IsMember({"dot", "json"}));

  CLI::App* depends_cmd = app.add_subcommand(
      "depends", "print the markers the result may depend on");
  depends_cmd->add_option("file", path, "source file, or - for stdin");
  depends_cmd->add_option("--variant", variant, "simple or improved")
      ->check(CLI::IsMember({"simple", "improved"}));
  depends_cmd->add_flag("--json", json, "print as JSON");

  CLI::App* corpus_cmd = app.add_subcommand(
      "corpus", "run the built-in example programs and check expectations");
  corpus_cmd->add_flag("--json", json, "print per-program analyses as JSON");

  CLI::App* prop_cmd = app.add_subcommand(
      "proptest", "generate random programs and check the analyses on them");
  prop_cmd->add_option("--seed", seed, "generator seed (SLAMJS_SEED overrides)");
  prop_cmd->add_option("--count", count, "number of programs");
  prop_cmd->add_flag("--mutate", mutate,
                     "use the deliberately broken lift rule");
  prop_cmd->add_flag("--preservation", preservation,
                     "also check root labels against the flow graph");

  CLI11_PARSE(app, argc, argv);

  if (*eval_cmd)
    return run_eval(path, fuel, trace, json, show_labels, intermediate);
  if (*analyze_cmd)
    return run_analyze(path, variant, json, dump_cfa, dump_flows);
  if (*depends_cmd) return run_depends(path, variant, json);
  if (*corpus_cmd) return run_corpus(json);
  if (*prop_cmd) return run_proptest(seed, count, mutate, preservation);
  return 0;
}
