#include "slamjs/corpus.hpp"

namespace slamjs {

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"marked-if",
       "if ((H : true)) { (L : false) } else { 1 }",
       {"H", "L"},
       {"H", "L"},
       "(H : (L : false))"},

      {"church-conditional",
       "let ctrue = fun (x) { fun (y) { x } } in\n"
       "let cif = fun (x) { fun (y) { fun (z) { (x(y))(z) } } } in\n"
       "((cif((H : ctrue)))((L : false)))((I : 1))",
       {"H", "I", "L"},
       {"H", "L"},
       "(H : (L : false))"},

      {"staged-choice",
       "let x = if (true) { box f } else { box g } in\n"
       "let f = fun (y) { 1 } in\n"
       "let g = fun (z) { (L : true) } in\n"
       "run (box ((unbox x)((H : undef))))",
       {"L"},
       {"L"},
       "1"},

      {"capture-shadowing",
       "let c = box x in\n"
       "let x = (L : 1) in\n"
       "let eval = fun (b) { run b } in\n"
       "let x = (H : 2) in\n"
       "eval(c)",
       {"H", "L"},
       {"L"},
       "(L : 1)"},

      {"proto-field-select",
       "let i = (I : { \"__proto__\" : null, \"x\" : (H : 1), \"y\" : (L : 2) }) in\n"
       "let s = fun (id) { let f = box (i[unbox id]) in run f } in\n"
       "s(box \"y\")",
       {"H", "I", "L"},
       {"H", "I", "L"},
       "(I : (L : 2))"},

      {"typeof-dispatch",
       "let fst = fun (x) { fun (y) { x } } in\n"
       "let f = if (false) { fst } else { box fst } in\n"
       "let x = (H : 1) in\n"
       "let y = (L : true) in\n"
       "if (typeof f == \"function\") { (f(x))(y) } else { run (box (((unbox f)(x))(y))) }",
       {"H"},
       {"H"},
       "(H : 1)"},

      {"staged-pair-selector",
       "let pair = fun (x) { fun (y) { fun (z) { run z } } } in\n"
       "let fst = fun (z) { z(box x) } in\n"
       "let snd = fun (z) { z(box y) } in\n"
       "let bp = box ((pair((L : box 1)))((H : box true))) in\n"
       "let boxfst = box (fst(unbox bp)) in\n"
       "run (run boxfst)",
       {"H", "L"},
       {"L"},
       "(L : 1)"},

      {"loop-to-zero",
       "(fun (n) {\n"
       "  (fun (x) { (x(x))(n) })(fun (x) { fun (y) {\n"
       "    if (y == 0) { true } else { (x(x))(y - 1) } } })\n"
       "})((H : 5))",
       {"H"},
       {"H"},
       "true"},

      {"box-splice-fst",
       "let fst = fun (x) { fun (y) { x } } in\n"
       "let a = box x in\n"
       "let b = box (fun (x) { fun (y) { (fst(unbox a))(y) } }) in\n"
       "((run b)((L : 1)))((H : 2))",
       {"L"},
       {"L"},
       "(L : 1)"},

      {"record-update-fst",
       "let fst = fun (x) { fun (y) { x } } in\n"
       "let a = fun (p) { p[\"x\"] } in\n"
       "let b = (fun (h) { fun (p) { fun (x) { fun (y) {\n"
       "  (fst(h((p[\"x\"] = x)[\"y\"] = y)))(y) } } } })(a) in\n"
       "((b({ \"__proto__\" : null }))((L : 1)))((H : 2))",
       {"H", "L"},
       {"H", "L"},
       "(L : 1)"},

      {"church-record-fst",
       "let blank = fun (get) { (get(null))(null) } in\n"
       "let getx = fun (x) { fun (y) { x } } in\n"
       "let gety = fun (x) { fun (y) { y } } in\n"
       "let setx = fun (env) { fun (newx) { fun (get) { (get(newx))(env(gety)) } } } in\n"
       "let sety = fun (env) { fun (newy) { fun (get) { (get(env(getx)))(newy) } } } in\n"
       "let fst = fun (x) { fun (y) { x } } in\n"
       "let a = fun (p) { p(getx) } in\n"
       "let b = (fun (h) { fun (p) { fun (x) { fun (y) {\n"
       "  (fst(h((sety((setx(p))(x)))(y))))(y) } } } })(a) in\n"
       "((b(blank))((L : 1)))((H : 2))",
       {"H", "L"},
       {"L"},
       "(L : 1)"},
  };
  return entries;
}

const std::vector<CorpusEntry>& semantics_examples() {
  static const std::vector<CorpusEntry> entries = {
      {"plain-if",
       "if (true) { false } else { 1 }",
       {},
       {},
       "false"},

      {"staged-if",
       "run (box (if (unbox (box true)) { false } else { 1 }))",
       {},
       {},
       "false"},

      {"captured-eval",
       "((fun (x) { fun (y) { run x } })(box y))(true)",
       {},
       {},
       "true"},

      {"marked-if-lift",
       "if ((H : true)) { (L : false) } else { (I : 1) }",
       {"H", "I", "L"},
       {"H", "I", "L"},
       "(H : (L : false))"},

      {"marked-closure",
       "((fun (x) { (I : (fun (y) { x })) })((H : 1)))((L : 2))",
       {"H", "I"},
       {"H", "I"},
       "(I : (H : 1))"},
  };
  return entries;
}

}  // namespace slamjs
