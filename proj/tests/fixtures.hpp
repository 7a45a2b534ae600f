#pragma once

// Small problems used by several test programs.

#include "slint/locality.hpp"
#include "slint/syntax.hpp"

namespace fixtures {

using slint::AxiomSet;
using slint::Composition;
using slint::Problem;

/// Two monotone operators with y <= g(x) -> f(y) <= g(x).
inline Problem operator_example() {
  Problem p;
  p.a = slint::syntax::literals({"d <= g(a)", "a <= c", "g(c) <= a"});
  p.b = slint::syntax::literals({"b <= d", "b <= f(b)"});
  p.axioms.functions = {"f", "g"};
  p.axioms.compositions.push_back(Composition{"f", "g", "g", "K1"});
  p.goal = slint::syntax::atom("b <= a");
  return p;
}

/// The medical ontology in its algebraic form, abbreviated names.
inline Problem medical(bool with_a = true, bool with_b = true) {
  Problem p;
  if (with_a) {
    p.a = slint::syntax::literals({"Em <= T", "Em <= po(HW)", "HW <= BW", "HW <= po(LV)", "HW <= po(RV)", "LV <= V",
                                   "RV <= V", "Es <= I", "Es <= hl(Em)", "I & hl(Em) <= Es", "I <= D",
                                   "I <= ao(T)"});
    for (int i = 1; i <= 12; ++i) p.a_labels.push_back("A" + std::to_string(i));
  }
  if (with_b) {
    p.b = slint::syntax::literals({"V <= po(H)", "HD <= D", "HD <= hl(H)", "D & hl(H) <= HD"});
    for (int i = 1; i <= 4; ++i) p.b_labels.push_back("B" + std::to_string(i));
  }
  p.axioms.functions = {"po", "hl", "ao"};
  p.axioms.compositions.push_back(Composition{"po", "po", "po", "R1"});
  p.axioms.compositions.push_back(Composition{"hl", "po", "hl", "R2"});
  p.goal = slint::syntax::atom("Es <= HD");
  return p;
}

/// The Beth example: a is implicitly but not explicitly {g,e}-definable.
inline Problem beth_example() {
  Problem p;
  p.a = slint::syntax::literals({"a <= f(e)", "e <= g(b)", "g(b) <= a"});
  p.axioms.functions = {"f", "g"};
  p.axioms.compositions.push_back(Composition{"f", "g", "g", "K1"});
  return p;
}

}  // namespace fixtures
