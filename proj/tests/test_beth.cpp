#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "slint/beth.hpp"
#include "slint/syntax.hpp"
#include "support.hpp"

using namespace slint;
using namespace slint::beth;
using syntax::term;

namespace {

const std::set<Symbol> kGE{{"g", SymbolKind::Function}, {"e", SymbolKind::Constant}};

slat::FiniteModel model_s() {
  slat::FiniteModel m;
  m.carrier = {"a", "e", "b", "d"};
  m.meet = {{0, 1, 3, 3}, {1, 1, 3, 3}, {3, 3, 2, 3}, {3, 3, 3, 3}};
  m.funcs["f"] = {0, 0, 3, 3};
  m.funcs["g"] = {3, 3, 0, 3};
  for (int i = 0; i < 4; ++i) m.consts[m.carrier[i]] = i;
  return m;
}

}  // namespace

TEST(Doubling, PrimesOutsideSigma) {
  auto p = fixtures::beth_example();
  auto d = double_signature(p.a, p.axioms, kGE, "a");
  EXPECT_EQ(d.target_prime, "a'");
  EXPECT_EQ(d.constants, (std::map<std::string, std::string>{{"a", "a'"}, {"b", "b'"}}));
  EXPECT_EQ(d.functions, (std::map<std::string, std::string>{{"f", "f'"}}));
  ASSERT_EQ(d.problem.b.size(), 3u);
  EXPECT_EQ(to_string(d.problem.b[0]), "a' <= f'(e)");
  EXPECT_EQ(to_string(d.problem.b[1]), "e <= g(b')");
  EXPECT_EQ(d.problem.axioms.compositions.size(), 2u);
  EXPECT_EQ(d.problem.axioms.compositions[1].f, "f'");
  EXPECT_EQ(d.problem.axioms.compositions[1].g, "g");
}

TEST(Doubling, AvoidsExistingPrimedNames) {
  std::vector<Literal> a{Literal{Atom::leq(Term::constant("a"), Term::constant("a'")), true}};
  auto d = double_signature(a, AxiomSet{}, {}, "a");
  EXPECT_EQ(d.constants.at("a"), "a''");
  EXPECT_EQ(d.constants.at("a'"), "a'''");
}

TEST(Doubling, TargetMustOccur) {
  auto p = fixtures::beth_example();
  EXPECT_THROW(double_signature(p.a, p.axioms, kGE, "zz"), UsageError);
}

TEST(Implicit, BethExample) {
  auto p = fixtures::beth_example();
  EXPECT_TRUE(is_implicitly_defined(p.a, p.axioms, kGE, "a"));
}

TEST(Implicit, WholeSignatureIsTrivial) {
  auto p = fixtures::beth_example();
  std::set<Symbol> all = symbols_of(p.a);
  EXPECT_TRUE(is_implicitly_defined(p.a, p.axioms, all, "a"));
}

TEST(Implicit, UpperBoundOnlyIsNotEnough) {
  auto p = fixtures::beth_example();
  std::vector<Literal> a{p.a[0]};
  EXPECT_FALSE(is_implicitly_defined(a, p.axioms, kGE, "a"));
  // a model of A /\ A' separating a from a'
  auto d = double_signature(a, p.axioms, kGE, "a");
  std::vector<Atom> ctx = positive_atoms(d.problem.a);
  auto b = positive_atoms(d.problem.b);
  ctx.insert(ctx.end(), b.begin(), b.end());
  EXPECT_TRUE(testing_support::two_element_countermodel(
      ctx, d.problem.axioms, Atom::leq(Term::constant("a"), Term::constant(d.target_prime))));
}

TEST(Implicit, SymmetricUnderSwap) {
  auto p = fixtures::beth_example();
  auto d = double_signature(p.a, p.axioms, kGE, "a");
  DoubledProblem s = d;
  std::swap(s.problem.a, s.problem.b);
  std::swap(s.target, s.target_prime);
  EXPECT_EQ(is_implicitly_defined(d), is_implicitly_defined(s));
}

TEST(Explicit, ThetaGivesFOfE) {
  auto p = fixtures::beth_example();
  auto def = explicit_definition(p.a, p.axioms, kGE, "a");
  ASSERT_TRUE(def.found) << def.diagnostics;
  EXPECT_EQ(*def.term, term("f(e)"));
  Problem q = p;
  q.goal = Atom::leq(Term::constant("a"), *def.term);
  EXPECT_TRUE(locality::entails(q));
  q.goal = Atom::leq(*def.term, Term::constant("a"));
  EXPECT_TRUE(locality::entails(q));
}

TEST(Explicit, TrivialEquality) {
  auto a = syntax::literals({"a <= e", "e <= a"});
  auto def = explicit_definition(a, AxiomSet{}, {Symbol{"e", SymbolKind::Constant}}, "a");
  ASSERT_TRUE(def.found) << def.diagnostics;
  EXPECT_EQ(*def.term, term("e"));
}

TEST(Explicit, IntersectionFailsAndModelRefutes) {
  auto p = fixtures::beth_example();
  auto def = explicit_definition(p.a, p.axioms, kGE, "a", SharingMode::Intersection);
  EXPECT_FALSE(def.found);
  EXPECT_FALSE(def.diagnostics.empty());

  auto m = model_s();
  auto k = p.axioms;
  EXPECT_TRUE(slat::check_finite_model(m, k, positive_atoms(p.a)).all_passed());
  auto r = refute_in_model(m, kGE, "a", 3);
  EXPECT_TRUE(r.refuted);
  EXPECT_EQ(r.terms, 9u);
  EXPECT_EQ(r.target_value, "a");
  EXPECT_EQ(r.value_counts.count("a"), 0u);
}

TEST(Enumerate, SmallDepths) {
  EXPECT_EQ(enumerate_terms({"e"}, {"g"}, 0).size(), 1u);
  auto d1 = enumerate_terms({"e"}, {"g"}, 1);
  EXPECT_EQ(d1.size(), 2u);  // e, g(e)
  auto d2 = enumerate_terms({"e"}, {"g"}, 2);
  EXPECT_EQ(d2.size(), 4u);  // + g(g(e)), e & g(e)
}

TEST(Enumerate, Limit) {
  EXPECT_THROW(enumerate_terms({"a", "b", "c", "d"}, {"f", "g", "h"}, 4), LimitError);
}

TEST(Refute, FindsWitnessWhenDefinable) {
  auto m = model_s();
  auto r = refute_in_model(m, {Symbol{"f", SymbolKind::Function}, Symbol{"e", SymbolKind::Constant}}, "a", 2);
  EXPECT_FALSE(r.refuted);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(slat::eval_term(m, *r.witness), 0);
}
