#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "slint/el.hpp"
#include "slint/syntax.hpp"
#include "support.hpp"

using namespace slint;
using namespace slint::el;
using syntax::term;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SLINT_SAMPLES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ELProblem omed() { return parse_cbox(slurp("omed.elp")); }

ParseError parse_error(const std::string& text) {
  try {
    parse_cbox(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("", 0, 0);
}

}  // namespace

TEST(ParseCBox, Omed) {
  auto p = omed();
  EXPECT_EQ(p.a.gcis.size(), 12u);
  EXPECT_EQ(p.b.gcis.size(), 4u);
  EXPECT_EQ(p.ris.size(), 2u);
  EXPECT_EQ(p.roles, (std::vector<std::string>{"part-of", "has-location", "acts-on"}));
  EXPECT_EQ(p.a.gcis[9].label, "A10");
  EXPECT_EQ(to_string(p.a.gcis[9].lhs), "Inflammation & ex has-location . Endocardium");
  EXPECT_EQ(p.a.gcis[9].line, 17u);
  ASSERT_TRUE(p.has_goal());
  EXPECT_EQ(to_string(*p.goal_c), "Endocarditis");
}

TEST(ParseCBox, EmptySidesTrivialGoal) {
  auto p = parse_cbox("goal X <= X\n");
  EXPECT_TRUE(p.a.gcis.empty() && p.b.gcis.empty());
  EXPECT_TRUE(el_subsumes(p));
}

TEST(ParseCBox, DefaultLabels) {
  auto p = parse_cbox("roles r s\nri r <= s\nri r o r <= r\nside B\nX <= Y\nside A\nY <= ex r . Z\n");
  EXPECT_EQ(p.ris[0].label, "R1");
  EXPECT_EQ(p.ris[1].label, "R2");
  ASSERT_TRUE(p.ris[1].s);
  EXPECT_EQ(*p.ris[1].s, "r");
  EXPECT_EQ(p.b.gcis[0].label, "B1");
  EXPECT_EQ(p.a.gcis[0].label, "A1");
  EXPECT_FALSE(p.has_goal());
}

TEST(ParseCBox, Precedence) {
  auto p = parse_cbox("roles r\nside A\nex r . X & Y <= ex r . (X & Y)\n");
  const auto& g = p.a.gcis[0];
  EXPECT_EQ(g.lhs.kind(), ConceptKind::And);
  EXPECT_EQ(to_string(g.lhs), "Y & ex r . X");
  EXPECT_EQ(to_string(g.rhs), "ex r . (X & Y)");
}

TEST(ParseCBox, UndeclaredRole) {
  auto e = parse_error("roles r\nside A\nX <= ex s . Y\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 9u);
  EXPECT_NE(std::string(e.what()).find("undeclared role 's'"), std::string::npos);
  EXPECT_EQ(parse_error("roles r\nri r <= t\n").line(), 2u);
}

TEST(ParseCBox, Duplicates) {
  EXPECT_NE(std::string(parse_error("roles r s r\n").what()).find("duplicate role"), std::string::npos);
  auto e = parse_error("side A\nL: X <= Y\nL: Y <= Z\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(std::string(e.what()).find("duplicate label 'L'"), std::string::npos);
}

TEST(ParseCBox, SyntaxErrors) {
  auto e = parse_error("side A\nX <= (Y & Z\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 12u);
  EXPECT_EQ(parse_error("side C\n").line(), 1u);
  EXPECT_EQ(parse_error("X <= Y\n").line(), 1u);
  EXPECT_EQ(parse_error("side A\nX Y\n").column(), 3u);
  EXPECT_EQ(parse_error("goal X <= Y\nside A\n").line(), 2u);
  EXPECT_EQ(parse_error("roles r\nside A\nX <= ex r Y\n").column(), 11u);
  EXPECT_EQ(parse_error("side A\nroles r\n").line(), 2u);
}

TEST(Translate, Omed) {
  auto q = translate(omed());
  ASSERT_EQ(q.a.size(), 12u);
  EXPECT_EQ(to_string(q.a[1]), "Endocardium <= part-of(HeartWall)");
  EXPECT_EQ(q.a_labels[1], "A2");
  EXPECT_EQ(q.b_labels[3], "B4");
  ASSERT_EQ(q.axioms.compositions.size(), 2u);
  const auto& r2 = q.axioms.compositions[1];
  EXPECT_EQ(r2.f, "has-location");
  EXPECT_EQ(r2.g, "part-of");
  EXPECT_EQ(r2.h, "has-location");
  EXPECT_EQ(r2.label, "R2");
  EXPECT_EQ(q.axioms.functions.size(), 3u);
  EXPECT_EQ(to_string(*q.goal), "Endocarditis <= HeartDisease");
}

TEST(Translate, InclusionAndTrivialGci) {
  auto q = translate(parse_cbox("roles r s\nri r <= s\nside A\nX <= X\n"));
  ASSERT_EQ(q.axioms.inclusions.size(), 1u);
  EXPECT_EQ(q.axioms.inclusions[0].f, "r");
  EXPECT_EQ(q.axioms.inclusions[0].g, "s");
  EXPECT_EQ(to_string(q.a[0]), "X <= X");
}

TEST(Untranslate, Examples) {
  auto p = omed();
  EXPECT_EQ(to_string(untranslate(term("Disease & has-location(Ventricle)"), p)),
            "Disease & ex has-location . Ventricle");
  EXPECT_EQ(untranslate(term("Heart"), p), ConceptDescr::name("Heart"));
  EXPECT_EQ(to_string(untranslate(term("part-of(part-of(Heart))"), p)), "ex part-of . ex part-of . Heart");
  EXPECT_THROW(untranslate(term("Nope"), p), UsageError);
  EXPECT_THROW(untranslate(term("child-of(Heart)"), p), UsageError);
}

TEST(ConceptProperty, RoundTrip) {
  std::mt19937 rng(99);
  testing_support::TermGen gen(rng, std::vector<std::string>{"A", "B", "C", "D"}, {"r", "s"});
  std::set<std::string> roles{"r", "s"}, names{"A", "B", "C", "D"};
  for (int i = 0; i < 500; ++i) {
    Term t = gen.term(4);
    ConceptDescr c = untranslate(t, roles, names);
    EXPECT_EQ(to_term(c), t);
    auto p = parse_cbox("roles r s\ngoal " + to_string(c) + " <= A\n");
    EXPECT_EQ(*p.goal_c, c) << to_string(c);
  }
}

TEST(ConceptProperty, ConjunctionIsNormalized) {
  auto x = ConceptDescr::name("X"), y = ConceptDescr::name("Y");
  EXPECT_EQ(ConceptDescr::conj({y, x, y}), ConceptDescr::conj({x, y}));
  EXPECT_EQ(ConceptDescr::conj({x, x}), x);
  EXPECT_EQ(ConceptDescr::conj({ConceptDescr::conj({x, y}), x}), ConceptDescr::conj({x, y}));
}

TEST(Subsumes, Omed) {
  EXPECT_TRUE(el_subsumes(omed()));
  EXPECT_FALSE(el_subsumes(parse_cbox(slurp("omed_A_only.elp"))));
  EXPECT_FALSE(el_subsumes(parse_cbox(slurp("omed_B_only.elp"))));
  EXPECT_TRUE(el_subsumes(parse_cbox("roles r\ngoal ex r . C <= ex r . C\n")));
}

TEST(Interpolate, Omed) {
  auto p = omed();
  for (bool pre : {false, true}) {
    auto r = el_interpolate(p, ELInterpolateOptions{pre, true});
    EXPECT_EQ(to_string(r.description), "Disease & ex has-location . Ventricle");
    EXPECT_TRUE(r.lower_verified && r.upper_verified);
    EXPECT_EQ(r.justification.has_value(), pre);
  }
}

TEST(Interpolate, SharedLhs) {
  auto p = parse_cbox("side A\nC <= D\nside B\nC <= E\ngoal C <= D\n");
  EXPECT_EQ(el_interpolate(p).description, ConceptDescr::name("C"));
}

TEST(Interpolate, OperatorExampleAsEl) {
  auto p = parse_cbox(slurp("slo.elp"));
  auto r = el_interpolate(p);
  EXPECT_EQ(to_string(r.description), "d & ex f . d");
  // the minimal sub-ontology no longer needs b <= ex f . b, so d alone suffices
  auto j = el_interpolate(p, ELInterpolateOptions{true, true});
  EXPECT_EQ(to_string(j.description), "d");
  EXPECT_EQ(*j.justification, (std::vector<std::string>{"A1", "A2", "A3", "B1"}));
  EXPECT_TRUE(j.lower_verified && j.upper_verified);
}

TEST(Interpolate, Errors) {
  EXPECT_THROW(el_interpolate(parse_cbox(slurp("omed_A_only.elp"))), NotEntailed);
  EXPECT_THROW(el_interpolate(parse_cbox(slurp("omed_A_only.elp")), ELInterpolateOptions{true, true}), NotEntailed);
  EXPECT_THROW(el_interpolate(parse_cbox("side A\nX <= Y\n")), UsageError);
}

TEST(Justify, Omed) {
  EXPECT_EQ(justify(omed()),
            (std::vector<std::string>{"A2", "A4", "A6", "A8", "A9", "A11", "B1", "B4", "R2"}));
}

TEST(Justify, Singleton) {
  auto p = parse_cbox("side A\nX <= Y\nZ <= W\nside B\nW <= V\ngoal X <= Y\n");
  EXPECT_EQ(justify(p), (std::vector<std::string>{"A1"}));
}

TEST(Justify, NotEntailed) { EXPECT_THROW(justify(parse_cbox(slurp("omed_A_only.elp"))), UsageError); }

TEST(Justify, MinimalAndEntailing) {
  auto p = omed();
  auto labels = justify(p);
  std::set<std::string> keep(labels.begin(), labels.end());
  auto restrict = [&](std::set<std::string> ls) {
    ELProblem q = p;
    auto cut = [&](CBox& b) {
      std::vector<GCI> g;
      for (const auto& x : b.gcis)
        if (ls.count(x.label)) g.push_back(x);
      b.gcis = g;
    };
    cut(q.a);
    cut(q.b);
    std::vector<RoleInclusion> r;
    for (const auto& x : q.ris)
      if (ls.count(x.label)) r.push_back(x);
    q.ris = r;
    return q;
  };
  EXPECT_TRUE(el_subsumes(restrict(keep)));
  for (const auto& l : labels) {
    auto less = keep;
    less.erase(l);
    EXPECT_FALSE(el_subsumes(restrict(less))) << "dropping " << l;
  }
}
