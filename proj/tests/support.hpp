#pragma once

// Random generators and brute-force oracles shared by the test programs.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "slint/axioms.hpp"
#include "slint/locality.hpp"
#include "slint/slat.hpp"
#include "slint/terms.hpp"

namespace testing_support {

using slint::Atom;
using slint::Term;

class TermGen {
 public:
  TermGen(std::mt19937& rng, int constants, int functions) : rng_(rng) {
    for (int i = 0; i < constants; ++i) consts_.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i < functions; ++i) funcs_.push_back(std::string(1, static_cast<char>('f' + i)));
  }
  TermGen(std::mt19937& rng, std::vector<std::string> constants, std::vector<std::string> functions)
      : rng_(rng), consts_(std::move(constants)), funcs_(std::move(functions)) {}

  Term constant() { return Term::constant(consts_[pick(consts_.size())]); }

  Term term(int depth) {
    int choice = depth <= 0 ? 0 : static_cast<int>(rng_() % 4);
    if (choice <= 1 || (choice == 2 && funcs_.empty())) return constant();
    if (choice == 2) return Term::app(funcs_[pick(funcs_.size())], term(depth - 1));
    return slint::mk_meet({term(depth - 1), term(depth - 1)});
  }

  /// Meet-only term (no applications).
  Term meet_term(int max_args) {
    int n = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_args)));
    std::vector<Term> xs;
    for (int i = 0; i < n; ++i) xs.push_back(constant());
    return slint::mk_meet(xs);
  }

  const std::vector<std::string>& constants() const { return consts_; }
  const std::vector<std::string>& functions() const { return funcs_; }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::mt19937& rng_;
  std::vector<std::string> consts_;
  std::vector<std::string> funcs_;
};

/// Random constants-only entailment instance.
struct OracleInstance {
  std::vector<Atom> context;
  Atom goal;
};

inline OracleInstance random_oracle_instance(std::mt19937& rng, int constants, int atoms) {
  TermGen gen(rng, constants, 0);
  OracleInstance inst{{}, Atom::leq(gen.constant(), gen.constant())};
  int n = static_cast<int>(rng() % static_cast<unsigned>(atoms + 1));
  for (int i = 0; i < n; ++i) inst.context.push_back(Atom::leq(gen.meet_term(2), gen.meet_term(2)));
  inst.goal = Atom::leq(gen.meet_term(2), gen.meet_term(2));
  return inst;
}

/// Exhaustive search for a countermodel over the two-element chain with monotone
/// unary functions: every function is one of the three monotone maps on {0,1}.
/// Sound for refutation in SLat with operators, since any model found is a model.
inline bool two_element_countermodel(const std::vector<Atom>& context, const slint::AxiomSet& axioms,
                                     const Atom& goal) {
  std::set<std::string> cs;
  std::set<std::string> fs(axioms.functions.begin(), axioms.functions.end());
  for (const auto& a : context) {
    slint::collect_constants(a.lhs, cs);
    slint::collect_constants(a.rhs, cs);
    slint::collect_functions(a.lhs, fs);
    slint::collect_functions(a.rhs, fs);
  }
  slint::collect_constants(goal.lhs, cs);
  slint::collect_constants(goal.rhs, cs);
  slint::collect_functions(goal.lhs, fs);
  slint::collect_functions(goal.rhs, fs);
  std::vector<std::string> cv(cs.begin(), cs.end());
  std::vector<std::string> fv(fs.begin(), fs.end());
  // monotone maps {0,1}->{0,1}: const0, id, const1
  static const int maps[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  slint::slat::FiniteModel m;
  m.carrier = {"0", "1"};
  m.meet = {{0, 0}, {0, 1}};
  std::uint64_t fcount = 1;
  for (std::size_t i = 0; i < fv.size(); ++i) fcount *= 3;
  for (std::uint64_t fm = 0; fm < fcount; ++fm) {
    std::uint64_t code = fm;
    for (const auto& f : fv) {
      const int* mp = maps[code % 3];
      code /= 3;
      m.funcs[f] = {mp[0], mp[1]};
    }
    auto report = slint::slat::check_finite_model(m, axioms, std::vector<Atom>{});
    if (!report.all_passed()) continue;
    for (std::uint64_t cm = 0; cm < (std::uint64_t{1} << cv.size()); ++cm) {
      for (std::size_t i = 0; i < cv.size(); ++i) m.consts[cv[i]] = static_cast<int>((cm >> i) & 1u);
      bool model = true;
      for (const auto& a : context)
        if (!slint::slat::holds(m, a)) {
          model = false;
          break;
        }
      if (model && !slint::slat::holds(m, goal)) return true;
    }
  }
  return false;
}

/// Random problem with up to 3 functions, up to 3 axioms and 6 constants:
/// a1, a2 only on side A, b1, b2 only on side B, s1, s2 on both.  The goal is
/// a1 <= b1.
inline slint::Problem random_slo_problem(std::mt19937& rng) {
  using namespace slint;
  static const std::vector<std::string> fns{"f", "g", "h"};
  Problem p;
  int nf = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < nf; ++i) p.axioms.functions.insert(fns[i]);
  std::vector<std::string> fv(p.axioms.functions.begin(), p.axioms.functions.end());
  int nk = static_cast<int>(rng() % 4);
  for (int i = 0; i < nk; ++i) {
    auto pick = [&] { return fv[rng() % fv.size()]; };
    if (rng() % 3 == 0) p.axioms.inclusions.push_back(Inclusion{pick(), pick(), "K" + std::to_string(i + 1)});
    else p.axioms.compositions.push_back(Composition{pick(), pick(), pick(), "K" + std::to_string(i + 1)});
  }
  TermGen ga(rng, std::vector<std::string>{"a1", "a2", "s1", "s2"}, fv);
  TermGen gb(rng, std::vector<std::string>{"s1", "s2", "b1", "b2"}, fv);
  int na = 1 + static_cast<int>(rng() % 5), nb = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < na; ++i) p.a.push_back(Literal{Atom::leq(ga.term(2), ga.term(2)), true});
  for (int i = 0; i < nb; ++i) p.b.push_back(Literal{Atom::leq(gb.term(2), gb.term(2)), true});
  p.goal = Atom::leq(Term::constant("a1"), Term::constant("b1"));
  return p;
}

}  // namespace testing_support
