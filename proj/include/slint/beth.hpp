#pragma once

// Definability of a constant over a subsignature.  Implicit definability is
// checked by doubling: every symbol outside the subsignature gets a primed
// copy and a <= a', a' <= a are decided over A /\ A'.  Explicit definitions
// come from interpolating a <= a' in the doubled theory.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slint/errors.hpp"
#include "slint/interp.hpp"
#include "slint/locality.hpp"
#include "slint/slat.hpp"
#include "slint/terms.hpp"

namespace slint::beth {

struct DoubledProblem {
  Problem problem;  ///< A on side A, A' on side B, axioms K u K', no goal
  std::set<Symbol> sigma;
  std::string target;
  std::string target_prime;
  std::map<std::string, std::string> constants;  ///< original -> primed
  std::map<std::string, std::string> functions;

  Term unprime(const Term& t) const {
    std::map<std::string, std::string> ic, ifn;
    for (const auto& [k, v] : constants) ic[v] = k;
    for (const auto& [k, v] : functions) ifn[v] = k;
    return rename_symbols(t, ic, ifn);
  }
};

inline DoubledProblem double_signature(const std::vector<Literal>& a, const AxiomSet& k, const std::set<Symbol>& sigma,
                                       const std::string& target) {
  std::set<Symbol> used = symbols_of(a);
  if (!used.count(Symbol{target, SymbolKind::Constant}))
    throw UsageError("constant '" + target + "' does not occur in the input");
  for (const auto& f : k.functions) used.insert(Symbol{f, SymbolKind::Function});

  DoubledProblem d;
  d.sigma = sigma;
  d.target = target;
  std::set<std::string> taken;
  for (const auto& s : used) taken.insert(s.name);
  auto fresh = [&](const std::string& base) {
    std::string n = base + "'";
    while (taken.count(n)) n += "'";
    taken.insert(n);
    return n;
  };
  for (const auto& s : used) {
    if (sigma.count(s)) continue;
    (s.kind == SymbolKind::Constant ? d.constants : d.functions)[s.name] = fresh(s.name);
  }
  auto rn = [&](const Term& t) { return rename_symbols(t, d.constants, d.functions); };
  auto fn = [&](const std::string& f) {
    auto it = d.functions.find(f);
    return it == d.functions.end() ? f : it->second;
  };

  d.problem.a = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.problem.a_labels.push_back("A" + std::to_string(i + 1));
    d.problem.b_labels.push_back("A" + std::to_string(i + 1) + "'");
    d.problem.b.push_back(Literal{Atom{a[i].atom.kind, rn(a[i].atom.lhs), rn(a[i].atom.rhs)}, a[i].positive});
  }
  d.problem.axioms = k;
  AxiomSet kp;
  for (const auto& f : k.functions) kp.functions.insert(fn(f));
  for (const auto& i : k.inclusions) kp.inclusions.push_back(Inclusion{fn(i.f), fn(i.g), i.label + "'"});
  for (const auto& c : k.compositions)
    kp.compositions.push_back(Composition{fn(c.f), fn(c.g), fn(c.h), c.label + "'"});
  d.problem.axioms.merge(kp);
  d.target_prime = d.constants.count(target) ? d.constants.at(target) : target;
  return d;
}

inline bool is_implicitly_defined(const DoubledProblem& d, SharingMode mode = SharingMode::Theta) {
  auto holds = [&](const Term& l, const Term& r) {
    Problem q = d.problem;
    q.goal = Atom::leq(l, r);
    return locality::decide(q, locality::ReduceOptions{mode, {}}).entailed;
  };
  Term a = Term::constant(d.target), ap = Term::constant(d.target_prime);
  return holds(a, ap) && holds(ap, a);
}

inline bool is_implicitly_defined(const std::vector<Literal>& a, const AxiomSet& k, const std::set<Symbol>& sigma,
                                  const std::string& target) {
  return is_implicitly_defined(double_signature(a, k, sigma, target));
}

/// Functions of Sigma closed under co-occurrence in K, plus Sigma's constants.
inline std::set<Symbol> theta_closure(const AxiomSet& k, const std::set<Symbol>& sigma) {
  std::set<std::string> fs;
  for (const auto& s : sigma)
    if (s.kind == SymbolKind::Function) fs.insert(s.name);
  auto sh = theta_sharing(k, fs, fs);
  std::set<Symbol> out;
  for (const auto& s : sigma)
    if (s.kind == SymbolKind::Constant) out.insert(s);
  for (const auto& f : sh.closure_a) out.insert(Symbol{f, SymbolKind::Function});
  return out;
}

struct Definition {
  bool found = false;
  std::optional<Term> term;
  std::string diagnostics;
  std::optional<interp::InterpolationResult> interpolation;
};

/// Interpolates a <= a' in the doubled problem and unprimes the result.  Any
/// failure to produce a verified term over the allowed signature is reported
/// as a Failure value rather than an exception.
inline Definition explicit_definition(const DoubledProblem& d, SharingMode mode = SharingMode::Theta) {
  Definition out;
  Problem q = d.problem;
  q.goal = Atom::leq(Term::constant(d.target), Term::constant(d.target_prime));
  try {
    out.interpolation = interp::interpolate(q, interp::InterpolateOptions{mode, true});
  } catch (const NoSharedWitness& e) {
    out.diagnostics = std::string("no shared witness: ") + e.what();
    return out;
  } catch (const VerificationFailed& e) {
    out.diagnostics = std::string("verification failed: ") + e.what();
    return out;
  }
  Term t = d.unprime(out.interpolation->term);

  std::set<Symbol> allowed = mode == SharingMode::Theta ? theta_closure(d.problem.axioms, d.sigma) : d.sigma;
  for (const auto& f : functions_of(t))
    if (!allowed.count(Symbol{f, SymbolKind::Function})) {
      out.diagnostics = "candidate " + to_string(t) + " uses function '" + f + "' outside the allowed signature";
      return out;
    }
  for (const auto& c : constants_of(t))
    if (!allowed.count(Symbol{c, SymbolKind::Constant})) {
      out.diagnostics = "candidate " + to_string(t) + " uses constant '" + c + "' outside the allowed signature";
      return out;
    }

  // the undoubled theory: A with K, no primed axioms
  std::set<std::string> primed;
  for (const auto& [o, p] : d.functions) primed.insert(p);
  Problem single;
  single.a = d.problem.a;
  for (const auto& f : d.problem.axioms.functions)
    if (!primed.count(f)) single.axioms.functions.insert(f);
  for (const auto& i : d.problem.axioms.inclusions)
    if (!primed.count(i.f) && !primed.count(i.g)) single.axioms.inclusions.push_back(i);
  for (const auto& c : d.problem.axioms.compositions)
    if (!primed.count(c.f) && !primed.count(c.g) && !primed.count(c.h)) single.axioms.compositions.push_back(c);
  Term a = Term::constant(d.target);
  for (const Atom& claim : {Atom::leq(a, t), Atom::leq(t, a)}) {
    Problem c = single;
    c.goal = claim;
    if (!locality::entails(c)) {
      out.diagnostics = "candidate " + to_string(t) + " fails " + to_string(claim);
      return out;
    }
  }
  out.found = true;
  out.term = t;
  return out;
}

inline Definition explicit_definition(const std::vector<Literal>& a, const AxiomSet& k, const std::set<Symbol>& sigma,
                                      const std::string& target, SharingMode mode = SharingMode::Theta) {
  return explicit_definition(double_signature(a, k, sigma, target), mode);
}

// ---------------------------------------------------------------------------
// Model-based refutation

inline constexpr std::size_t kEnumerationLimit = 200000;

/// All terms over the given symbols up to `depth`: depth 0 holds the
/// constants; depth d+1 adds f(t) and s & t for s, t of depth at most d.
inline std::vector<Term> enumerate_terms(const std::vector<std::string>& constants,
                                         const std::vector<std::string>& functions, int depth) {
  std::set<Term> all;
  for (const auto& c : constants) all.insert(Term::constant(c));
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> prev(all.begin(), all.end());
    std::set<Term> next = all;
    for (const auto& t : prev)
      for (const auto& f : functions) next.insert(Term::app(f, t));
    for (std::size_t i = 0; i < prev.size(); ++i)
      for (std::size_t j = i + 1; j < prev.size(); ++j) {
        next.insert(mk_meet({prev[i], prev[j]}));
        if (next.size() > kEnumerationLimit) throw LimitError("term enumeration exceeds " + std::to_string(kEnumerationLimit) + " terms");
      }
    all = std::move(next);
  }
  return {all.begin(), all.end()};
}

struct Refutation {
  bool refuted = true;  ///< no enumerated term evaluates to the target's value
  std::size_t terms = 0;
  std::string target_value;
  std::map<std::string, std::size_t> value_counts;  ///< element -> number of terms evaluating to it
  std::optional<Term> witness;                      ///< first term hitting the target, when not refuted
};

/// Evaluates every term over `sigma` up to `depth` in `m` and compares with the target.
inline Refutation refute_in_model(const slat::FiniteModel& m, const std::set<Symbol>& sigma, const std::string& target,
                                  int depth) {
  std::vector<std::string> cs, fs;
  for (const auto& s : sigma) (s.kind == SymbolKind::Constant ? cs : fs).push_back(s.name);
  Refutation r;
  int goal = slat::eval_term(m, Term::constant(target));
  r.target_value = m.carrier[goal];
  for (const auto& t : enumerate_terms(cs, fs, depth)) {
    int v = slat::eval_term(m, t);
    ++r.value_counts[m.carrier[v]];
    ++r.terms;
    if (v == goal && r.refuted) {
      r.refuted = false;
      r.witness = t;
    }
  }
  return r;
}

}  // namespace slint::beth
