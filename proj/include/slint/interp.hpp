#pragma once

// Interpolation for SLat with monotone operators and inclusion/composition
// axioms.  Forward chaining runs as in `decide`; every fired instance whose
// constants span both local vocabularies is split through a shared
// intermediate term t and a fresh shared name for f(t).  At the end the
// lemma's intermediate term over the goal's side is unfolded and re-verified.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slint/errors.hpp"
#include "slint/locality.hpp"
#include "slint/sharing.hpp"
#include "slint/slat.hpp"
#include "slint/terms.hpp"

namespace slint::interp {

using locality::Instance;
using locality::PurifiedProblem;

struct Split {
  std::size_t instance = 0;
  GroundHornClause original;
  Term separator;  ///< t, over shared constants and names
  std::string name;  ///< fresh shared constant for f(t)
  Side premise_side = Side::A;
  GroundHornClause premise_part;  ///< x <= t -> f(x) <= u, conclusion on the premise side
  GroundHornClause other_part;    ///< t <= S -> u <= g(y), conclusion on the other side
};

/// Bookkeeping of the separated conjunction while chaining.
struct SeparationState {
  std::vector<Atom> side_a;
  std::vector<Atom> side_b;
  std::vector<Atom> delta;
  std::map<std::string, Term> names;  ///< separation names only
  std::map<std::string, Term> defs;   ///< purification and separation names
  ColorMap colors;
  SharingMap sharing;
  std::vector<Split> splits;

  std::vector<Atom>& side(Side s) { return s == Side::A ? side_a : side_b; }
  std::vector<Atom> joint() const {
    auto out = side_a;
    out.insert(out.end(), side_b.begin(), side_b.end());
    return out;
  }
  Color color(const std::string& c) const {
    auto it = colors.find(Symbol{c, SymbolKind::Constant});
    if (it == colors.end()) throw InternalError("constant '" + c + "' has no color");
    return it->second;
  }
  std::set<Term> candidates() const {
    std::set<Term> out;
    for (const auto& [sym, col] : colors)
      if (sym.kind == SymbolKind::Constant && col == Color::Shared) out.insert(Term::constant(sym.name));
    return out;
  }
};

namespace detail {

/// Local colors present among `constants`: bit 1 = A, bit 2 = B.
inline int local_mask(const SeparationState& st, const std::vector<std::string>& constants) {
  int m = 0;
  for (const auto& c : constants) {
    Color col = st.color(c);
    if (col == Color::ALocal) m |= 1;
    if (col == Color::BLocal) m |= 2;
  }
  return m;
}

inline std::vector<std::string> clause_constants(const GroundHornClause& c) {
  std::set<std::string> out;
  for (const auto& p : c.premises) {
    collect_constants(p.lhs, out);
    collect_constants(p.rhs, out);
  }
  collect_constants(c.conclusion.lhs, out);
  collect_constants(c.conclusion.rhs, out);
  return {out.begin(), out.end()};
}

inline std::string separation_name(const std::string& fn, const Term& t) {
  if (t.is_const()) return locality::flat_name(fn, t.name());
  std::string s = fn + ".[";
  for (std::size_t i = 0; i < t.args().size(); ++i) s += (i ? "&" : "") + to_string(t.args()[i]);
  return s + "]";
}

}  // namespace detail

inline bool is_mixed(const GroundHornClause& c, const SeparationState& st) {
  return detail::local_mask(st, detail::clause_constants(c)) == 3;
}

/// Replace a mixed instance by a Mon instance on the premise side and an
/// instance of the same schema on the other side, joined by a fresh shared
/// name for f(t).  Both conclusions are added to their sides and to delta.
inline std::pair<GroundHornClause, GroundHornClause> split_mixed(std::size_t index, const Instance& inst,
                                                                 SeparationState& st) {
  const std::string fx = locality::flat_name(inst.f, inst.x);
  const std::string gy = locality::flat_name(inst.g, inst.y);
  const std::string s = inst.s.empty() ? inst.y : locality::flat_name(inst.s, inst.y);
  int left = detail::local_mask(st, {inst.x, fx});
  int right = detail::local_mask(st, {s, gy});
  if ((left != 1 && left != 2) || (right != 1 && right != 2) || left == right)
    throw NoSharedWitness("cannot separate " + to_string(inst.clause) + ": a side of the instance is itself mixed");
  const Side p = left == 1 ? Side::A : Side::B;
  if (!st.sharing.shares(inst.f))
    throw NoSharedWitness("cannot separate " + to_string(inst.clause) + ": function '" + inst.f + "' is not shared");

  const Term x = Term::constant(inst.x), S = Term::constant(s);
  Term t = slat::intermediate_term(st.side(p), st.joint(), x, S, st.candidates());
  for (const auto& c : constants_of(t))
    if (st.color(c) != Color::Shared) throw InternalError("separator " + to_string(t) + " is not shared");

  const std::string u = detail::separation_name(inst.f, t);
  st.colors[Symbol{u, SymbolKind::Constant}] = Color::Shared;
  st.defs.insert_or_assign(u, Term::app(inst.f, t));
  st.names.insert_or_assign(u, Term::app(inst.f, t));
  const Term U = Term::constant(u);

  GroundHornClause cp{{Atom::leq(x, t)}, Atom::leq(Term::constant(fx), U), Provenance{"Mon(" + inst.f + ")", {{"x", x}, {"y", t}}}};
  GroundHornClause cq{{Atom::leq(t, S)}, Atom::leq(U, Term::constant(gy)), inst.clause.provenance};
  if (!cq.provenance.substitution.empty()) {
    for (auto& [var, val] : cq.provenance.substitution)
      if (val == x) val = t;
  }

  auto check = st.joint();
  check.push_back(cp.conclusion);
  check.push_back(cq.conclusion);
  if (!slat::entails_atom(check, inst.clause.conclusion))
    throw InternalError("split of " + to_string(inst.clause) + " does not recover its conclusion");

  st.side(p).push_back(cp.conclusion);
  st.side(other(p)).push_back(cq.conclusion);
  st.delta.push_back(cp.conclusion);
  st.delta.push_back(cq.conclusion);
  st.splits.push_back(Split{index, inst.clause, t, u, p, cp, cq});
  return {cp, cq};
}

inline Term unfold(const Term& t, const std::map<std::string, Term>& defs) { return locality::unfold_defs(t, defs); }

struct Certificate {
  Atom claim;
  bool verified = false;
  locality::DecideResult run;
};

struct InterpolationResult {
  Term term;  ///< fully unfolded
  Term raw;   ///< before unfolding, over shared constants and names
  std::optional<Certificate> lower;  ///< goal.lhs <= term
  std::optional<Certificate> upper;  ///< term <= goal.rhs
  SharingMap sharing;
  Side lhs_side = Side::A;
  std::vector<Split> splits;
  locality::DecideResult run;
  PurifiedProblem reduced;
  std::map<std::string, Term> names;
};

struct InterpolateOptions {
  SharingMode sharing = SharingMode::Theta;
  bool verify = true;
};

/// Every function of `t` is shared and every constant is a shared constant.
inline bool within_shared_signature(const Term& t, const SharingMap& sh) {
  for (const auto& f : functions_of(t))
    if (!sh.shares(f)) return false;
  for (const auto& c : constants_of(t))
    if (!sh.shared_constants.count(c)) return false;
  return true;
}

inline InterpolationResult interpolate(const Problem& prob, const InterpolateOptions& opts = {}) {
  const Atom& goal = prob.goal_atom();
  if (goal.kind != AtomKind::Leq) throw UsageError("interpolation needs a goal of the form s <= t");
  PurifiedProblem red = locality::reduce(prob, locality::ReduceOptions{opts.sharing, {}});

  SeparationState st;
  st.side_a = red.a0;
  st.side_b = red.b0;
  st.defs = red.defs;
  st.colors = red.colors;
  st.sharing = red.sharing;

  auto hook = [&](std::size_t i, const Instance& inst, slat::HornContext&) -> std::vector<Atom> {
    if (!is_mixed(inst.clause, st)) {
      int m = detail::local_mask(st, detail::clause_constants(inst.clause));
      st.side(m == 2 ? Side::B : Side::A).push_back(inst.clause.conclusion);
      st.delta.push_back(inst.clause.conclusion);
      return {inst.clause.conclusion};
    }
    auto [cp, cq] = split_mixed(i, inst, st);
    return {cp.conclusion, cq.conclusion};
  };
  auto run = locality::chain(red, locality::identity_order(red.instances.size()), hook);
  if (!run.entailed) throw NotEntailed("goal " + to_string(goal) + " is not entailed");
  if (run.by_inconsistency)
    throw NoSharedWitness("the input is jointly inconsistent; no interpolating term is constructed");

  Term raw = slat::intermediate_term(st.side(red.lhs_side), st.joint(), red.goal.lhs, red.goal.rhs, st.candidates());
  Term term = unfold(raw, st.defs);
  if (!within_shared_signature(term, red.sharing))
    throw VerificationFailed("interpolant " + to_string(term) + " leaves the shared signature");

  InterpolationResult res{term, raw, std::nullopt, std::nullopt, red.sharing, red.lhs_side, st.splits, run, red,
                          st.names};
  if (opts.verify) {
    auto certify = [&](Atom claim) {
      Problem q = prob;
      q.goal = claim;
      auto r = locality::decide(q, locality::ReduceOptions{opts.sharing, {}});
      if (!r.entailed || r.by_inconsistency)
        throw VerificationFailed("certificate " + to_string(claim) + " does not hold");
      return Certificate{claim, true, r};
    };
    res.lower = certify(Atom::leq(goal.lhs, term));
    res.upper = certify(Atom::leq(term, goal.rhs));
  }
  return res;
}

}  // namespace slint::interp
