#pragma once

// Hierarchical reduction of SLat + Mon + K entailment to ground SLat:
// flatten and purify the input, close the flat terms under Psi, instantiate
// the axiom schemas over the closed set and forward-chain the instances.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slint/axioms.hpp"
#include "slint/errors.hpp"
#include "slint/sharing.hpp"
#include "slint/slat.hpp"
#include "slint/terms.hpp"

namespace slint {

enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }
inline Color local_color(Side s) { return s == Side::A ? Color::ALocal : Color::BLocal; }

/// A two-sided problem as read from a file: labelled literals, axioms and a goal.
struct Problem {
  std::vector<Literal> a;
  std::vector<Literal> b;
  std::vector<std::string> a_labels;
  std::vector<std::string> b_labels;
  AxiomSet axioms;
  std::optional<Atom> goal;

  const Atom& goal_atom() const {
    if (!goal) throw UsageError("problem has no goal");
    return *goal;
  }

  std::string a_label(std::size_t i) const { return i < a_labels.size() ? a_labels[i] : "A" + std::to_string(i + 1); }
  std::string b_label(std::size_t i) const { return i < b_labels.size() ? b_labels[i] : "B" + std::to_string(i + 1); }
};

namespace locality {

struct FlatTerm {
  std::string fn;
  std::string arg;

  auto operator<=>(const FlatTerm&) const = default;
};

using FlatTermSet = std::set<FlatTerm>;

/// Name of the constant standing for f(c).  '.' never occurs in user identifiers.
inline std::string flat_name(const std::string& fn, const std::string& arg) { return fn + "." + arg; }

/// Ground instance of Mon, an inclusion or a composition.  All three share one
/// shape: premise x <= S and conclusion name(f,x) <= name(g,y), where S is y
/// when `s` is empty and name(s,y) otherwise.  Unit clauses have no premise.
struct Instance {
  GroundHornClause clause;
  std::string x;
  std::string s;
  std::string y;
  std::string f;
  std::string g;
};

struct PurifiedProblem {
  std::map<std::string, Term> defs;  ///< fresh constant -> the term it names (f(c) or a meet)
  std::vector<Atom> a0;
  std::vector<Atom> b0;
  std::vector<Literal> negatives;
  std::vector<Instance> instances;
  Atom goal;       ///< over constants only
  Term goal_lhs;   ///< goal sides as given
  Term goal_rhs;
  ColorMap colors;
  Side lhs_side = Side::A;
  SharingMap sharing;
  FlatTermSet terms;  ///< Psi-closed
  AxiomSet axioms;

  Color color(const std::string& constant) const {
    auto it = colors.find(Symbol{constant, SymbolKind::Constant});
    if (it == colors.end()) throw InternalError("constant '" + constant + "' has no color");
    return it->second;
  }
  Color function_color(const std::string& fn) const {
    auto it = colors.find(Symbol{fn, SymbolKind::Function});
    if (it == colors.end()) throw InternalError("function '" + fn + "' has no color");
    return it->second;
  }
  std::vector<Atom> positives() const {
    auto out = a0;
    out.insert(out.end(), b0.begin(), b0.end());
    return out;
  }
};

struct ReduceOptions {
  SharingMode sharing = SharingMode::Theta;
  std::vector<Term> extra_terms;  ///< more ground terms whose flat parts join the instantiation set
};

// ---------------------------------------------------------------------------
// Psi closure and instantiation

inline FlatTermSet psi_closure(FlatTermSet t, const AxiomSet& k) {
  bool changed = true;
  auto link = [&](const std::string& p, const std::string& q) {
    std::vector<FlatTerm> add;
    for (const auto& ft : t) {
      if (ft.fn == p) add.push_back(FlatTerm{q, ft.arg});
      if (ft.fn == q) add.push_back(FlatTerm{p, ft.arg});
    }
    for (auto& ft : add) changed |= t.insert(std::move(ft)).second;
  };
  while (changed) {
    changed = false;
    for (const auto& i : k.inclusions) link(i.f, i.g);
    for (const auto& c : k.compositions) link(c.g, c.h);
  }
  return t;
}

namespace detail {

inline std::map<std::string, std::vector<std::string>> args_by_function(const FlatTermSet& t) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& ft : t) out[ft.fn].push_back(ft.arg);
  return out;
}

inline Term name_term(const std::string& fn, const std::string& arg) { return Term::constant(flat_name(fn, arg)); }

}  // namespace detail

/// Mon instances for every function (pairs c != d), then inclusions and
/// compositions in axiom order.  Instances with a syntactically reflexive
/// conclusion are dropped.  Congruence instances are not generated: the two
/// Mon instances of a pair already give them.
inline std::vector<Instance> instantiate(const AxiomSet& k, const FlatTermSet& t) {
  if (psi_closure(t, k) != t) throw UsageError("instantiate: term set is not Psi-closed");
  auto args = detail::args_by_function(t);
  auto has = [&](const std::string& f, const std::string& c) { return t.count(FlatTerm{f, c}) > 0; };
  auto C = [](const std::string& c) { return Term::constant(c); };
  std::vector<Instance> out;

  std::set<std::string> fns(k.functions.begin(), k.functions.end());
  for (const auto& [f, _] : args) fns.insert(f);
  for (const auto& f : fns) {
    auto it = args.find(f);
    if (it == args.end()) continue;
    for (const auto& c : it->second)
      for (const auto& d : it->second) {
        if (c == d) continue;
        GroundHornClause cl{{Atom::leq(C(c), C(d))},
                            Atom::leq(detail::name_term(f, c), detail::name_term(f, d)),
                            Provenance{"Mon(" + f + ")", {{"x", C(c)}, {"y", C(d)}}}};
        out.push_back(Instance{std::move(cl), c, "", d, f, f});
      }
  }
  for (const auto& inc : k.inclusions) {
    if (inc.f == inc.g) continue;
    auto it = args.find(inc.f);
    if (it == args.end()) continue;
    for (const auto& c : it->second) {
      if (!has(inc.g, c)) continue;
      std::string schema = (inc.label.empty() ? "" : inc.label + " ") + "inclusion(" + inc.f + "," + inc.g + ")";
      GroundHornClause cl{{}, Atom::leq(detail::name_term(inc.f, c), detail::name_term(inc.g, c)),
                          Provenance{schema, {{"x", C(c)}}}};
      out.push_back(Instance{std::move(cl), c, "", c, inc.f, inc.g});
    }
  }
  for (const auto& comp : k.compositions) {
    auto fi = args.find(comp.f);
    auto gi = args.find(comp.g);
    if (fi == args.end() || gi == args.end()) continue;
    std::string schema =
        (comp.label.empty() ? "" : comp.label + " ") + "composition(" + comp.f + "," + comp.g + "," + comp.h + ")";
    for (const auto& d : fi->second)
      for (const auto& c : gi->second) {
        if (!has(comp.h, c)) continue;
        if (comp.f == comp.h && c == d) continue;
        GroundHornClause cl{{Atom::leq(C(d), detail::name_term(comp.g, c))},
                            Atom::leq(detail::name_term(comp.f, d), detail::name_term(comp.h, c)),
                            Provenance{schema, {{"x", C(c)}, {"y", C(d)}}}};
        out.push_back(Instance{std::move(cl), d, comp.g, c, comp.f, comp.h});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flattening, purification, coloring

namespace detail {

inline Color combine(Color x, Color y) {
  if (x == Color::Shared) return y;
  if (y == Color::Shared) return x;
  return x == y ? x : Color::ALocal;  // a meet over both local vocabularies; cannot arise from one side
}

/// Color of the name for f(c).
inline Color name_color(Color fn, Color arg) {
  if (fn == Color::Shared) return arg;
  if (arg == Color::Shared) return fn;
  return fn;
}

class Purifier {
 public:
  Purifier(ColorMap& colors, std::map<std::string, Term>& defs, FlatTermSet& flat)
      : colors_(colors), defs_(defs), flat_(flat) {}

  /// Purified form of `t` (constants and meets only); side atoms go to `out`.
  Term purify(const Term& t, Side side, std::vector<Atom>& out) {
    switch (t.kind()) {
      case TermKind::Const:
        return t;
      case TermKind::Meet: {
        std::vector<Term> xs;
        for (const auto& a : t.args()) xs.push_back(purify(a, side, out));
        return mk_meet(xs);
      }
      case TermKind::App: {
        Term arg = purify(t.arg(), side, out);
        if (!arg.is_const()) arg = name_meet(arg, side, out);
        flat_.insert(FlatTerm{t.name(), arg.name()});
        return Term::constant(name_flat(t.name(), arg.name()));
      }
    }
    return t;
  }

  std::string name_flat(const std::string& fn, const std::string& arg) {
    std::string n = flat_name(fn, arg);
    if (!defs_.count(n)) {
      defs_.emplace(n, Term::app(fn, Term::constant(arg)));
      colors_[Symbol{n, SymbolKind::Constant}] = name_color(color_of(fn, SymbolKind::Function), color_of(arg));
    }
    return n;
  }

  Color color_of(const std::string& name, SymbolKind kind = SymbolKind::Constant) const {
    auto it = colors_.find(Symbol{name, kind});
    if (it == colors_.end()) throw InternalError("symbol '" + name + "' has no color");
    return it->second;
  }

 private:
  Term name_meet(const Term& m, Side side, std::vector<Atom>& out) {
    auto it = meets_.find(m);
    std::string n;
    if (it == meets_.end()) {
      n = ".m" + std::to_string(meets_.size() + 1);
      meets_.emplace(m, n);
      defs_.emplace(n, m);
      Color c = Color::Shared;
      for (const auto& x : constants_of(m)) c = combine(c, color_of(x));
      colors_[Symbol{n, SymbolKind::Constant}] = c;
    } else {
      n = it->second;
    }
    if (defined_on_.insert({n, side}).second) {
      out.push_back(Atom::leq(Term::constant(n), m));
      out.push_back(Atom::leq(m, Term::constant(n)));
    }
    return Term::constant(n);
  }

  ColorMap& colors_;
  std::map<std::string, Term>& defs_;
  FlatTermSet& flat_;
  std::map<Term, std::string> meets_;
  std::set<std::pair<std::string, Side>> defined_on_;
};

inline void add_symbols(const Term& t, std::set<Symbol>& out) {
  for (auto& c : constants_of(t)) out.insert(Symbol{c, SymbolKind::Constant});
  for (auto& f : functions_of(t)) out.insert(Symbol{f, SymbolKind::Function});
}

inline bool has_local(const Term& t, const std::set<Symbol>& mine, const std::set<Symbol>& theirs) {
  std::set<Symbol> s;
  add_symbols(t, s);
  for (const auto& x : s)
    if (mine.count(x) && !theirs.count(x)) return true;
  return false;
}

}  // namespace detail

/// Flatten, purify, color, close and instantiate.  The goal's left-hand side
/// belongs to A when it mentions A-local symbols; it belongs to B when it
/// mentions only B-local ones, or none while the right-hand side is purely
/// A-local.  Goal symbols then join the vocabulary of their side before coloring.
inline PurifiedProblem reduce(const Problem& prob, const ReduceOptions& opts = {}) {
  const Atom& goal = prob.goal_atom();
  prob.axioms.validate();
  std::set<Symbol> sa = symbols_of(prob.a);
  std::set<Symbol> sb = symbols_of(prob.b);
  {
    std::set<Symbol> all = sa;
    all.insert(sb.begin(), sb.end());
    detail::add_symbols(goal.lhs, all);
    detail::add_symbols(goal.rhs, all);
    for (const auto& s : all)
      if (s.kind == SymbolKind::Function && !prob.axioms.functions.count(s.name))
        throw UsageError("undeclared function '" + s.name + "'");
  }

  Side lhs_side = Side::A;
  if (!detail::has_local(goal.lhs, sa, sb) &&
      (detail::has_local(goal.lhs, sb, sa) ||
       (detail::has_local(goal.rhs, sa, sb) && !detail::has_local(goal.rhs, sb, sa))))
    lhs_side = Side::B;
  detail::add_symbols(goal.lhs, lhs_side == Side::A ? sa : sb);
  detail::add_symbols(goal.rhs, lhs_side == Side::A ? sb : sa);

  ColorMap colors;
  for (const auto& s : sa) colors[s] = sb.count(s) ? Color::Shared : Color::ALocal;
  for (const auto& s : sb)
    if (!sa.count(s)) colors[s] = Color::BLocal;

  std::set<std::string> fa, fb;
  for (const auto& s : sa)
    if (s.kind == SymbolKind::Function) fa.insert(s.name);
  for (const auto& s : sb)
    if (s.kind == SymbolKind::Function) fb.insert(s.name);
  SharingMap sharing = theta_sharing(prob.axioms, fa, fb, opts.sharing);
  for (const auto& [sym, col] : colors)
    if (sym.kind == SymbolKind::Constant && col == Color::Shared) sharing.shared_constants.insert(sym.name);
  std::set<std::string> all_fns(prob.axioms.functions.begin(), prob.axioms.functions.end());
  for (const auto& f : all_fns) {
    Color& col = colors[Symbol{f, SymbolKind::Function}];
    if (sharing.shares(f)) col = Color::Shared;
    else if (fa.count(f)) col = Color::ALocal;
    else if (fb.count(f)) col = Color::BLocal;
    else col = sharing.closure_b.count(f) && !sharing.closure_a.count(f) ? Color::BLocal : Color::ALocal;
  }

  std::map<std::string, Term> defs;
  FlatTermSet flat;
  detail::Purifier pur(colors, defs, flat);
  std::vector<Atom> a0, b0;
  std::vector<Literal> negatives;
  auto take = [&](const std::vector<Literal>& lits, Side side) {
    auto& out = side == Side::A ? a0 : b0;
    for (const auto& l : lits) {
      Term lhs = pur.purify(l.atom.lhs, side, out);
      Term rhs = pur.purify(l.atom.rhs, side, out);
      if (!l.positive) {
        negatives.push_back(Literal{Atom{l.atom.kind, lhs, rhs}, false});
        continue;
      }
      out.push_back(Atom::leq(lhs, rhs));
      if (l.atom.kind == AtomKind::Eq) out.push_back(Atom::leq(rhs, lhs));
    }
  };
  take(prob.a, Side::A);
  take(prob.b, Side::B);

  auto& lhs_atoms = lhs_side == Side::A ? a0 : b0;
  auto& rhs_atoms = lhs_side == Side::A ? b0 : a0;
  auto bind = [&](const Term& t, Side side, std::vector<Atom>& out, const char* name) {
    Term p = pur.purify(t, side, out);
    if (p.is_const()) return p;
    Term c = Term::constant(name);
    colors[Symbol{name, SymbolKind::Constant}] = local_color(side);
    out.push_back(Atom::leq(c, p));
    out.push_back(Atom::leq(p, c));
    return c;
  };
  Term glhs = bind(goal.lhs, lhs_side, lhs_atoms, ".lhs");
  Term grhs = bind(goal.rhs, other(lhs_side), rhs_atoms, ".rhs");
  for (const auto& t : opts.extra_terms) {
    std::set<Symbol> syms;
    detail::add_symbols(t, syms);
    for (const auto& s : syms)
      if (!colors.count(s)) colors[s] = Color::ALocal;
    pur.purify(t, Side::A, a0);
  }

  FlatTermSet closed = psi_closure(flat, prob.axioms);
  for (const auto& ft : closed) pur.name_flat(ft.fn, ft.arg);

  PurifiedProblem out{std::move(defs),
                      std::move(a0),
                      std::move(b0),
                      std::move(negatives),
                      instantiate(prob.axioms, closed),
                      Atom{goal.kind, glhs, grhs},
                      goal.lhs,
                      goal.rhs,
                      std::move(colors),
                      lhs_side,
                      std::move(sharing),
                      std::move(closed),
                      prob.axioms};
  return out;
}

inline PurifiedProblem reduce(const std::vector<Literal>& a, const std::vector<Literal>& b, const AxiomSet& k,
                              const Atom& goal, const ReduceOptions& opts = {}) {
  Problem p{a, b, {}, {}, k, goal};
  return reduce(p, opts);
}

/// Replace every fresh constant by the term it names, recursively.
inline Term unfold_defs(const Term& t, const std::map<std::string, Term>& defs) {
  std::set<std::string> active;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    return substitute_constants(u, [&](const std::string& c) -> std::optional<Term> {
      auto it = defs.find(c);
      if (it == defs.end()) return std::nullopt;
      if (!active.insert(c).second) throw InternalError("cyclic definition through '" + c + "'");
      Term r = go(it->second);
      active.erase(c);
      return r;
    });
  };
  return go(t);
}

// ---------------------------------------------------------------------------
// Forward chaining

struct TraceStep {
  std::size_t instance = 0;
  int round = 0;
  std::vector<Atom> added;
};

struct DecideResult {
  bool entailed = false;
  bool by_inconsistency = false;
  int rounds = 0;
  std::vector<TraceStep> trace;
};

/// Called for each instance that fires; returns the atoms to add (default: its conclusion).
using FireHook = std::function<std::vector<Atom>(std::size_t index, const Instance& inst, slat::HornContext& ctx)>;

/// Round-based forward chaining.  A round collects every unfired instance whose
/// premises hold at the start of the round and fires them in `order`,
/// skipping those whose conclusion already holds.  The goal and the negative
/// literals are checked between rounds.
inline DecideResult chain(const PurifiedProblem& p, const std::vector<std::size_t>& order, const FireHook& hook = {}) {
  slat::HornContext ctx(p.positives());
  for (const auto& inst : p.instances) {
    for (const auto& pr : inst.clause.premises) {
      ctx.add_term(pr.lhs);
      ctx.add_term(pr.rhs);
    }
    ctx.add_term(inst.clause.conclusion.lhs);
    ctx.add_term(inst.clause.conclusion.rhs);
  }
  ctx.add_term(p.goal.lhs);
  ctx.add_term(p.goal.rhs);

  DecideResult res;
  std::vector<bool> fired(p.instances.size(), false);
  for (;;) {
    if (ctx.entails(p.goal)) {
      res.entailed = true;
      return res;
    }
    for (const auto& n : p.negatives)
      if (slat::refutes(ctx, n)) {
        res.entailed = true;
        res.by_inconsistency = true;
        return res;
      }
    ++res.rounds;
    std::map<Term, std::vector<bool>> cache;
    auto holds = [&](const Atom& a) {
      auto it = cache.find(a.lhs);
      if (it == cache.end()) it = cache.emplace(a.lhs, ctx.closure(a.lhs)).first;
      return it->second[*ctx.var_of(a.rhs)];
    };
    std::vector<std::size_t> ready;
    for (std::size_t i : order) {
      if (fired[i]) continue;
      const auto& prem = p.instances[i].clause.premises;
      if (std::all_of(prem.begin(), prem.end(), holds)) ready.push_back(i);
    }
    if (ready.empty()) return res;
    for (std::size_t i : ready) {
      fired[i] = true;
      const auto& inst = p.instances[i];
      if (ctx.entails(inst.clause.conclusion)) continue;
      std::vector<Atom> add = hook ? hook(i, inst, ctx) : std::vector<Atom>{inst.clause.conclusion};
      ctx.add_atoms(add);
      res.trace.push_back(TraceStep{i, res.rounds, std::move(add)});
    }
  }
}

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline DecideResult decide(const PurifiedProblem& p) { return chain(p, identity_order(p.instances.size())); }

inline DecideResult decide(const Problem& prob, const ReduceOptions& opts = {}) { return decide(reduce(prob, opts)); }

inline bool entails(const Problem& prob) { return decide(prob).entailed; }

// ---------------------------------------------------------------------------
// Justification

struct Justification {
  Problem problem;                  ///< the minimal sub-problem
  std::vector<std::string> labels;  ///< its labels in input order
};

/// Deletion-based minimization.  Candidates are tried from the last input item
/// backwards (B after A, axioms last), so earlier items are preferred.
inline Justification minimize_axioms(const Problem& prob) {
  if (!entails(prob)) throw UsageError("cannot justify: the goal is not entailed");
  const std::size_t na = prob.a.size(), nb = prob.b.size(), ni = prob.axioms.inclusions.size();
  const std::size_t n = na + nb + ni + prob.axioms.compositions.size();
  std::vector<bool> keep(n, true);
  auto build = [&] {
    Problem q;
    q.goal = prob.goal;
    q.axioms.functions = prob.axioms.functions;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      if (i < na) {
        q.a.push_back(prob.a[i]);
        q.a_labels.push_back(prob.a_label(i));
      } else if (i < na + nb) {
        q.b.push_back(prob.b[i - na]);
        q.b_labels.push_back(prob.b_label(i - na));
      } else if (i < na + nb + ni) {
        q.axioms.inclusions.push_back(prob.axioms.inclusions[i - na - nb]);
      } else {
        q.axioms.compositions.push_back(prob.axioms.compositions[i - na - nb - ni]);
      }
    }
    return q;
  };
  for (std::size_t k = n; k-- > 0;) {
    keep[k] = false;
    if (!entails(build())) keep[k] = true;
  }
  Justification out{build(), {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    if (i < na) out.labels.push_back(prob.a_label(i));
    else if (i < na + nb) out.labels.push_back(prob.b_label(i - na));
    else if (i < na + nb + ni) out.labels.push_back(prob.axioms.inclusions[i - na - nb].label);
    else out.labels.push_back(prob.axioms.compositions[i - na - nb - ni].label);
  }
  return out;
}

}  // namespace locality
}  // namespace slint
