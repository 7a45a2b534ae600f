#pragma once

// Ground reasoning in the theory of semilattices.  Every semilattice embeds
// into a power of the two-element semilattice, so ground Horn entailment
// reduces to propositional Horn reasoning over one variable per subterm:
//   P(e1 & e2) <-> P(e1) /\ P(e2),   e1 <= e2  ~>  P(e1) -> P(e2).
// Entailment of s <= t is then "P(t) is forced by unit propagation from P(s)".

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "slint/axioms.hpp"
#include "slint/errors.hpp"
#include "slint/terms.hpp"

namespace slint::slat {

struct PropClause {
  std::vector<Term> premises;
  Term conclusion;

  auto operator<=>(const PropClause&) const = default;
};

/// Readable form of the propositional encoding (one variable per term).
struct PropHornProblem {
  std::vector<Term> variables;
  std::vector<PropClause> clauses;
};

/// Incremental propositional Horn encoding with entailment queries.
/// Application terms are opaque: they get a variable but no defining clauses.
class HornContext {
 public:
  HornContext() = default;
  explicit HornContext(std::span<const Atom> atoms) {
    for (const auto& a : atoms) add_atom(a);
  }

  /// Register `t` and all its subterms; returns the variable of `t`.
  int add_term(const Term& t) {
    if (auto it = index_.find(t); it != index_.end()) return it->second;
    for (const auto& a : t.args()) add_term(a);
    int v = new_var(t);
    if (t.is_meet()) {
      const auto& xs = t.args();
      int prev = index_.at(xs[0]);
      for (std::size_t k = 2; k <= xs.size(); ++k) {
        int m;
        if (k == xs.size()) {
          m = v;
        } else {
          Term prefix = mk_meet(std::span<const Term>(xs.data(), k));
          auto it = index_.find(prefix);
          if (it != index_.end()) {
            prev = it->second;
            continue;
          }
          m = new_var(prefix);
        }
        int x = index_.at(xs[k - 1]);
        add_clause({m}, prev);
        add_clause({m}, x);
        add_clause({prev, x}, m);
        prev = m;
      }
    }
    return v;
  }

  void add_atom(const Atom& a) {
    int l = add_term(a.lhs);
    int r = add_term(a.rhs);
    add_clause({l}, r);
    if (a.kind == AtomKind::Eq) add_clause({r}, l);
  }

  void add_atoms(std::span<const Atom> atoms) {
    for (const auto& a : atoms) add_atom(a);
  }

  /// All variables forced true by unit propagation from P(s).
  std::vector<bool> closure(const Term& s) {
    int start = add_term(s);
    std::vector<bool> on(vars_.size(), false);
    std::vector<std::size_t> missing(clauses_.size());
    for (std::size_t i = 0; i < clauses_.size(); ++i) missing[i] = clauses_[i].body.size();
    std::deque<int> queue{start};
    on[start] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (std::size_t ci : watch_[v]) {
        if (--missing[ci] != 0) continue;
        int h = clauses_[ci].head;
        if (!on[h]) {
          on[h] = true;
          queue.push_back(h);
        }
      }
    }
    return on;
  }

  bool entails(const Term& s, const Term& t) {
    if (s == t) return true;
    int tv = add_term(t);
    return closure(s)[tv];
  }

  bool entails(const Atom& goal) {
    if (!entails(goal.lhs, goal.rhs)) return false;
    return goal.kind == AtomKind::Leq || entails(goal.rhs, goal.lhs);
  }

  std::optional<int> var_of(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  PropHornProblem problem() const {
    PropHornProblem p;
    p.variables = vars_;
    for (const auto& c : clauses_) {
      PropClause pc{{}, vars_[c.head]};
      for (int b : c.body) pc.premises.push_back(vars_[b]);
      p.clauses.push_back(std::move(pc));
    }
    return p;
  }

 private:
  struct Clause {
    std::vector<int> body;
    int head;
  };

  int new_var(const Term& t) {
    int v = static_cast<int>(vars_.size());
    vars_.push_back(t);
    index_.emplace(t, v);
    watch_.emplace_back();
    return v;
  }

  void add_clause(std::vector<int> body, int head) {
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    if (std::find(body.begin(), body.end(), head) != body.end()) return;  // tautology
    std::size_t ci = clauses_.size();
    for (int b : body) watch_[b].push_back(ci);
    clauses_.push_back(Clause{std::move(body), head});
  }

  std::map<Term, int> index_;
  std::vector<Term> vars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::size_t>> watch_;
};

/// Propositional encoding of `atoms` plus extra registered terms.
inline PropHornProblem encode(std::span<const Atom> atoms, std::span<const Term> extra = {}) {
  HornContext ctx(atoms);
  for (const auto& t : extra) ctx.add_term(t);
  return ctx.problem();
}

inline PropHornProblem encode(const std::vector<Atom>& atoms) {
  return encode(std::span<const Atom>(atoms));
}

inline bool entails_atom(std::span<const Atom> context, const Atom& goal) {
  HornContext ctx(context);
  return ctx.entails(goal);
}

inline bool entails_atom(const std::vector<Atom>& context, const Atom& goal) {
  return entails_atom(std::span<const Atom>(context), goal);
}

/// A negated Leq is refuted when its atom is entailed; a negated Eq when both halves are.
inline bool refutes(HornContext& ctx, const Literal& neg) { return ctx.entails(neg.atom); }

inline bool is_consistent(std::span<const Literal> literals) {
  std::vector<Atom> pos;
  for (const auto& l : literals)
    if (l.positive) pos.push_back(l.atom);
  HornContext ctx(pos);
  for (const auto& l : literals)
    if (!l.positive && refutes(ctx, l)) return false;
  return true;
}

inline bool is_consistent(const std::vector<Literal>& literals) {
  return is_consistent(std::span<const Literal>(literals));
}

/// Meet of every candidate e with side |= a <= e.  When `a` is itself a
/// candidate it is returned directly (the meet is equivalent to it).
/// Both interpolation claims are re-checked before returning:
///   side |= a <= t   and   joint |= t <= b.
inline Term intermediate_term(std::span<const Atom> side, std::span<const Atom> joint, const Term& a,
                              const Term& b, const std::set<Term>& candidates) {
  HornContext jctx(joint);
  if (!jctx.entails(a, b))
    throw NotEntailed("intermediate_term: " + to_string(a) + " <= " + to_string(b) + " is not entailed");
  HornContext sctx(side);
  std::optional<Term> t;
  if (candidates.count(a)) {
    t = a;
  } else {
    sctx.add_term(a);
    for (const auto& e : candidates) sctx.add_term(e);
    auto on = sctx.closure(a);
    std::vector<Term> chosen;
    for (const auto& e : candidates)
      if (on[*sctx.var_of(e)]) chosen.push_back(e);
    if (chosen.empty())
      throw NoSharedWitness("no shared term lies between " + to_string(a) + " and " + to_string(b));
    t = mk_meet(chosen);
  }
  if (!sctx.entails(a, *t) || !jctx.entails(*t, b))
    throw InternalError("intermediate term " + to_string(*t) + " failed its re-check");
  return *t;
}

inline Term intermediate_term(const std::vector<Atom>& side, const std::vector<Atom>& joint, const Term& a,
                              const Term& b, const std::set<Term>& candidates) {
  return intermediate_term(std::span<const Atom>(side), std::span<const Atom>(joint), a, b, candidates);
}

// ---------------------------------------------------------------------------
// Brute-force oracle over the two-element semilattice

inline constexpr std::size_t kBruteForceMaxConstants = 20;

/// Enumerates every assignment of constants to {0,1} (meet = min).
inline bool brute_force_entails(std::span<const Atom> context, const Atom& goal) {
  std::set<std::string> consts;
  auto scan = [&](const Term& t) {
    if (!functions_of(t).empty())
      throw UsageError("brute_force_entails: application term " + to_string(t) + " (purify first)");
    collect_constants(t, consts);
  };
  for (const auto& a : context) {
    scan(a.lhs);
    scan(a.rhs);
  }
  scan(goal.lhs);
  scan(goal.rhs);
  if (consts.size() > kBruteForceMaxConstants)
    throw LimitError("brute_force_entails: " + std::to_string(consts.size()) + " constants exceed the limit of " +
                     std::to_string(kBruteForceMaxConstants));
  std::map<std::string, std::size_t> bit;
  for (const auto& c : consts) bit.emplace(c, bit.size());

  auto eval = [&](auto&& self, const Term& t, std::uint32_t mask) -> bool {
    if (t.is_const()) return (mask >> bit.at(t.name())) & 1u;
    for (const auto& x : t.args())
      if (!self(self, x, mask)) return false;
    return true;
  };
  auto holds = [&](const Atom& a, std::uint32_t mask) {
    bool l = eval(eval, a.lhs, mask);
    bool r = eval(eval, a.rhs, mask);
    return a.kind == AtomKind::Leq ? (!l || r) : l == r;
  };
  const std::uint32_t n = std::uint32_t{1} << consts.size();
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    bool model = std::all_of(context.begin(), context.end(), [&](const Atom& a) { return holds(a, mask); });
    if (model && !holds(goal, mask)) return false;
  }
  return true;
}

inline bool brute_force_entails(const std::vector<Atom>& context, const Atom& goal) {
  return brute_force_entails(std::span<const Atom>(context), goal);
}

// ---------------------------------------------------------------------------
// Finite models

/// A finite semilattice with unary operations and constant bindings.
struct FiniteModel {
  std::vector<std::string> carrier;
  std::vector<std::vector<int>> meet;           ///< meet[x][y]
  std::map<std::string, std::vector<int>> funcs;  ///< f -> table over carrier
  std::map<std::string, int> consts;

  int element(const std::string& name) const {
    auto it = std::find(carrier.begin(), carrier.end(), name);
    if (it == carrier.end()) throw UsageError("unknown carrier element '" + name + "'");
    return static_cast<int>(it - carrier.begin());
  }
  bool leq(int x, int y) const { return meet[x][y] == x; }
  int size() const { return static_cast<int>(carrier.size()); }
};

inline int eval_term(const FiniteModel& m, const Term& t) {
  switch (t.kind()) {
    case TermKind::Const: {
      auto it = m.consts.find(t.name());
      if (it == m.consts.end()) throw UsageError("constant '" + t.name() + "' is not interpreted in the model");
      return it->second;
    }
    case TermKind::App: {
      auto it = m.funcs.find(t.name());
      if (it == m.funcs.end()) throw UsageError("function '" + t.name() + "' is not interpreted in the model");
      return it->second[eval_term(m, t.arg())];
    }
    case TermKind::Meet: {
      int v = eval_term(m, t.args().front());
      for (std::size_t i = 1; i < t.args().size(); ++i) v = m.meet[v][eval_term(m, t.args()[i])];
      return v;
    }
  }
  return -1;
}

inline bool holds(const FiniteModel& m, const Atom& a) {
  int l = eval_term(m, a.lhs);
  int r = eval_term(m, a.rhs);
  return a.kind == AtomKind::Leq ? m.leq(l, r) : l == r;
}

struct ModelCheck {
  std::string name;
  bool passed = true;
  std::string detail;  ///< first counterexample when failed
};

struct ModelReport {
  std::vector<ModelCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ModelCheck& c) { return c.passed; });
  }
  const ModelCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Full enumeration of the semilattice laws, monotonicity of every function,
/// every axiom of `axioms`, and every ground atom.
inline ModelReport check_finite_model(const FiniteModel& m, const AxiomSet& axioms, std::span<const Atom> atoms) {
  const int n = m.size();
  auto nm = [&](int x) { return m.carrier[x]; };
  if (static_cast<int>(m.meet.size()) != n) throw UsageError("meet table has wrong number of rows");
  for (const auto& row : m.meet)
    if (static_cast<int>(row.size()) != n) throw UsageError("meet table row has wrong length");
  for (const auto& [f, tab] : m.funcs)
    if (static_cast<int>(tab.size()) != n) throw UsageError("table for '" + f + "' has wrong length");
  for (const auto& fn : axioms.functions)
    if (!m.funcs.count(fn)) throw UsageError("function '" + fn + "' is not interpreted in the model");

  ModelReport rep;
  auto check = [&](std::string name, auto&& body) {
    ModelCheck c{std::move(name), true, {}};
    body(c);
    rep.checks.push_back(std::move(c));
  };
  auto fail = [](ModelCheck& c, std::string why) {
    if (c.passed) c.detail = std::move(why);
    c.passed = false;
  };

  check("idempotence", [&](ModelCheck& c) {
    for (int x = 0; x < n; ++x)
      if (m.meet[x][x] != x) fail(c, nm(x) + " & " + nm(x) + " != " + nm(x));
  });
  check("commutativity", [&](ModelCheck& c) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (m.meet[x][y] != m.meet[y][x]) fail(c, nm(x) + " & " + nm(y) + " != " + nm(y) + " & " + nm(x));
  });
  check("associativity", [&](ModelCheck& c) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (m.meet[m.meet[x][y]][z] != m.meet[x][m.meet[y][z]])
            fail(c, "(" + nm(x) + " & " + nm(y) + ") & " + nm(z));
  });
  for (const auto& [f, tab] : m.funcs) {
    check("Mon(" + f + ")", [&](ModelCheck& c) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (m.leq(x, y) && !m.leq(tab[x], tab[y]))
            fail(c, nm(x) + " <= " + nm(y) + " but " + f + "(" + nm(x) + ") !<= " + f + "(" + nm(y) + ")");
    });
  }
  for (const auto& inc : axioms.inclusions) {
    const auto& tf = m.funcs.at(inc.f);
    const auto& tg = m.funcs.at(inc.g);
    std::ostringstream name;
    name << inc;
    check(name.str(), [&](ModelCheck& c) {
      for (int x = 0; x < n; ++x)
        if (!m.leq(tf[x], tg[x])) fail(c, "x = " + nm(x));
    });
  }
  for (const auto& comp : axioms.compositions) {
    const auto& tf = m.funcs.at(comp.f);
    const auto& tg = m.funcs.at(comp.g);
    const auto& th = m.funcs.at(comp.h);
    std::ostringstream name;
    name << comp;
    check(name.str(), [&](ModelCheck& c) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (m.leq(y, tg[x]) && !m.leq(tf[y], th[x])) fail(c, "x = " + nm(x) + ", y = " + nm(y));
    });
  }
  for (const auto& a : atoms) {
    bool ok = holds(m, a);
    check(to_string(a), [&](ModelCheck& c) {
      if (!ok) fail(c, to_string(a.lhs) + " = " + nm(eval_term(m, a.lhs)) + ", " + to_string(a.rhs) + " = " +
                           nm(eval_term(m, a.rhs)));
    });
  }
  return rep;
}

inline ModelReport check_finite_model(const FiniteModel& m, const AxiomSet& axioms, const std::vector<Atom>& atoms) {
  return check_finite_model(m, axioms, std::span<const Atom>(atoms));
}

}  // namespace slint::slat
