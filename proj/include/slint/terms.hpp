#pragma once

// Ground term algebra over constants, unary function applications and an
// associative-commutative-idempotent binary meet.  Terms are immutable and
// always kept in normal form: meets are flattened, deduplicated and sorted.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slint/errors.hpp"

namespace slint {

enum class SymbolKind : std::uint8_t { Constant, Function };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Constant;

  auto operator<=>(const Symbol&) const = default;
};

/// Characters that may never appear in an identifier.
inline constexpr std::string_view kReservedChars = "&().<=!,:#";

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) return false;
    if (kReservedChars.find(c) != std::string_view::npos) return false;
  }
  return true;
}

enum class TermKind : std::uint8_t { Const, App, Meet };

class Term;
Term mk_meet(std::span<const Term> args);

class Term {
 public:
  static Term constant(std::string name) {
    return Term(std::make_shared<const Node>(Node{TermKind::Const, std::move(name), {}}));
  }
  static Term app(std::string fn, Term arg) {
    std::vector<Term> args{std::move(arg)};
    return Term(std::make_shared<const Node>(Node{TermKind::App, std::move(fn), std::move(args)}));
  }

  TermKind kind() const { return node_->kind; }
  bool is_const() const { return node_->kind == TermKind::Const; }
  bool is_app() const { return node_->kind == TermKind::App; }
  bool is_meet() const { return node_->kind == TermKind::Meet; }

  /// Constant name or function symbol; empty for meets.
  const std::string& name() const { return node_->name; }
  /// Argument of an application.
  const Term& arg() const { return node_->args.front(); }
  /// Sorted, distinct arguments of a meet (or the single argument of an application).
  const std::vector<Term>& args() const { return node_->args; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : node_->args) d = std::max(d, a.depth());
    return node_->kind == TermKind::Const ? 0 : d + 1;
  }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (auto c = a.name().compare(b.name()); c != 0) return c <=> 0;
    const auto& x = a.args();
    const auto& y = b.args();
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
  }
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::vector<Term> args;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  friend Term mk_meet(std::span<const Term> args);

  std::shared_ptr<const Node> node_;
};

/// ACI normal form of the meet of `args`.  A single (distinct) argument
/// collapses to itself.
inline Term mk_meet(std::span<const Term> args) {
  if (args.empty()) throw UsageError("mk_meet: empty argument list");
  std::vector<Term> flat;
  for (const auto& a : args) {
    if (a.is_meet())
      flat.insert(flat.end(), a.args().begin(), a.args().end());
    else
      flat.push_back(a);
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1) return flat.front();
  return Term(std::make_shared<const Term::Node>(Term::Node{TermKind::Meet, {}, std::move(flat)}));
}

inline Term mk_meet(std::initializer_list<Term> args) {
  return mk_meet(std::span<const Term>(args.begin(), args.size()));
}

inline Term mk_meet(const std::vector<Term>& args) { return mk_meet(std::span<const Term>(args)); }

/// The binary sub-meets an n-ary meet contributes: the left-fold chain
/// x1&x2, (x1&x2)&x3, ..., ending with the meet itself.
inline std::vector<Term> meet_chain(const Term& m) {
  std::vector<Term> chain;
  if (!m.is_meet()) return chain;
  const auto& xs = m.args();
  for (std::size_t k = 2; k <= xs.size(); ++k)
    chain.push_back(k == xs.size() ? m : mk_meet(std::span<const Term>(xs.data(), k)));
  return chain;
}

inline void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  for (const auto& a : t.args()) collect_subterms(a, out);
  for (const auto& m : meet_chain(t)) out.insert(m);
}

inline std::set<Term> subterms(const Term& t) {
  std::set<Term> out;
  collect_subterms(t, out);
  return out;
}

inline void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.is_const()) out.insert(t.name());
  for (const auto& a : t.args()) collect_constants(a, out);
}

inline void collect_functions(const Term& t, std::set<std::string>& out) {
  if (t.is_app()) out.insert(t.name());
  for (const auto& a : t.args()) collect_functions(a, out);
}

inline std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  collect_constants(t, out);
  return out;
}

inline std::set<std::string> functions_of(const Term& t) {
  std::set<std::string> out;
  collect_functions(t, out);
  return out;
}

/// Replace every constant for which `f` returns a term.
template <class Fn>
Term substitute_constants(const Term& t, Fn&& f) {
  switch (t.kind()) {
    case TermKind::Const: {
      std::optional<Term> r = f(t.name());
      return r ? *r : t;
    }
    case TermKind::App:
      return Term::app(t.name(), substitute_constants(t.arg(), f));
    case TermKind::Meet: {
      std::vector<Term> xs;
      for (const auto& a : t.args()) xs.push_back(substitute_constants(a, f));
      return mk_meet(xs);
    }
  }
  return t;
}

/// Rename function symbols and constants through two string maps; missing keys stay.
inline Term rename_symbols(const Term& t, const std::map<std::string, std::string>& constants,
                           const std::map<std::string, std::string>& functions) {
  switch (t.kind()) {
    case TermKind::Const: {
      auto it = constants.find(t.name());
      return it == constants.end() ? t : Term::constant(it->second);
    }
    case TermKind::App: {
      auto it = functions.find(t.name());
      return Term::app(it == functions.end() ? t.name() : it->second,
                       rename_symbols(t.arg(), constants, functions));
    }
    case TermKind::Meet: {
      std::vector<Term> xs;
      for (const auto& a : t.args()) xs.push_back(rename_symbols(a, constants, functions));
      return mk_meet(xs);
    }
  }
  return t;
}

inline void print(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      os << t.name();
      break;
    case TermKind::App:
      os << t.name() << '(';
      print(os, t.arg());
      os << ')';
      break;
    case TermKind::Meet: {
      bool first = true;
      for (const auto& a : t.args()) {
        if (!first) os << " & ";
        first = false;
        print(os, a);
      }
      break;
    }
  }
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t);
  return os;
}

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Atoms, literals, Horn clauses

enum class AtomKind : std::uint8_t { Leq, Eq };

struct Atom {
  AtomKind kind = AtomKind::Leq;
  Term lhs;
  Term rhs;

  static Atom leq(Term l, Term r) { return Atom{AtomKind::Leq, std::move(l), std::move(r)}; }
  static Atom eq(Term l, Term r) { return Atom{AtomKind::Eq, std::move(l), std::move(r)}; }

  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Atom& a) {
  return os << a.lhs << (a.kind == AtomKind::Leq ? " <= " : " = ") << a.rhs;
}

inline std::ostream& operator<<(std::ostream& os, const Literal& l) {
  if (!l.positive) os << "! ";
  return os << l.atom;
}

inline std::string to_string(const Atom& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

inline std::string to_string(const Literal& l) {
  std::ostringstream os;
  os << l;
  return os.str();
}

/// Replace each Eq atom by its two Leq halves.
inline std::vector<Atom> expand_eq(std::span<const Atom> atoms) {
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    out.push_back(Atom::leq(a.lhs, a.rhs));
    if (a.kind == AtomKind::Eq) out.push_back(Atom::leq(a.rhs, a.lhs));
  }
  return out;
}

inline std::vector<Atom> expand_eq(const std::vector<Atom>& atoms) {
  return expand_eq(std::span<const Atom>(atoms));
}

/// Eq-expanded positive atoms of a literal set.
inline std::vector<Atom> positive_atoms(std::span<const Literal> lits) {
  std::vector<Atom> pos;
  for (const auto& l : lits)
    if (l.positive) pos.push_back(l.atom);
  return expand_eq(pos);
}

inline std::vector<Atom> positive_atoms(const std::vector<Literal>& lits) {
  return positive_atoms(std::span<const Literal>(lits));
}

inline std::vector<Literal> as_literals(std::span<const Atom> atoms) {
  std::vector<Literal> out;
  for (const auto& a : atoms) out.push_back(Literal{a, true});
  return out;
}

inline std::vector<Literal> as_literals(const std::vector<Atom>& atoms) {
  return as_literals(std::span<const Atom>(atoms));
}

struct Provenance {
  std::string schema;  ///< e.g. "Mon(f)" or "K1 composition(f,g,h)"
  std::vector<std::pair<std::string, Term>> substitution;

  auto operator<=>(const Provenance&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Provenance& p) {
  os << p.schema;
  if (!p.substitution.empty()) {
    os << " [";
    bool first = true;
    for (const auto& [var, val] : p.substitution) {
      if (!first) os << ", ";
      first = false;
      os << var << ":=" << val;
    }
    os << ']';
  }
  return os;
}

struct GroundHornClause {
  std::vector<Atom> premises;
  Atom conclusion;
  Provenance provenance;

  auto operator<=>(const GroundHornClause&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const GroundHornClause& c) {
  bool first = true;
  for (const auto& p : c.premises) {
    if (!first) os << " , ";
    first = false;
    os << p;
  }
  if (!c.premises.empty()) os << " -> ";
  return os << c.conclusion;
}

inline std::string to_string(const GroundHornClause& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

// ---------------------------------------------------------------------------
// Coloring

enum class Color : std::uint8_t { ALocal, BLocal, Shared };

inline const char* to_string(Color c) {
  switch (c) {
    case Color::ALocal: return "A-local";
    case Color::BLocal: return "B-local";
    case Color::Shared: return "shared";
  }
  return "?";
}

using ColorMap = std::map<Symbol, Color>;

inline void collect_symbols(const Atom& a, std::set<Symbol>& out) {
  for (const Term* t : {&a.lhs, &a.rhs}) {
    for (auto& c : constants_of(*t)) out.insert(Symbol{c, SymbolKind::Constant});
    for (auto& f : functions_of(*t)) out.insert(Symbol{f, SymbolKind::Function});
  }
}

inline std::set<Symbol> symbols_of(std::span<const Literal> lits) {
  std::set<Symbol> out;
  for (const auto& l : lits) collect_symbols(l.atom, out);
  return out;
}

/// Symbols in both sides are shared, the rest are local to the side they occur in.
inline ColorMap color_problem(std::span<const Literal> a, std::span<const Literal> b) {
  auto sa = symbols_of(a);
  auto sb = symbols_of(b);
  ColorMap out;
  for (const auto& s : sa) out[s] = sb.count(s) ? Color::Shared : Color::ALocal;
  for (const auto& s : sb)
    if (!sa.count(s)) out[s] = Color::BLocal;
  return out;
}

inline ColorMap color_problem(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  return color_problem(std::span<const Literal>(a), std::span<const Literal>(b));
}

}  // namespace slint
