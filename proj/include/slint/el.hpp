#pragma once

// EL+ front end.  Concept names become constants, conjunction becomes meet
// and `ex r . C` becomes r(C); role inclusions r <= s and r o s <= t become
// inclusion and composition axioms.  Subsumption, interpolation and
// justification then run on the translated semilattice problem.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slint/errors.hpp"
#include "slint/interp.hpp"
#include "slint/locality.hpp"
#include "slint/syntax.hpp"
#include "slint/terms.hpp"

namespace slint::el {

enum class ConceptKind : std::uint8_t { Name, And, Exists };

/// Concept description.  Conjunctions are kept in the same normal form as
/// meets, which `conj` enforces by going through the term encoding.
class ConceptDescr {
 public:
  static ConceptDescr name(std::string n) { return ConceptDescr(ConceptKind::Name, std::move(n), {}); }
  static ConceptDescr exists(std::string role, ConceptDescr c) {
    return ConceptDescr(ConceptKind::Exists, std::move(role), {std::move(c)});
  }
  static ConceptDescr conj(const std::vector<ConceptDescr>& parts);

  ConceptKind kind() const { return kind_; }
  const std::string& name() const { return name_; }  ///< concept name or role
  const std::string& role() const { return name_; }
  const std::vector<ConceptDescr>& args() const { return args_; }
  const ConceptDescr& filler() const { return args_.front(); }

  bool operator==(const ConceptDescr&) const = default;

 private:
  ConceptDescr(ConceptKind k, std::string n, std::vector<ConceptDescr> a)
      : kind_(k), name_(std::move(n)), args_(std::move(a)) {}

  ConceptKind kind_;
  std::string name_;
  std::vector<ConceptDescr> args_;
};

inline Term to_term(const ConceptDescr& c) {
  switch (c.kind()) {
    case ConceptKind::Name: return Term::constant(c.name());
    case ConceptKind::Exists: return Term::app(c.role(), to_term(c.filler()));
    case ConceptKind::And: {
      std::vector<Term> parts;
      for (const auto& a : c.args()) parts.push_back(to_term(a));
      return mk_meet(parts);
    }
  }
  throw InternalError("bad concept kind");
}

namespace detail {

inline ConceptDescr from_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const: return ConceptDescr::name(t.name());
    case TermKind::App: return ConceptDescr::exists(t.name(), from_term(t.arg()));
    case TermKind::Meet: {
      std::vector<ConceptDescr> parts;
      for (const auto& a : t.args()) parts.push_back(from_term(a));
      return ConceptDescr::conj(parts);
    }
  }
  throw InternalError("bad term kind");
}

}  // namespace detail

inline ConceptDescr ConceptDescr::conj(const std::vector<ConceptDescr>& parts) {
  if (parts.empty()) throw UsageError("empty conjunction");
  std::vector<Term> ts;
  for (const auto& p : parts) ts.push_back(to_term(p));
  Term m = mk_meet(ts);
  if (!m.is_meet()) return detail::from_term(m);
  std::vector<ConceptDescr> args;
  for (const auto& a : m.args()) args.push_back(detail::from_term(a));
  return ConceptDescr(ConceptKind::And, "", std::move(args));
}

inline std::string to_string(const ConceptDescr& c) {
  switch (c.kind()) {
    case ConceptKind::Name: return c.name();
    case ConceptKind::Exists: {
      const auto& f = c.filler();
      std::string inner = to_string(f);
      if (f.kind() == ConceptKind::And) inner = "(" + inner + ")";
      return "ex " + c.role() + " . " + inner;
    }
    case ConceptKind::And: {
      std::string s;
      for (const auto& a : c.args()) s += (s.empty() ? "" : " & ") + to_string(a);
      return s;
    }
  }
  return "?";
}

struct RoleInclusion {
  std::string r;
  std::optional<std::string> s;  ///< set for r o s <= t
  std::string t;
  std::string label;
  std::size_t line = 0;
};

struct GCI {
  ConceptDescr lhs;
  ConceptDescr rhs;
  std::string label;
  std::size_t line = 0;
};

struct CBox {
  std::vector<GCI> gcis;
};

/// Two CBoxes over common roles.  Role inclusions belong to both sides.
struct ELProblem {
  std::vector<std::string> roles;  ///< declaration order
  std::vector<RoleInclusion> ris;
  CBox a;
  CBox b;
  std::optional<ConceptDescr> goal_c;
  std::optional<ConceptDescr> goal_d;

  bool has_goal() const { return goal_c.has_value(); }
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class ConceptParser {
 public:
  ConceptParser(syntax::Cursor& cur, const std::set<std::string>& roles) : cur_(cur), roles_(roles) {}

  ConceptDescr description() {
    std::vector<ConceptDescr> parts{unary()};
    while (cur_.at(syntax::Tok::Amp)) {
      cur_.next();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : ConceptDescr::conj(parts);
  }

  std::string role() {
    if (!cur_.at(syntax::Tok::Ident)) cur_.fail("expected a role name, found " + cur_.found());
    if (!roles_.count(cur_.peek().text)) cur_.fail("undeclared role '" + cur_.peek().text + "'");
    return cur_.next().text;
  }

 private:
  ConceptDescr unary() {
    if (cur_.at(syntax::Tok::LParen)) {
      cur_.next();
      ConceptDescr c = description();
      cur_.expect(syntax::Tok::RParen);
      return c;
    }
    if (cur_.at_word("ex")) {
      cur_.next();
      std::string r = role();
      cur_.expect(syntax::Tok::Dot);
      return ConceptDescr::exists(r, unary());
    }
    if (!cur_.at(syntax::Tok::Ident)) cur_.fail("expected a concept, found " + cur_.found());
    return ConceptDescr::name(cur_.next().text);
  }

  syntax::Cursor& cur_;
  const std::set<std::string>& roles_;
};

/// Optional `label:` prefix.
inline std::optional<std::string> take_label(syntax::Cursor& cur) {
  if (cur.at(syntax::Tok::Ident) && cur.peek(1).kind == syntax::Tok::Colon) {
    std::string l = cur.next().text;
    cur.next();
    return l;
  }
  return std::nullopt;
}

}  // namespace detail

/// Parses the `.elp` format:
///
///   roles part-of has-location
///   ri R2: has-location o part-of <= has-location
///   side A
///   A1: Endocardium <= ex part-of . HeartWall
///   side B
///   ...
///   goal Endocarditis <= HeartDisease
inline ELProblem parse_cbox(std::string_view text) {
  using syntax::Tok;
  ELProblem p;
  std::set<std::string> roles, labels;
  enum class Section { Header, A, B, Done } sec = Section::Header;
  std::size_t na = 0, nb = 0, nr = 0;

  auto claim_label = [&](const std::optional<std::string>& given, std::string fallback, const syntax::Cursor& cur) {
    std::string l = given ? *given : std::move(fallback);
    if (!labels.insert(l).second) cur.fail("duplicate label '" + l + "'");
    return l;
  };

  for (auto [ln, line] : syntax::lines_of(text)) {
    syntax::Cursor cur(syntax::tokenize(line, ln));
    if (cur.done()) continue;
    if (sec == Section::Done) cur.fail("nothing may follow the goal");

    if (cur.at_word("roles")) {
      if (sec != Section::Header) cur.fail("roles must be declared before the sides");
      cur.next();
      while (!cur.done()) {
        auto t = cur.expect(Tok::Ident);
        if (!roles.insert(t.text).second) throw ParseError("duplicate role '" + t.text + "'", t.line, t.column);
        p.roles.push_back(t.text);
      }
      continue;
    }
    if (cur.at_word("ri")) {
      if (sec != Section::Header) cur.fail("role inclusions must precede the sides");
      cur.next();
      auto given = detail::take_label(cur);
      detail::ConceptParser cp(cur, roles);
      RoleInclusion ri;
      ri.line = ln;
      ri.r = cp.role();
      if (cur.at_word("o")) {
        cur.next();
        ri.s = cp.role();
      }
      cur.expect(Tok::Leq);
      ri.t = cp.role();
      cur.expect_end();
      ri.label = claim_label(given, "R" + std::to_string(++nr), cur);
      p.ris.push_back(std::move(ri));
      continue;
    }
    if (cur.at_word("side") && cur.peek(1).kind == Tok::Ident && cur.peek(2).kind == Tok::End) {
      cur.next();
      auto s = cur.next();
      if (s.text == "A") sec = Section::A;
      else if (s.text == "B") sec = Section::B;
      else throw ParseError("expected side A or side B", s.line, s.column);
      continue;
    }
    if (cur.at_word("goal") && cur.peek(1).kind != Tok::Colon) {
      cur.next();
      detail::ConceptParser cp(cur, roles);
      ConceptDescr c = cp.description();
      cur.expect(Tok::Leq);
      ConceptDescr d = cp.description();
      cur.expect_end();
      p.goal_c = c;
      p.goal_d = d;
      sec = Section::Done;
      continue;
    }
    if (sec == Section::Header) cur.fail("expected 'roles', 'ri' or 'side', found " + cur.found());

    auto given = detail::take_label(cur);
    detail::ConceptParser cp(cur, roles);
    ConceptDescr lhs = cp.description();
    cur.expect(Tok::Leq);
    ConceptDescr rhs = cp.description();
    cur.expect_end();
    bool on_a = sec == Section::A;
    std::string label = claim_label(given, (on_a ? "A" + std::to_string(++na) : "B" + std::to_string(++nb)), cur);
    (on_a ? p.a : p.b).gcis.push_back(GCI{lhs, rhs, label, ln});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Translation

inline AxiomSet role_axioms(const ELProblem& p) {
  AxiomSet k;
  k.functions.insert(p.roles.begin(), p.roles.end());
  for (const auto& ri : p.ris) {
    if (ri.s) k.compositions.push_back(Composition{ri.r, *ri.s, ri.t, ri.label});
    else k.inclusions.push_back(Inclusion{ri.r, ri.t, ri.label});
  }
  return k;
}

/// The semilattice problem.  A goal with compound sides is passed as is; the
/// reduction names it with constants colored by the side that uses it.
inline Problem translate(const ELProblem& p) {
  Problem q;
  for (const auto& g : p.a.gcis) {
    q.a.push_back(Literal{Atom::leq(to_term(g.lhs), to_term(g.rhs)), true});
    q.a_labels.push_back(g.label);
  }
  for (const auto& g : p.b.gcis) {
    q.b.push_back(Literal{Atom::leq(to_term(g.lhs), to_term(g.rhs)), true});
    q.b_labels.push_back(g.label);
  }
  q.axioms = role_axioms(p);
  if (p.has_goal()) q.goal = Atom::leq(to_term(*p.goal_c), to_term(*p.goal_d));
  return q;
}

/// Concept names used anywhere in the problem.
inline std::set<std::string> concept_names(const ELProblem& p) {
  std::set<std::string> out;
  auto q = translate(p);
  for (const auto& l : q.a) collect_constants(l.atom.lhs, out), collect_constants(l.atom.rhs, out);
  for (const auto& l : q.b) collect_constants(l.atom.lhs, out), collect_constants(l.atom.rhs, out);
  if (q.goal) collect_constants(q.goal->lhs, out), collect_constants(q.goal->rhs, out);
  return out;
}

inline ConceptDescr untranslate(const Term& t, const std::set<std::string>& roles,
                                const std::set<std::string>& concepts) {
  for (const auto& f : functions_of(t))
    if (!roles.count(f)) throw UsageError("'" + f + "' is not a role");
  for (const auto& c : constants_of(t))
    if (!concepts.count(c)) throw UsageError("'" + c + "' is not a concept name");
  return detail::from_term(t);
}

inline ConceptDescr untranslate(const Term& t, const ELProblem& p) {
  return untranslate(t, std::set<std::string>(p.roles.begin(), p.roles.end()), concept_names(p));
}

inline bool el_subsumes(const ELProblem& p) { return locality::entails(translate(p)); }

inline bool el_subsumes(const ELProblem& p, const ConceptDescr& c, const ConceptDescr& d) {
  ELProblem q = p;
  q.goal_c = c;
  q.goal_d = d;
  return el_subsumes(q);
}

/// Labels of a minimal sub-ontology (GCIs and role inclusions) entailing the goal.
inline std::vector<std::string> justify(const ELProblem& p) {
  return locality::minimize_axioms(translate(p)).labels;
}

struct ELInterpolation {
  ConceptDescr description;
  interp::InterpolationResult result;
  std::optional<std::vector<std::string>> justification;
  bool lower_verified = false;  ///< C_A u C_B |= C <= T
  bool upper_verified = false;  ///< C_A u C_B |= T <= D
};

struct ELInterpolateOptions {
  bool justify_first = false;
  bool verify = true;
};

/// Interpolating concept for the goal.  With `justify_first` the instance
/// space is first cut down to a minimal sub-ontology; the result is still an
/// interpolant but may differ from the one for the full ontology.
inline ELInterpolation el_interpolate(const ELProblem& p, const ELInterpolateOptions& opts = {}) {
  Problem q = translate(p);
  if (!q.goal) throw UsageError("problem has no goal");
  std::optional<std::vector<std::string>> labels;
  if (opts.justify_first) {
    if (!locality::entails(q)) throw NotEntailed("goal " + to_string(*q.goal) + " is not entailed");
    auto j = locality::minimize_axioms(q);
    labels = j.labels;
    q = j.problem;
  }
  auto r = interp::interpolate(q, interp::InterpolateOptions{SharingMode::Theta, opts.verify});
  ConceptDescr c = untranslate(r.term, p);
  ELInterpolation out{c, std::move(r), labels};
  if (opts.verify) {
    out.lower_verified = el_subsumes(p, *p.goal_c, c);
    out.upper_verified = el_subsumes(p, c, *p.goal_d);
    if (!out.lower_verified || !out.upper_verified)
      throw VerificationFailed("concept " + to_string(c) + " does not interpolate the goal");
  }
  return out;
}

}  // namespace slint::el
