#pragma once

// Readers for the line-oriented `.slp` (semilattice problem) and `.model`
// (finite model) formats.  Both allow `#` comments and blank lines.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slint/axioms.hpp"
#include "slint/errors.hpp"
#include "slint/locality.hpp"
#include "slint/slat.hpp"
#include "slint/syntax.hpp"
#include "slint/terms.hpp"

namespace slint::formats {

namespace detail {

inline std::optional<std::string> take_label(syntax::Cursor& cur) {
  if (cur.at(syntax::Tok::Ident) && cur.peek(1).kind == syntax::Tok::Colon) {
    std::string l = cur.next().text;
    cur.next();
    return l;
  }
  return std::nullopt;
}

inline std::string declared(syntax::Cursor& cur, const std::set<std::string>& fns) {
  auto t = cur.expect(syntax::Tok::Ident);
  if (!fns.count(t.text)) throw ParseError("undeclared function '" + t.text + "'", t.line, t.column);
  return t.text;
}

/// Parse an axiom body after the `axiom` keyword and optional label.
inline void parse_axiom(syntax::Cursor& cur, const std::set<std::string>& fns, const std::string& label, AxiomSet& k) {
  auto kw = cur.expect(syntax::Tok::Ident);
  if (kw.text == "inclusion") {
    std::string f = declared(cur, fns);
    std::string g = declared(cur, fns);
    cur.expect_end();
    k.inclusions.push_back(Inclusion{f, g, label});
  } else if (kw.text == "composition") {
    std::string f = declared(cur, fns);
    std::string g = declared(cur, fns);
    std::string h = declared(cur, fns);
    cur.expect_end();
    k.compositions.push_back(Composition{f, g, h, label});
  } else {
    throw ParseError("expected 'inclusion' or 'composition', found '" + kw.text + "'", kw.line, kw.column);
  }
}

}  // namespace detail

/// `.slp`:
///
///   functions f g
///   axiom composition f g g       # y <= g(x) -> f(y) <= g(x)
///   side A
///   d <= g(a)
///   side B
///   B1: b <= f(b)
///   goal b <= a
///
/// Unlabeled lines get A1, A2, ... / B1, ... / K1, ... in order.
inline Problem parse_slp(std::string_view text) {
  using syntax::Tok;
  Problem p;
  std::set<std::string> fns, labels;
  enum class Section { Header, A, B, Done } sec = Section::Header;
  std::size_t nk = 0;

  auto claim = [&](const std::optional<std::string>& given, std::string fallback, const syntax::Cursor& cur) {
    std::string l = given ? *given : std::move(fallback);
    if (!labels.insert(l).second) cur.fail("duplicate label '" + l + "'");
    return l;
  };
  syntax::FunctionCheck check = [&](const syntax::Token& t) {
    if (!fns.count(t.text)) throw ParseError("undeclared function '" + t.text + "'", t.line, t.column);
  };

  for (auto [ln, line] : syntax::lines_of(text)) {
    syntax::Cursor cur(syntax::tokenize(line, ln));
    if (cur.done()) continue;
    if (sec == Section::Done) cur.fail("nothing may follow the goal");

    if (cur.at_word("functions") && cur.peek(1).kind != Tok::Colon) {
      if (sec != Section::Header) cur.fail("functions must be declared before the sides");
      cur.next();
      while (!cur.done()) {
        auto t = cur.expect(Tok::Ident);
        if (!fns.insert(t.text).second) throw ParseError("duplicate function '" + t.text + "'", t.line, t.column);
      }
      continue;
    }
    if (cur.at_word("axiom") && cur.peek(1).kind != Tok::Colon) {
      if (sec != Section::Header) cur.fail("axioms must precede the sides");
      cur.next();
      auto given = detail::take_label(cur);
      std::string label = claim(given, "K" + std::to_string(++nk), cur);
      detail::parse_axiom(cur, fns, label, p.axioms);
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
      Atom g = syntax::parse_atom(cur, check);
      cur.expect_end();
      p.goal = g;
      sec = Section::Done;
      continue;
    }
    if (sec == Section::Header) cur.fail("expected 'functions', 'axiom' or 'side', found " + cur.found());

    auto given = detail::take_label(cur);
    Literal l = syntax::parse_literal(cur, check);
    cur.expect_end();
    if (sec == Section::A) {
      p.a_labels.push_back(claim(given, "A" + std::to_string(p.a.size() + 1), cur));
      p.a.push_back(l);
    } else {
      p.b_labels.push_back(claim(given, "B" + std::to_string(p.b.size() + 1), cur));
      p.b.push_back(l);
    }
  }
  p.axioms.functions = fns;
  return p;
}

/// A finite model together with the axioms and atoms it should satisfy.
struct ModelFile {
  slat::FiniteModel model;
  AxiomSet axioms;
  std::vector<Atom> atoms;
};

/// `.model`:
///
///   carrier a e b d
///   meet a : a e d d      # row of the meet table for a
///   func f : a a d d      # values of f on the carrier, in order
///   const a = a
///   axiom composition f g g
///   atom a <= f(e)
///
/// Functions are declared by their `func` line; axioms and atoms may only use
/// declared functions.
inline ModelFile parse_model(std::string_view text) {
  using syntax::Tok;
  ModelFile mf;
  auto& m = mf.model;
  std::map<std::string, int> index;
  std::set<std::string> fns, met;
  std::size_t nk = 0;

  auto element = [&](syntax::Cursor& cur) {
    auto t = cur.expect(Tok::Ident);
    auto it = index.find(t.text);
    if (it == index.end()) throw ParseError("'" + t.text + "' is not in the carrier", t.line, t.column);
    return it->second;
  };
  auto row = [&](syntax::Cursor& cur) {
    std::vector<int> r;
    while (!cur.done()) r.push_back(element(cur));
    if (r.size() != m.carrier.size())
      cur.fail("expected " + std::to_string(m.carrier.size()) + " entries, found " + std::to_string(r.size()));
    return r;
  };
  syntax::FunctionCheck check = [&](const syntax::Token& t) {
    if (!fns.count(t.text)) throw ParseError("undeclared function '" + t.text + "'", t.line, t.column);
  };

  std::size_t last_line = 0;
  for (auto [ln, line] : syntax::lines_of(text)) {
    syntax::Cursor cur(syntax::tokenize(line, ln));
    last_line = ln;
    if (cur.done()) continue;
    auto kw = cur.expect(Tok::Ident);
    if (kw.text != "carrier" && m.carrier.empty())
      throw ParseError("the carrier must be declared first", kw.line, kw.column);
    if (kw.text == "carrier") {
      if (!m.carrier.empty()) throw ParseError("carrier declared twice", kw.line, kw.column);
      while (!cur.done()) {
        auto t = cur.expect(Tok::Ident);
        if (index.count(t.text)) throw ParseError("duplicate element '" + t.text + "'", t.line, t.column);
        index[t.text] = static_cast<int>(m.carrier.size());
        m.carrier.push_back(t.text);
      }
      if (m.carrier.empty()) cur.fail("empty carrier");
      m.meet.assign(m.carrier.size(), std::vector<int>(m.carrier.size(), -1));
    } else if (kw.text == "meet") {
      int x = element(cur);
      if (!met.insert(m.carrier[x]).second) cur.fail("meet row for '" + m.carrier[x] + "' given twice");
      cur.expect(Tok::Colon);
      m.meet[x] = row(cur);
    } else if (kw.text == "func") {
      auto f = cur.expect(Tok::Ident);
      if (!fns.insert(f.text).second) throw ParseError("function '" + f.text + "' given twice", f.line, f.column);
      cur.expect(Tok::Colon);
      m.funcs[f.text] = row(cur);
    } else if (kw.text == "const") {
      auto c = cur.expect(Tok::Ident);
      cur.expect(Tok::Eq);
      int v = element(cur);
      cur.expect_end();
      if (!m.consts.emplace(c.text, v).second)
        throw ParseError("constant '" + c.text + "' bound twice", c.line, c.column);
    } else if (kw.text == "axiom") {
      auto given = detail::take_label(cur);
      detail::parse_axiom(cur, fns, given ? *given : "K" + std::to_string(++nk), mf.axioms);
    } else if (kw.text == "atom") {
      Atom a = syntax::parse_atom(cur, check);
      cur.expect_end();
      mf.atoms.push_back(a);
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line, kw.column);
    }
  }
  if (m.carrier.empty()) throw ParseError("no carrier declared", last_line, 1);
  for (const auto& e : m.carrier)
    if (!met.count(e)) throw ParseError("missing meet row for '" + e + "'", last_line, 1);
  mf.axioms.functions = fns;
  for (const auto& a : mf.atoms)
    for (const auto& t : {a.lhs, a.rhs})
      for (const auto& c : constants_of(t))
        if (!m.consts.count(c)) throw ParseError("constant '" + c + "' has no value", last_line, 1);
  return mf;
}

}  // namespace slint::formats
