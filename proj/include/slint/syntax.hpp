#pragma once

// Line-oriented tokenizer and recursive-descent parsers for the shared term
// syntax:  term := primary ('&' primary)* ;  primary := ident | ident '(' term ')' | '(' term ')'
// Atoms are `t <= t` or `t = t`, optionally negated with a leading `!`.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "slint/errors.hpp"
#include "slint/terms.hpp"

namespace slint::syntax {

enum class Tok { Ident, Amp, LParen, RParen, Dot, Leq, Eq, Bang, Comma, Colon, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Amp: return "'&'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Leq: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::Bang: return "'!'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of line";
  }
  return "?";
}

/// Tokenize one line (comments already allowed: `#` runs to end of line).
inline std::vector<Token> tokenize(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t start, std::size_t len) {
    out.push_back(Token{k, std::string(text.substr(start, len)), line, start + 1});
  };
  while (i < text.size()) {
    char c = text[i];
    auto u = static_cast<unsigned char>(c);
    if (c == '#') break;
    if (u <= 0x20) {
      ++i;
      continue;
    }
    switch (c) {
      case '&': push(Tok::Amp, i, 1); ++i; continue;
      case '(': push(Tok::LParen, i, 1); ++i; continue;
      case ')': push(Tok::RParen, i, 1); ++i; continue;
      case '.': push(Tok::Dot, i, 1); ++i; continue;
      case '!': push(Tok::Bang, i, 1); ++i; continue;
      case ',': push(Tok::Comma, i, 1); ++i; continue;
      case ':': push(Tok::Colon, i, 1); ++i; continue;
      case '=': push(Tok::Eq, i, 1); ++i; continue;
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::Leq, i, 2);
          i += 2;
          continue;
        }
        throw ParseError("unexpected '<' (did you mean '<=')", line, i + 1);
      default:
        break;
    }
    std::size_t start = i;
    while (i < text.size()) {
      char d = text[i];
      auto v = static_cast<unsigned char>(d);
      if (v <= 0x20 || v == 0x7f || kReservedChars.find(d) != std::string_view::npos) break;
      ++i;
    }
    push(Tok::Ident, start, i - start);
  }
  out.push_back(Token{Tok::End, "", line, text.size() + 1});
  return out;
}

/// Cursor over the tokens of a single line.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  bool done() const { return at(Tok::End); }

  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + describe(k) + ", found " + found());
    return next();
  }

  void expect_end() {
    if (!done()) fail("unexpected " + found());
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  std::string found() const {
    const auto& t = peek();
    if (t.kind == Tok::Ident) return "'" + t.text + "'";
    return describe(t.kind);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Hook to validate function symbols while parsing (e.g. against a declaration list).
using FunctionCheck = std::function<void(const Token&)>;

Term parse_term(Cursor& cur, const FunctionCheck& check = {});

inline Term parse_primary(Cursor& cur, const FunctionCheck& check) {
  if (cur.at(Tok::LParen)) {
    cur.next();
    Term t = parse_term(cur, check);
    cur.expect(Tok::RParen);
    return t;
  }
  Token id = cur.expect(Tok::Ident);
  if (cur.at(Tok::LParen)) {
    if (check) check(id);
    cur.next();
    Term arg = parse_term(cur, check);
    cur.expect(Tok::RParen);
    return Term::app(id.text, arg);
  }
  return Term::constant(id.text);
}

inline Term parse_term(Cursor& cur, const FunctionCheck& check) {
  std::vector<Term> parts{parse_primary(cur, check)};
  while (cur.at(Tok::Amp)) {
    cur.next();
    parts.push_back(parse_primary(cur, check));
  }
  return parts.size() == 1 ? parts.front() : mk_meet(parts);
}

inline Atom parse_atom(Cursor& cur, const FunctionCheck& check = {}) {
  Term lhs = parse_term(cur, check);
  if (cur.at(Tok::Leq)) {
    cur.next();
    return Atom::leq(lhs, parse_term(cur, check));
  }
  if (cur.at(Tok::Eq)) {
    cur.next();
    return Atom::eq(lhs, parse_term(cur, check));
  }
  cur.fail("expected '<=' or '=', found " + cur.found());
}

inline Literal parse_literal(Cursor& cur, const FunctionCheck& check = {}) {
  bool positive = true;
  if (cur.at(Tok::Bang)) {
    cur.next();
    positive = false;
  }
  return Literal{parse_atom(cur, check), positive};
}

/// Convenience parsers for whole strings (tests, programmatic construction).
inline Term term(std::string_view text) {
  Cursor cur(tokenize(text, 1));
  Term t = parse_term(cur);
  cur.expect_end();
  return t;
}

inline Atom atom(std::string_view text) {
  Cursor cur(tokenize(text, 1));
  Atom a = parse_atom(cur);
  cur.expect_end();
  return a;
}

inline Literal literal(std::string_view text) {
  Cursor cur(tokenize(text, 1));
  Literal l = parse_literal(cur);
  cur.expect_end();
  return l;
}

inline std::vector<Atom> atoms(std::initializer_list<std::string_view> texts) {
  std::vector<Atom> out;
  for (auto t : texts) out.push_back(atom(t));
  return out;
}

inline std::vector<Literal> literals(std::initializer_list<std::string_view> texts) {
  std::vector<Literal> out;
  for (auto t : texts) out.push_back(literal(t));
  return out;
}

/// Split a document into (1-based line number, line text) pairs.
inline std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view doc) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line = 1;
  std::size_t start = 0;
  while (start <= doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    std::string_view l = doc.substr(start, end - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    out.emplace_back(line++, l);
    if (end == doc.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace slint::syntax
