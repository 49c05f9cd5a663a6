#include <algorithm>
#include <cctype>
#include <utility>

#include "redukt/ltl.hpp"

namespace redukt {

namespace {

enum class Tok { End, Ident, True, False, Not, And, Or, Implies, Iff, Next, Fin, Glob, Until, Release, LParen, RParen };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  Tok tok = Tok::End;
  std::string ident;
  std::size_t tok_pos = 0;

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    tok_pos = pos;
    if (pos == text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    switch (c) {
    case '!':
      ++pos;
      tok = Tok::Not;
      return;
    case '&':
      ++pos;
      tok = Tok::And;
      return;
    case '|':
      ++pos;
      tok = Tok::Or;
      return;
    case '(':
      ++pos;
      tok = Tok::LParen;
      return;
    case ')':
      ++pos;
      tok = Tok::RParen;
      return;
    case '-':
      if (pos + 1 < text.size() && text[pos + 1] == '>') {
        pos += 2;
        tok = Tok::Implies;
        return;
      }
      throw ParseError("stray '-'", pos);
    case '<':
      if (text.size() - pos >= 3 && text.substr(pos, 3) == "<->") {
        pos += 3;
        tok = Tok::Iff;
        return;
      }
      throw ParseError("stray '<'", pos);
    default:
      break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string word(text.substr(start, pos - start));
      if (word == "true")
        tok = Tok::True;
      else if (word == "false")
        tok = Tok::False;
      else if (word == "X")
        tok = Tok::Next;
      else if (word == "F")
        tok = Tok::Fin;
      else if (word == "G")
        tok = Tok::Glob;
      else if (word == "U")
        tok = Tok::Until;
      else if (word == "R")
        tok = Tok::Release;
      else {
        tok = Tok::Ident;
        ident = std::move(word);
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

struct Parser {
  Lexer lex;
  const ApSet& aps;

  FormulaPtr parse_iff() {
    FormulaPtr l = parse_implies();
    if (lex.tok == Tok::Iff) {
      lex.advance();
      FormulaPtr r = parse_iff();
      return Formula::and_(Formula::implies(l, r), Formula::implies(r, l));
    }
    return l;
  }

  FormulaPtr parse_implies() {
    FormulaPtr l = parse_or();
    if (lex.tok == Tok::Implies) {
      lex.advance();
      return Formula::implies(l, parse_implies());
    }
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (lex.tok == Tok::Or) {
      lex.advance();
      l = Formula::or_(l, parse_and());
    }
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_until();
    while (lex.tok == Tok::And) {
      lex.advance();
      l = Formula::and_(l, parse_until());
    }
    return l;
  }

  FormulaPtr parse_until() {
    FormulaPtr l = parse_unary();
    if (lex.tok == Tok::Until) {
      lex.advance();
      return Formula::until(l, parse_until());
    }
    if (lex.tok == Tok::Release) {
      lex.advance();
      return Formula::release(l, parse_until());
    }
    return l;
  }

  FormulaPtr parse_unary() {
    switch (lex.tok) {
    case Tok::Not:
      lex.advance();
      return Formula::not_(parse_unary());
    case Tok::Next:
      lex.advance();
      return Formula::next(parse_unary());
    case Tok::Fin:
      lex.advance();
      return Formula::finally_(parse_unary());
    case Tok::Glob:
      lex.advance();
      return Formula::globally(parse_unary());
    default:
      return parse_atom();
    }
  }

  FormulaPtr parse_atom() {
    switch (lex.tok) {
    case Tok::True:
      lex.advance();
      return Formula::tt();
    case Tok::False:
      lex.advance();
      return Formula::ff();
    case Tok::Ident: {
      if (!aps.index_of(lex.ident))
        throw ParseError("unknown atomic proposition '" + lex.ident + "'", lex.tok_pos);
      FormulaPtr f = Formula::ap(lex.ident);
      lex.advance();
      return f;
    }
    case Tok::LParen: {
      lex.advance();
      FormulaPtr f = parse_iff();
      if (lex.tok != Tok::RParen)
        throw ParseError("expected ')'", lex.tok_pos);
      lex.advance();
      return f;
    }
    case Tok::End:
      throw ParseError("unexpected end of formula", lex.tok_pos);
    default:
      throw ParseError("unexpected token", lex.tok_pos);
    }
  }
};

} // namespace

FormulaPtr parse_formula(std::string_view text, const ApSet& aps) {
  Parser p{Lexer{text, 0, Tok::End, {}, 0}, aps};
  p.lex.advance();
  FormulaPtr f = p.parse_iff();
  if (p.lex.tok != Tok::End)
    throw ParseError("trailing input after formula", p.lex.tok_pos);
  return f;
}

std::vector<std::string> collect_ap_names(std::string_view text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string word(text.substr(start, pos - start));
      bool keyword = word == "true" || word == "false" || word == "X" || word == "F" ||
                     word == "G" || word == "U" || word == "R";
      if (!keyword && std::find(names.begin(), names.end(), word) == names.end())
        names.push_back(std::move(word));
    } else {
      ++pos;
    }
  }
  return names;
}

} // namespace redukt
