#include "simpepist/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "simpepist/symbols.hpp"

namespace simpepist {
namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LAngle,
  RAngle,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  IffArrow,
  Word,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(s.substr(i, len)), col});
      i += len;
    };
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBrack, 1); continue;
      case ']': push(Tok::RBrack, 1); continue;
      case '~': push(Tok::Tilde, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Pipe, 1); continue;
      case '>': push(Tok::RAngle, 1); continue;
      case '<':
        if (s.substr(i, 3) == "<->") {
          push(Tok::IffArrow, 3);
        } else {
          push(Tok::LAngle, 1);
        }
        continue;
      case '-':
        if (s.substr(i, 2) == "->") {
          push(Tok::Arrow, 2);
        } else {
          throw ParseError(col, "stray '-' (did you mean '->'?)");
        }
        continue;
      default:
        break;
    }
    if (ident_start(c) ) {
      std::size_t j = i;
      while (j < s.size() && (ident_char(s[j]) || s[j] == '_')) ++j;
      out.push_back({Tok::Word, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    throw ParseError(col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

bool valid_ident(std::string_view w) {
  if (w.empty() || !ident_start(w[0])) return false;
  for (char c : w.substr(1))
    if (!ident_char(c)) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      throw ParseError(peek().column, "unexpected trailing input '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(peek().column, std::string("expected ") + what);
  }

  AgentId parse_agent() {
    if (peek().kind != Tok::Word)
      throw ParseError(peek().column, "expected agent name");
    Token t = take();
    if (!valid_ident(t.text))
      throw ParseError(t.column, "invalid agent name '" + t.text + "'");
    return intern_agent(t.text);
  }

  Formula parse_iff() {
    Formula l = parse_imp();
    while (accept(Tok::IffArrow)) l = iff(l, parse_imp());
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (accept(Tok::Arrow)) return implies(l, parse_imp());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (accept(Tok::Pipe)) l = disj(l, parse_and());
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (accept(Tok::Amp)) l = conj(l, parse_unary());
    return l;
  }

  Formula parse_unary() {
    if (accept(Tok::Tilde)) return neg(parse_unary());
    if (accept(Tok::LBrack)) {
      AgentId a = parse_agent();
      expect(Tok::RBrack, "']'");
      return know(a, parse_unary());
    }
    if (accept(Tok::LAngle)) {
      AgentId a = parse_agent();
      expect(Tok::RAngle, "'>'");
      return hat(a, parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Word)
      throw ParseError(peek().column, "expected a variable, T_agent or '('");
    Token t = take();
    auto us = t.text.find('_');
    if (us == std::string::npos || t.text.find('_', us + 1) != std::string::npos)
      throw ParseError(t.column,
                       "expected a variable of the form name_agent, got '" + t.text + "'");
    std::string base = t.text.substr(0, us);
    std::string agent = t.text.substr(us + 1);
    if (!valid_ident(base) || !valid_ident(agent))
      throw ParseError(t.column, "malformed variable '" + t.text + "'");
    if (base == "T") return agent_top(intern_agent(agent));
    return var(intern_variable(base, intern_agent(agent)));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

}  // namespace simpepist
