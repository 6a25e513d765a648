#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wfv/ltl/formula.hpp"

namespace wfv::ltl {

/// Textual syntax:
///
///   atoms       identifiers `[A-Za-z_][A-Za-z0-9_:#'.]*` or "quoted"
///   constants   true false
///   unary       ! X Y G F
///   binary      U S R  (right-assoc) > && > || > -> (right-assoc) > <->
///
/// The bare words U, S and R denote propositions when they appear where an
/// operand is expected, so the reconfiguration proposition `R` can be written
/// unquoted. X, Y, G, F, true and false must be quoted to be used as atoms.

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '#' || c == '\'' ||
         c == '.';
}

inline bool needs_quotes(const std::string& name) {
  if (name.empty() || !ident_start(name[0])) return true;
  for (char c : name)
    if (!ident_char(c)) return true;
  return name == "X" || name == "Y" || name == "G" || name == "F" || name == "true" || name == "false";
}

// Binding strength, higher binds tighter.
enum Prec : int { kIff = 1, kImplies, kOr, kAnd, kTemporal, kUnary, kPrimary };

inline int precedence(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImplies;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Until:
    case Op::Since:
    case Op::Release: return kTemporal;
    case Op::Trigger: return kUnary;  // printed as !(... S ...)
    case Op::Not:
    case Op::Next:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Globally:
    case Op::Eventually: return kUnary;
    default: return kPrimary;
  }
}

inline const char* symbol(Op op) {
  switch (op) {
    case Op::Iff: return " <-> ";
    case Op::Implies: return " -> ";
    case Op::Or: return " || ";
    case Op::And: return " && ";
    case Op::Until: return " U ";
    case Op::Since: return " S ";
    case Op::Release: return " R ";
    case Op::Not: return "!";
    case Op::Next: return "X ";
    case Op::Yesterday: return "Y ";
    case Op::Globally: return "G ";
    case Op::Eventually: return "F ";
    default: return "?";
  }
}

inline void print(const Formula& f, int context, std::string& out) {
  const int p = precedence(f.op());
  const bool parens = p < context;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom:
      if (needs_quotes(f.name())) {
        out += '"';
        out += f.name();
        out += '"';
      } else {
        out += f.name();
      }
      break;
    case Op::Not:
    case Op::Next:
    case Op::Yesterday:
    case Op::Globally:
    case Op::Eventually:
      out += symbol(f.op());
      print(f.lhs(), kUnary, out);
      break;
    case Op::WeakYesterday:
      // Z a == !Y !a
      out += "!Y !";
      print(f.lhs(), kUnary, out);
      break;
    case Op::Trigger:
      // a T b == !(!a S !b)
      out += "!(!";
      print(f.lhs(), kUnary, out);
      out += " S !";
      print(f.rhs(), kUnary, out);
      out += ')';
      break;
    case Op::And:
    case Op::Or:
    case Op::Iff:
      print(f.lhs(), p, out);
      out += symbol(f.op());
      print(f.rhs(), p + 1, out);
      break;
    case Op::Implies:
    case Op::Until:
    case Op::Since:
    case Op::Release:
      print(f.lhs(), p + 1, out);
      out += symbol(f.op());
      print(f.rhs(), p, out);
      break;
  }
  if (parens) out += ')';
}

enum class Tok { Word, Quoted, LParen, RParen, Bang, AndAnd, OrOr, Arrow, DoubleArrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Word, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (c == '"') {
      const auto close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw SyntaxError("unterminated quoted proposition", col);
      if (close == i + 1) throw SyntaxError("empty quoted proposition", col);
      out.push_back({Tok::Quoted, std::string(s.substr(i + 1, close - i - 1)), col});
      i = close + 1;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", col});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::Bang, "!", col});
      ++i;
    } else if (s.substr(i, 2) == "&&") {
      out.push_back({Tok::AndAnd, "&&", col});
      i += 2;
    } else if (s.substr(i, 2) == "||") {
      out.push_back({Tok::OrOr, "||", col});
      i += 2;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::DoubleArrow, "<->", col});
      i += 3;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", col);
    }
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().column); }

  bool peek_word(std::string_view w) const { return peek().kind == Tok::Word && peek().text == w; }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek().kind == Tok::DoubleArrow) {
      take();
      f = iff(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek().kind == Tok::Arrow) {
      take();
      return implies(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::OrOr) {
      take();
      f = disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_temporal();
    while (peek().kind == Tok::AndAnd) {
      take();
      f = conj(std::move(f), parse_temporal());
    }
    return f;
  }

  Formula parse_temporal() {
    Formula f = parse_unary();
    if (peek_word("U")) {
      take();
      return until(std::move(f), parse_temporal());
    }
    if (peek_word("S")) {
      take();
      return since(std::move(f), parse_temporal());
    }
    if (peek_word("R")) {
      take();
      return release(std::move(f), parse_temporal());
    }
    return f;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Bang) {
      take();
      return neg(parse_unary());
    }
    if (peek().kind == Tok::Word) {
      const std::string& w = peek().text;
      if (w == "X") return take(), next(parse_unary());
      if (w == "Y") return take(), yesterday(parse_unary());
      if (w == "G") return take(), globally(parse_unary());
      if (w == "F") return take(), eventually(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return f;
      }
      case Tok::Word:
        take();
        if (t.text == "true") return top();
        if (t.text == "false") return bottom();
        return atom(t.text);
      case Tok::Quoted:
        take();
        return atom(t.text);
      case Tok::End:
        fail("unexpected end of formula");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Renders `f` in the textual syntax with minimal parentheses;
/// `parse(to_string(f)) == f` for every formula without Z/T nodes.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, detail::kIff, out);
  return out;
}

inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace wfv::ltl
