#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfv/workflow/graph.hpp"

namespace wfv::workflow {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Duplicate, Dangling };

  ParseError(Kind kind, const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class WorkflowLexer {
 public:
  explicit WorkflowLexer(std::string_view s) : s_(s) {}

  struct Tok {
    enum Type { Name, Colon, Semi, Arrow, Eof } type;
    std::string text;
    std::size_t line, col;
  };

  Tok next() {
    skip();
    const std::size_t l = line_, c = col_;
    if (pos_ >= s_.size()) return {Tok::Eof, "", l, c};
    const char ch = s_[pos_];
    if (ch == ':') return advance(1), Tok{Tok::Colon, ":", l, c};
    if (ch == ';') return advance(1), Tok{Tok::Semi, ";", l, c};
    if (ch == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') return advance(2), Tok{Tok::Arrow, "->", l, c};
    if (name_start(ch)) {
      const std::size_t b = pos_;
      while (pos_ < s_.size() && name_char(s_[pos_])) advance(1);
      return {Tok::Name, std::string(s_.substr(b, pos_ - b)), l, c};
    }
    throw ParseError(ParseError::Kind::Syntax, std::string("unexpected character '") + ch + "'", l, c);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

}  // namespace detail

/// Parses the line-oriented workflow format (see docs/formats.md). Edges may
/// mention nodes declared later in the file.
inline WorkflowGraph parse_workflow(std::string_view text) {
  using Tok = detail::WorkflowLexer::Tok;
  detail::WorkflowLexer lex(text);
  WorkflowGraph g;
  struct PendingEdge {
    std::string label, src, dst;
    std::size_t line, col, src_line, src_col, dst_line, dst_col;
  };
  std::vector<PendingEdge> edges;
  std::vector<Tok> accepts;
  std::map<std::string, std::size_t> labels_seen;
  bool named = false;

  auto expect = [&](Tok::Type t, const char* what) {
    Tok tok = lex.next();
    if (tok.type != t) {
      throw ParseError(ParseError::Kind::Syntax,
                       std::string("expected ") + what + (tok.type == Tok::Eof ? " before end of input" : ", got '" + tok.text + "'"),
                       tok.line, tok.col);
    }
    return tok;
  };

  for (;;) {
    Tok kw = lex.next();
    if (kw.type == Tok::Eof) break;
    if (kw.type != Tok::Name) throw ParseError(ParseError::Kind::Syntax, "expected a declaration", kw.line, kw.col);
    const std::string& k = kw.text;
    if (k == "trans") {
      Tok label = expect(Tok::Name, "transition label");
      expect(Tok::Colon, "':'");
      Tok src = expect(Tok::Name, "source node");
      expect(Tok::Arrow, "'->'");
      Tok dst = expect(Tok::Name, "target node");
      expect(Tok::Semi, "';'");
      if (!labels_seen.emplace(label.text, label.line).second) {
        throw ParseError(ParseError::Kind::Duplicate, "duplicate transition label '" + label.text + "'", label.line,
                         label.col);
      }
      edges.push_back({label.text, src.text, dst.text, label.line, label.col, src.line, src.col, dst.line, dst.col});
      continue;
    }
    if (k == "accept") {
      accepts.push_back(expect(Tok::Name, "activity name"));
      expect(Tok::Semi, "';'");
      continue;
    }
    if (k == "workflow") {
      Tok n = expect(Tok::Name, "workflow name");
      expect(Tok::Semi, "';'");
      if (named) throw ParseError(ParseError::Kind::Duplicate, "workflow name given twice", n.line, n.col);
      g.set_name(n.text);
      named = true;
      continue;
    }
    NodeKind kind;
    if (k == "start") kind = NodeKind::Start;
    else if (k == "end") kind = NodeKind::End;
    else if (k == "activity") kind = NodeKind::Activity;
    else if (k == "cond") kind = NodeKind::Conditional;
    else if (k == "fork") kind = NodeKind::SplitFork;
    else if (k == "join") kind = NodeKind::SplitJoin;
    else throw ParseError(ParseError::Kind::Syntax, "unknown declaration '" + k + "'", kw.line, kw.col);
    Tok n = expect(Tok::Name, "node name");
    expect(Tok::Semi, "';'");
    try {
      g.add_node(n.text, kind);
    } catch (const DuplicateName&) {
      throw ParseError(ParseError::Kind::Duplicate, "duplicate node '" + n.text + "'", n.line, n.col);
    }
  }

  for (const auto& e : edges) {
    if (!g.has_node(e.src))
      throw ParseError(ParseError::Kind::Dangling, "transition '" + e.label + "' leaves undeclared node '" + e.src + "'",
                       e.src_line, e.src_col);
    if (!g.has_node(e.dst))
      throw ParseError(ParseError::Kind::Dangling, "transition '" + e.label + "' enters undeclared node '" + e.dst + "'",
                       e.dst_line, e.dst_col);
    g.add_edge(e.label, e.src, e.dst);
  }
  for (const auto& a : accepts) g.add_accept(a.text);
  return g;
}

/// Canonical text: name, declarations grouped by kind, edges by label, then
/// accept lines. parse_workflow(serialize_workflow(g)) == g.
inline std::string serialize_workflow(const WorkflowGraph& g) {
  std::string out = "workflow " + g.name() + ";\n";
  for (NodeKind k : {NodeKind::Start, NodeKind::End, NodeKind::Activity, NodeKind::Conditional, NodeKind::SplitFork,
                     NodeKind::SplitJoin}) {
    for (const auto& n : g.nodes_of_kind(k)) out += std::string(keyword(k)) + " " + n + ";\n";
  }
  for (const auto& [label, e] : g.edges()) out += "trans " + label + ": " + e.source + " -> " + e.target + ";\n";
  for (const auto& a : g.accept()) out += "accept " + a + ";\n";
  return out;
}

}  // namespace wfv::workflow
