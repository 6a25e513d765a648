#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wfv/sat/cnf.hpp"

namespace wfv::sat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(const std::string& what, std::size_t line)
      : std::runtime_error("dimacs line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// `p cnf <n> <m>` header, one 0-terminated clause per line, LF newlines.
/// An optional single `c` line precedes the header.
inline std::string export_dimacs(const Cnf& f, std::string_view comment = {}) {
  std::string out;
  out.reserve(f.num_literals() * 7 + f.num_clauses() * 2 + 32);
  if (!comment.empty()) {
    out += "c ";
    out += comment;
    out += '\n';
  }
  const std::size_t m = f.num_clauses() + (f.has_empty_clause() ? 1 : 0);
  out += "p cnf " + std::to_string(f.num_vars()) + " " + std::to_string(m) + "\n";
  char buf[16];
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    for (int l : f.clause(c)) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l);
      out.append(buf, end);
      out += ' ';
    }
    out += "0\n";
  }
  if (f.has_empty_clause()) out += "0\n";
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long to_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw DimacsError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return v;
}

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++lineno;
    fn(text.substr(pos, end - pos), lineno);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace detail

/// Parses a DIMACS CNF file. Clauses may span lines; `c` lines are skipped.
inline Cnf parse_dimacs(std::string_view text) {
  std::optional<Cnf> cnf;
  std::size_t declared = 0;
  std::size_t seen = 0;
  std::vector<int> pending;
  std::size_t last_line = 0;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    last_line = no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0] == "c" || toks[0].starts_with("c")) return;
    if (toks[0] == "p") {
      if (cnf) throw DimacsError("duplicate header", no);
      if (toks.size() != 4 || toks[1] != "cnf") throw DimacsError("malformed header", no);
      const auto n = detail::to_int(toks[2], no);
      const auto m = detail::to_int(toks[3], no);
      if (n < 0 || m < 0) throw DimacsError("negative counts in header", no);
      cnf.emplace(static_cast<int>(n));
      declared = static_cast<std::size_t>(m);
      return;
    }
    if (!cnf) throw DimacsError("clause before header", no);
    for (auto tok : toks) {
      const auto v = detail::to_int(tok, no);
      if (v == 0) {
        try {
          cnf->add_clause(pending);
        } catch (const std::out_of_range& e) {
          throw DimacsError(e.what(), no);
        }
        pending.clear();
        ++seen;
      } else {
        pending.push_back(static_cast<int>(v));
      }
    }
  });
  if (!cnf) throw DimacsError("missing header", last_line);
  if (!pending.empty()) throw DimacsError("last clause not terminated by 0", last_line);
  if (seen != declared) {
    throw DimacsError("header declares " + std::to_string(declared) + " clauses, found " + std::to_string(seen),
                      last_line);
  }
  return *std::move(cnf);
}

enum class ModelStatus { Satisfiable, Unsatisfiable, Unknown };

struct SolverOutput {
  ModelStatus status = ModelStatus::Unknown;
  std::optional<Assignment> model;
};

/// Parses SAT-competition solver output (`s` status line, `v` value lines,
/// `c` comments). Variables not mentioned in `v` lines default to false. The
/// model is sized to max(num_vars, largest variable mentioned).
inline SolverOutput parse_solver_output(std::string_view text, int num_vars = 0) {
  SolverOutput out;
  std::vector<long long> values;
  bool terminated = false;
  bool any_v = false;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0] == "c") return;
    if (toks[0] == "s") {
      const std::string rest = toks.size() > 1 ? std::string(toks[1]) : std::string();
      if (rest == "SATISFIABLE") {
        out.status = ModelStatus::Satisfiable;
      } else if (rest == "UNSATISFIABLE") {
        out.status = ModelStatus::Unsatisfiable;
      } else if (rest == "UNKNOWN") {
        out.status = ModelStatus::Unknown;
      } else {
        throw DimacsError("unknown status line", no);
      }
      return;
    }
    if (toks[0] == "v") {
      if (terminated) throw DimacsError("values after terminating 0", no);
      any_v = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto v = detail::to_int(toks[i], no);
        if (v == 0) {
          terminated = true;
          break;
        }
        values.push_back(v);
      }
      return;
    }
    throw DimacsError("unexpected line '" + std::string(line) + "'", no);
  });
  if (any_v) {
    if (out.status == ModelStatus::Unknown) out.status = ModelStatus::Satisfiable;
    if (out.status == ModelStatus::Unsatisfiable) throw DimacsError("model given for an unsatisfiable result", 0);
    long long maxv = num_vars;
    for (auto v : values) maxv = std::max(maxv, v < 0 ? -v : v);
    Assignment a(static_cast<int>(maxv));
    for (auto v : values) a.set(static_cast<int>(v < 0 ? -v : v), v > 0);
    out.model = std::move(a);
  } else if (out.status == ModelStatus::Satisfiable) {
    throw DimacsError("satisfiable result without value lines", 0);
  }
  return out;
}

/// Parses `v` lines into an assignment; throws DimacsError when the text
/// carries no model.
inline Assignment parse_dimacs_model(std::string_view text, int num_vars = 0) {
  auto out = parse_solver_output(text, num_vars);
  if (!out.model) throw DimacsError("no model in solver output", 0);
  return *std::move(out.model);
}

/// Renders an assignment as competition-style output.
inline std::string format_model(const Assignment& a) {
  std::string out = "s SATISFIABLE\nv";
  int on_line = 0;
  for (int v = 1; v <= a.num_vars(); ++v) {
    if (on_line == 10) {
      out += "\nv";
      on_line = 0;
    }
    out += ' ';
    out += std::to_string(a.value(v) ? v : -v);
    ++on_line;
  }
  out += " 0\n";
  return out;
}

}  // namespace wfv::sat
