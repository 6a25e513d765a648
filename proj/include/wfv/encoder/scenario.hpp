#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wfv/encoder/propid.hpp"
#include "wfv/workflow/format.hpp"
#include "wfv/workflow/validate.hpp"

namespace wfv::encoder {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two configurations run by n instances. A start position of nullopt leaves
/// the instance's start unconstrained; likewise for the reconfiguration.
struct Scenario {
  workflow::WorkflowGraph config1;
  workflow::WorkflowGraph config2;
  std::vector<std::optional<std::size_t>> starts;  // index j-1
  std::optional<std::size_t> reconfig_at;
  std::optional<std::size_t> bound;
  std::vector<PropId> accept;  // reachability targets; defaults derived from the graphs

  int instances() const noexcept { return static_cast<int>(starts.size()); }

  const workflow::WorkflowGraph& config(int i) const { return i == 1 ? config1 : config2; }

  /// Scenario-level accept targets, or each graph's accept nodes: config-1
  /// targets for instance 1 and config-2 targets for instance n.
  std::vector<PropId> accept_targets() const {
    if (!accept.empty()) return accept;
    std::vector<PropId> out;
    if (instances() < 1) return out;
    for (const auto& a : config1.accept()) out.push_back(PropId::activity(a, 1));
    for (const auto& a : config2.accept()) out.push_back(PropId::activity(a, instances()));
    return out;
  }
};

/// Checks both graphs and the requirements on how they share elements: a
/// node name used in both has the same kind, a label used in both denotes
/// the same edge. Throws ScenarioError listing every problem.
inline void check_scenario(const Scenario& s) {
  std::vector<std::string> problems;
  if (s.instances() < 1) problems.push_back("scenario needs at least one instance");
  for (int i = 1; i <= 2; ++i) {
    for (const auto& v : workflow::validate(s.config(i)).violations) {
      problems.push_back("config" + std::to_string(i) + ": " + v.message + " (" + workflow::rule_id(v.rule) + ")");
    }
  }
  for (const auto& [name, n] : s.config1.nodes()) {
    if (s.config2.has_node(name) && s.config2.node(name).kind != n.kind) {
      problems.push_back("node '" + name + "' has different kinds in the two configurations");
    }
  }
  for (const auto& [label, e] : s.config1.edges()) {
    if (s.config2.edges().count(label) && !(s.config2.edge(label) == e)) {
      problems.push_back("transition label '" + label + "' denotes different edges in the two configurations");
    }
  }
  for (const auto& a : s.accept) {
    const bool known = a.kind == PropId::Kind::Activity && a.instance >= 1 && a.instance <= s.instances() &&
                       (s.config1.has_node(a.name) || s.config2.has_node(a.name));
    if (!known) problems.push_back("accept target '" + a.render() + "' is not an activity of the scenario");
  }
  if (!problems.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ScenarioError(msg);
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ScenarioError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline workflow::WorkflowGraph load_workflow(const std::filesystem::path& p) {
  const std::string text = read_file(p);
  try {
    return workflow::parse_workflow(text);
  } catch (const workflow::ParseError& e) {
    throw ScenarioError(p.string() + ":" + e.what());
  }
}

/// Scenario file, `;`-terminated statements, `#` comments:
///   config1 <path>;  config2 <path>;          paths relative to the file
///   instance <j> start <p|free>;              j = 1..n, contiguous
///   reconfig at <r|free>;
///   bound <k>;
///   accept <Activity#j>;                      optional, repeatable
inline Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = ".") {
  Scenario s;
  std::map<int, std::optional<std::size_t>> starts;
  bool have1 = false, have2 = false, have_reconfig = false;
  std::size_t line = 1;
  std::size_t stmt_line = 1;

  auto fail = [&](const std::string& msg) -> void {
    throw ScenarioError("scenario line " + std::to_string(stmt_line) + ": " + msg);
  };
  auto position = [&](const std::string& tok) -> std::optional<std::size_t> {
    if (tok == "free") return std::nullopt;
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail("expected a position or 'free', got '" + tok + "'");
    return v;
  };

  auto run = [&](const std::vector<std::string>& w) {
    if (w.empty()) return;
    const std::string& k = w[0];
    if ((k == "config1" || k == "config2") && w.size() == 2) {
      auto& flag = k == "config1" ? have1 : have2;
      if (flag) fail("duplicate " + k);
      flag = true;
      const std::filesystem::path p = std::filesystem::path(w[1]).is_absolute() ? std::filesystem::path(w[1]) : base_dir / w[1];
      (k == "config1" ? s.config1 : s.config2) = load_workflow(p);
    } else if (k == "instance" && w.size() == 4 && w[2] == "start") {
      auto j = detail::parse_index(w[1]);
      if (!j || *j < 1) fail("instance index must be a positive integer");
      if (!starts.emplace(*j, position(w[3])).second) fail("instance " + w[1] + " declared twice");
    } else if (k == "reconfig" && w.size() == 3 && w[1] == "at") {
      if (have_reconfig) fail("duplicate reconfig");
      have_reconfig = true;
      s.reconfig_at = position(w[2]);
    } else if (k == "bound" && w.size() == 2) {
      auto b = position(w[1]);
      if (!b || *b < 1) fail("bound must be a positive integer");
      s.bound = b;
    } else if (k == "accept" && w.size() == 2) {
      auto id = parse_propid(w[1].rfind("A:", 0) == 0 ? w[1] : "A:" + w[1]);
      if (!id) fail("accept expects <Activity>#<j>, got '" + w[1] + "'");
      s.accept.push_back(*id);
    } else {
      fail("unrecognized statement '" + k + "'");
    }
  };

  std::vector<std::string> words;
  std::string cur;
  bool comment = false;
  auto flush_word = [&] {
    if (!cur.empty()) words.push_back(std::move(cur)), cur.clear();
  };
  for (char c : text) {
    if (comment) {
      if (c == '\n') comment = false, ++line;
      continue;
    }
    if (c == '#' && cur.empty()) {
      comment = true;
      continue;
    }
    if (c == ';') {
      flush_word();
      run(words);
      words.clear();
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      flush_word();
      if (c == '\n') ++line;
      continue;
    }
    if (words.empty() && cur.empty()) stmt_line = line;
    cur += c;
  }
  flush_word();
  if (!words.empty()) fail("statement not terminated by ';'");
  if (!have1 || !have2) throw ScenarioError("scenario must name config1 and config2");
  int expect = 1;
  for (const auto& [j, p] : starts) {
    if (j != expect++) throw ScenarioError("instances must be numbered 1..n without gaps");
    s.starts.push_back(p);
  }
  check_scenario(s);
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& p) {
  return parse_scenario(read_file(p), p.parent_path().empty() ? std::filesystem::path(".") : p.parent_path());
}

}  // namespace wfv::encoder
