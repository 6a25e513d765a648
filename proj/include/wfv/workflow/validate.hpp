#pragma once

#include <string>
#include <vector>

#include "wfv/workflow/graph.hpp"

namespace wfv::workflow {

enum class Rule {
  MissingStart,
  MultipleStart,
  MissingEnd,
  MultipleEnd,
  NoOutgoing,       // out-degree 0 at a node other than End
  NoIncoming,       // in-degree 0 at a node other than Start
  StartHasIncoming,
  EndHasOutgoing,
  ConditionalArity,  // exactly 2 outgoing, 1 incoming
  ForkArity,         // >= 2 outgoing, 1 incoming
  JoinArity,         // >= 2 incoming, 1 outgoing
  UnknownAccept,
};

inline const char* rule_id(Rule r) noexcept {
  switch (r) {
    case Rule::MissingStart: return "missing-start";
    case Rule::MultipleStart: return "multiple-start";
    case Rule::MissingEnd: return "missing-end";
    case Rule::MultipleEnd: return "multiple-end";
    case Rule::NoOutgoing: return "out-degree-0";
    case Rule::NoIncoming: return "in-degree-0";
    case Rule::StartHasIncoming: return "start-has-incoming";
    case Rule::EndHasOutgoing: return "end-has-outgoing";
    case Rule::ConditionalArity: return "conditional-arity";
    case Rule::ForkArity: return "fork-arity";
    case Rule::JoinArity: return "join-arity";
    case Rule::UnknownAccept: return "unknown-accept";
  }
  return "?";
}

struct Violation {
  Rule rule;
  std::string element;  // node name, or empty for graph-level rules
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Rule r) const {
    for (const auto& v : violations)
      if (v.rule == r) return true;
    return false;
  }
};

inline ValidationReport validate(const WorkflowGraph& g) {
  ValidationReport rep;
  auto add = [&](Rule r, const std::string& el, std::string msg) { rep.violations.push_back({r, el, std::move(msg)}); };

  const auto starts = g.nodes_of_kind(NodeKind::Start);
  const auto ends = g.nodes_of_kind(NodeKind::End);
  if (starts.empty()) add(Rule::MissingStart, "", "no start node");
  if (starts.size() > 1) add(Rule::MultipleStart, "", std::to_string(starts.size()) + " start nodes");
  if (ends.empty()) add(Rule::MissingEnd, "", "no end node");
  if (ends.size() > 1) add(Rule::MultipleEnd, "", std::to_string(ends.size()) + " end nodes");

  for (const auto& [name, n] : g.nodes()) {
    const std::size_t out = g.out_degree(name);
    const std::size_t in = g.in_degree(name);
    if (n.kind != NodeKind::End && out == 0) add(Rule::NoOutgoing, name, "out-degree 0 at non-End node '" + name + "'");
    if (n.kind != NodeKind::Start && in == 0) add(Rule::NoIncoming, name, "in-degree 0 at non-Start node '" + name + "'");
    switch (n.kind) {
      case NodeKind::Start:
        if (in > 0) add(Rule::StartHasIncoming, name, "start node '" + name + "' has incoming transitions");
        break;
      case NodeKind::End:
        if (out > 0) add(Rule::EndHasOutgoing, name, "end node '" + name + "' has outgoing transitions");
        break;
      case NodeKind::Conditional:
        if (out != 2 || in > 1) {
          add(Rule::ConditionalArity, name,
              "conditional '" + name + "' needs 2 outgoing and 1 incoming, has " + std::to_string(out) + "/" +
                  std::to_string(in));
        }
        break;
      case NodeKind::SplitFork:
        if (out < 2 || in > 1) {
          add(Rule::ForkArity, name,
              "fork '" + name + "' needs >= 2 outgoing and 1 incoming, has " + std::to_string(out) + "/" +
                  std::to_string(in));
        }
        break;
      case NodeKind::SplitJoin:
        if (in < 2 || out > 1) {
          add(Rule::JoinArity, name,
              "join '" + name + "' needs >= 2 incoming and 1 outgoing, has " + std::to_string(in) + "/" +
                  std::to_string(out));
        }
        break;
      case NodeKind::Activity: break;
    }
  }
  for (const auto& a : g.accept()) {
    if (!g.has_node(a)) add(Rule::UnknownAccept, a, "accept names unknown node '" + a + "'");
  }
  return rep;
}

}  // namespace wfv::workflow
