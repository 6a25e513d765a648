#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wfv/encoder/propid.hpp"
#include "wfv/ltl/formula.hpp"
#include "wfv/workflow/graph.hpp"

namespace wfv::encoder {

using ltl::Formula;
using workflow::NodeKind;
using workflow::WorkflowGraph;

/// One emitted formula and a short description of the rule that produced it.
struct Rule {
  Formula formula;
  std::string origin;
  bool operator==(const Rule&) const = default;
};

class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Formula act(const std::string& node, int j) { return PropId::activity(node, j).atom(); }
inline Formula trans(const std::string& label, int j) { return PropId::transition(label, j).atom(); }

namespace detail {

inline std::vector<Formula> transition_atoms(const std::vector<workflow::Edge>& edges, int j) {
  std::vector<Formula> out;
  for (const auto& e : edges) out.push_back(trans(e.label, j));
  return out;
}

inline std::string tag(const std::string& rule, const std::string& subject) { return "[" + rule + "] " + subject; }

inline std::string inst(const std::string& name, int j) { return name + "#" + std::to_string(j); }

}  // namespace detail

/// A => (A && !t_out) U t_out, and t => Y A && !A for each outgoing t.
inline std::vector<Rule> encode_out_block(const WorkflowGraph& g, const std::string& node, int j) {
  const auto out = g.outgoing(node);
  if (out.empty()) throw EncodingError("node '" + node + "' has no outgoing transition");
  const Formula a = act(node, j);
  const Formula t_out = ltl::disj_all(detail::transition_atoms(out, j));
  std::vector<Rule> rules;
  rules.push_back({ltl::implies(a, ltl::until(ltl::conj(a, ltl::neg(t_out)), t_out)),
                   detail::tag("lasts-until-exit", detail::inst(node, j))});
  for (const auto& e : out) {
    rules.push_back({ltl::implies(trans(e.label, j), ltl::conj(ltl::yesterday(a), ltl::neg(a))),
                     detail::tag("fires-after", detail::inst(e.label, j) + " of " + detail::inst(node, j))});
  }
  return rules;
}

/// A => (A && !t_in) S t_in, and t => X A && !A for each incoming t.
inline std::vector<Rule> encode_in_block(const WorkflowGraph& g, const std::string& node, int j) {
  const auto in = g.incoming(node);
  if (in.empty()) throw EncodingError("node '" + node + "' has no incoming transition");
  const Formula a = act(node, j);
  const Formula t_in = ltl::disj_all(detail::transition_atoms(in, j));
  std::vector<Rule> rules;
  rules.push_back({ltl::implies(a, ltl::since(ltl::conj(a, ltl::neg(t_in)), t_in)),
                   detail::tag("lasts-since-entry", detail::inst(node, j))});
  for (const auto& e : in) {
    rules.push_back({ltl::implies(trans(e.label, j), ltl::conj(ltl::next(a), ltl::neg(a))),
                     detail::tag("fires-before", detail::inst(e.label, j) + " of " + detail::inst(node, j))});
  }
  return rules;
}

/// c => !Y c && !X c.
inline Rule encode_punctuality(const std::string& node, int j) {
  const Formula c = act(node, j);
  return {ltl::implies(c, ltl::conj(ltl::neg(ltl::yesterday(c)), ltl::neg(ltl::next(c)))),
          detail::tag("punctual", detail::inst(node, j))};
}

/// Both blocks, then t_1 => !t_2 and punctuality.
inline std::vector<Rule> encode_conditional(const WorkflowGraph& g, const std::string& node, int j) {
  if (g.node(node).kind != NodeKind::Conditional) throw EncodingError("'" + node + "' is not a conditional");
  const auto out = g.outgoing(node);
  if (out.size() != 2) {
    throw EncodingError("conditional '" + node + "' must have exactly 2 outgoing transitions, has " +
                        std::to_string(out.size()));
  }
  std::vector<Rule> rules = encode_in_block(g, node, j);
  for (auto& r : encode_out_block(g, node, j)) rules.push_back(std::move(r));
  rules.push_back({ltl::implies(trans(out[0].label, j), ltl::neg(trans(out[1].label, j))),
                   detail::tag("exclusive-branches", detail::inst(node, j))});
  rules.push_back(encode_punctuality(node, j));
  return rules;
}

/// Both blocks, pairwise t_a <=> t_b over the fork's outgoing or the join's
/// incoming transitions, and punctuality.
inline std::vector<Rule> encode_split(const WorkflowGraph& g, const std::string& node, int j) {
  const NodeKind kind = g.node(node).kind;
  if (kind != NodeKind::SplitFork && kind != NodeKind::SplitJoin) {
    throw EncodingError("'" + node + "' is not a split");
  }
  const bool fork = kind == NodeKind::SplitFork;
  const auto side = fork ? g.outgoing(node) : g.incoming(node);
  const auto other = fork ? g.incoming(node) : g.outgoing(node);
  if (side.size() < 2 || other.size() != 1) {
    throw EncodingError(std::string(fork ? "fork" : "join") + " '" + node + "' has " + std::to_string(side.size()) +
                        (fork ? " outgoing" : " incoming") + " and " + std::to_string(other.size()) +
                        (fork ? " incoming" : " outgoing") + " transitions");
  }
  std::vector<Rule> rules = encode_in_block(g, node, j);
  for (auto& r : encode_out_block(g, node, j)) rules.push_back(std::move(r));
  for (std::size_t a = 0; a < side.size(); ++a) {
    for (std::size_t b = a + 1; b < side.size(); ++b) {
      rules.push_back({ltl::iff(trans(side[a].label, j), trans(side[b].label, j)),
                       detail::tag(fork ? "simultaneous-fork" : "simultaneous-join", detail::inst(node, j))});
    }
  }
  rules.push_back(encode_punctuality(node, j));
  return rules;
}

/// Every rule that applies to `node`: Start gets only the outgoing block, End
/// only the incoming block.
inline std::vector<Rule> encode_node(const WorkflowGraph& g, const std::string& node, int j) {
  switch (g.node(node).kind) {
    case NodeKind::Start: return encode_out_block(g, node, j);
    case NodeKind::End: return encode_in_block(g, node, j);
    case NodeKind::Conditional: return encode_conditional(g, node, j);
    case NodeKind::SplitFork:
    case NodeKind::SplitJoin: return encode_split(g, node, j);
    case NodeKind::Activity: {
      auto rules = encode_in_block(g, node, j);
      for (auto& r : encode_out_block(g, node, j)) rules.push_back(std::move(r));
      return rules;
    }
  }
  return {};
}

/// The formula set of one configuration for instance j, nodes by name.
inline std::vector<Rule> encode_config(const WorkflowGraph& g, int j) {
  std::vector<Rule> rules;
  for (const auto& [name, n] : g.nodes()) {
    for (auto& r : encode_node(g, name, j)) rules.push_back(std::move(r));
  }
  return rules;
}

/// Propositions of all nodes (by name) and transitions (by label) of g.
inline std::vector<PropId> elements(const WorkflowGraph& g, int j) {
  std::vector<PropId> out;
  for (const auto& [name, n] : g.nodes()) out.push_back(PropId::activity(name, j));
  for (const auto& [label, e] : g.edges()) out.push_back(PropId::transition(label, j));
  return out;
}

}  // namespace wfv::encoder
