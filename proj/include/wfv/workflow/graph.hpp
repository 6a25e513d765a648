#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfv::workflow {

enum class NodeKind { Start, End, Activity, Conditional, SplitFork, SplitJoin };

inline const char* keyword(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Start: return "start";
    case NodeKind::End: return "end";
    case NodeKind::Activity: return "activity";
    case NodeKind::Conditional: return "cond";
    case NodeKind::SplitFork: return "fork";
    case NodeKind::SplitJoin: return "join";
  }
  return "?";
}

struct Node {
  std::string name;
  NodeKind kind = NodeKind::Activity;
  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string label;
  std::string source;
  std::string target;
  bool operator==(const Edge&) const = default;
};

class UnknownNode : public std::out_of_range {
 public:
  explicit UnknownNode(const std::string& name) : std::out_of_range("unknown node '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DuplicateName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Directed graph with uniquely named nodes and uniquely labeled edges.
/// Iteration over nodes and edges is ordered by name and label.
class WorkflowGraph {
 public:
  explicit WorkflowGraph(std::string name = "workflow") : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  void add_node(const std::string& name, NodeKind kind) {
    if (!nodes_.emplace(name, Node{name, kind}).second) throw DuplicateName("duplicate node '" + name + "'");
  }

  /// Both endpoints must already exist.
  void add_edge(const std::string& label, const std::string& source, const std::string& target) {
    if (edges_.count(label)) throw DuplicateName("duplicate transition label '" + label + "'");
    if (!nodes_.count(source)) throw UnknownNode(source);
    if (!nodes_.count(target)) throw UnknownNode(target);
    edges_.emplace(label, Edge{label, source, target});
    out_[source].push_back(label);
    in_[target].push_back(label);
    sort_unique(out_[source]);
    sort_unique(in_[target]);
  }

  void add_accept(const std::string& activity) { accept_.push_back(activity), sort_unique(accept_); }

  bool has_node(const std::string& name) const { return nodes_.count(name) > 0; }
  const Node& node(const std::string& name) const {
    auto it = nodes_.find(name);
    if (it == nodes_.end()) throw UnknownNode(name);
    return it->second;
  }
  const Edge& edge(const std::string& label) const { return edges_.at(label); }

  const std::map<std::string, Node>& nodes() const noexcept { return nodes_; }
  const std::map<std::string, Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& accept() const noexcept { return accept_; }

  /// Edges leaving `node`, by label.
  std::vector<Edge> outgoing(const std::string& n) const { return collect(out_, n); }
  /// Edges entering `node`, by label.
  std::vector<Edge> incoming(const std::string& n) const { return collect(in_, n); }

  std::size_t out_degree(const std::string& n) const { return labels(out_, n).size(); }
  std::size_t in_degree(const std::string& n) const { return labels(in_, n).size(); }

  std::vector<std::string> nodes_of_kind(NodeKind k) const {
    std::vector<std::string> out;
    for (const auto& [name, n] : nodes_)
      if (n.kind == k) out.push_back(name);
    return out;
  }

  bool operator==(const WorkflowGraph& o) const {
    return name_ == o.name_ && nodes_ == o.nodes_ && edges_ == o.edges_ && accept_ == o.accept_;
  }

 private:
  using Index = std::map<std::string, std::vector<std::string>>;

  static void sort_unique(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  const std::vector<std::string>& labels(const Index& idx, const std::string& n) const {
    static const std::vector<std::string> none;
    if (!nodes_.count(n)) throw UnknownNode(n);
    auto it = idx.find(n);
    return it == idx.end() ? none : it->second;
  }

  std::vector<Edge> collect(const Index& idx, const std::string& n) const {
    std::vector<Edge> out;
    for (const auto& l : labels(idx, n)) out.push_back(edges_.at(l));
    return out;
  }

  std::string name_;
  std::map<std::string, Node> nodes_;
  std::map<std::string, Edge> edges_;
  std::vector<std::string> accept_;
  Index out_;
  Index in_;
};

}  // namespace wfv::workflow
