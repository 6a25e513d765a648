#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "wfv/ltl/formula.hpp"
#include "wfv/ltl/lasso.hpp"
#include "wfv/ltl/nnf.hpp"
#include "wfv/sat/cnf.hpp"

namespace wfv::bsc {

using ltl::Formula;
using ltl::Op;

/// Hash-consed NNF subformula.
struct DagNode {
  Op op = Op::True;
  std::string name;  // atoms only
  int a = -1;
  int b = -1;
  int past_height = 0;
};

/// Propositional encoding of "phi has a lasso model with positions 0..k".
///
/// Each non-literal node n owns one variable per position i and copy
/// d in 0..past_height(n). Copy 0 is the first pass over 0..k; copy d >= 1
/// stands for the (d+1)-th pass over the loop, where position loop follows
/// position k of copy d-1. Past values stabilize after past_height(n)
/// passes, so copy past_height(n) loops onto itself. Atoms have one variable
/// per position, shared by all copies.
class BoundedEncoding {
 public:
  std::size_t bound() const noexcept { return k_; }
  const sat::Cnf& cnf() const noexcept { return cnf_; }
  const std::vector<DagNode>& dag() const noexcept { return dag_; }
  int root() const noexcept { return root_; }

  /// Variable of proposition `name` at position i, or 0 when the proposition
  /// does not occur in the formula.
  int atom_var(const std::string& name, std::size_t i) const {
    auto it = atom_vars_.find(name);
    return it == atom_vars_.end() ? 0 : it->second.at(i);
  }
  const std::map<std::string, std::vector<int>>& atom_vars() const noexcept { return atom_vars_; }

  /// Loop selector l_j for j in 1..k.
  int loop_var(std::size_t j) const { return loop_vars_.at(j - 1); }

  /// Literal of DAG node n at position i, copy d (clamped to its height).
  int literal_of(int n, std::size_t i, int d = 0) const {
    const DagNode& node = dag_[static_cast<std::size_t>(n)];
    switch (node.op) {
      case Op::True: return true_var_;
      case Op::False: return -true_var_;
      case Op::Atom: return atom_vars_.at(node.name)[i];
      case Op::Not: return -literal_of(node.a, i, d);
      default: break;
    }
    const int c = std::min(d, node.past_height);
    return node_vars_[static_cast<std::size_t>(n)] + static_cast<int>(static_cast<std::size_t>(c) * (k_ + 1) + i);
  }

 private:
  friend BoundedEncoding encode_bounded(const Formula&, std::size_t);

  std::size_t k_ = 0;
  sat::Cnf cnf_;
  std::vector<DagNode> dag_;
  int root_ = -1;
  int true_var_ = 0;
  std::map<std::string, std::vector<int>> atom_vars_;
  std::vector<int> loop_vars_;
  std::vector<int> node_vars_;  // base variable per node, 0 for literals
};

namespace detail {

class DagBuilder {
 public:
  explicit DagBuilder(std::vector<DagNode>& dag) : dag_(dag) {}

  int add(const Formula& root) {
    ltl::for_each_node(root, [&](const Formula& f) {
      DagNode n;
      n.op = f.op();
      if (f.is(Op::Atom)) n.name = f.name();
      if (f.arity() >= 1) n.a = of_.at(f.operand(0).id());
      if (f.arity() >= 2) n.b = of_.at(f.operand(1).id());
      of_[f.id()] = intern(std::move(n));
    });
    return of_.at(root.id());
  }

 private:
  int intern(DagNode n) {
    auto key = std::make_tuple(n.op, n.name, n.a, n.b);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    int h = 0;
    if (n.a >= 0) h = std::max(h, dag_[static_cast<std::size_t>(n.a)].past_height);
    if (n.b >= 0) h = std::max(h, dag_[static_cast<std::size_t>(n.b)].past_height);
    n.past_height = h + (ltl::is_past(n.op) ? 1 : 0);
    const int id = static_cast<int>(dag_.size());
    dag_.push_back(std::move(n));
    table_.emplace(std::move(key), id);
    return id;
  }

  std::vector<DagNode>& dag_;
  std::map<std::tuple<Op, std::string, int, int>, int> table_;
  std::unordered_map<const void*, int> of_;
};

}  // namespace detail

/// Builds the clause set. The formula is put into NNF first; the clauses
/// are implications from node literals to their meaning (one polarity
/// suffices since NNF is monotone in every subformula).
///
/// Clauses at copy d >= 1 and position i < loop describe states that are
/// never visited; nothing meaningful refers to them, so they can always be
/// satisfied by setting those variables false.
inline BoundedEncoding encode_bounded(const Formula& phi, std::size_t k) {
  if (k < 1) throw std::invalid_argument("bound k must be at least 1");
  BoundedEncoding e;
  e.k_ = k;
  e.root_ = detail::DagBuilder(e.dag_).add(ltl::nnf(phi));

  sat::Cnf& cnf = e.cnf_;
  e.true_var_ = cnf.new_var();
  cnf.add_clause({e.true_var_});

  for (const auto& n : e.dag_) {
    if (n.op != Op::Atom || e.atom_vars_.count(n.name)) continue;
    auto& vars = e.atom_vars_[n.name];
    for (std::size_t i = 0; i <= k; ++i) vars.push_back(cnf.new_var());
  }

  // Loop selectors with an "inloop" prefix chain for exactly-one.
  std::vector<int> inloop(k + 1, 0);
  for (std::size_t j = 1; j <= k; ++j) e.loop_vars_.push_back(cnf.new_var());
  for (std::size_t j = 1; j <= k; ++j) inloop[j] = cnf.new_var();
  {
    std::vector<int> some;
    for (std::size_t j = 1; j <= k; ++j) {
      const int lj = e.loop_var(j);
      some.push_back(lj);
      if (j == 1) {
        cnf.add_clause({-inloop[1], lj});
        cnf.add_clause({inloop[1], -lj});
      } else {
        cnf.add_clause({-inloop[j], inloop[j - 1], lj});
        cnf.add_clause({inloop[j], -inloop[j - 1]});
        cnf.add_clause({inloop[j], -lj});
        cnf.add_clause({-lj, -inloop[j - 1]});
      }
    }
    cnf.add_clause(some);
  }

  e.node_vars_.assign(e.dag_.size(), 0);
  for (std::size_t n = 0; n < e.dag_.size(); ++n) {
    const Op op = e.dag_[n].op;
    if (op == Op::True || op == Op::False || op == Op::Atom || op == Op::Not) continue;
    const std::size_t count = static_cast<std::size_t>(e.dag_[n].past_height + 1) * (k + 1);
    e.node_vars_[n] = cnf.num_vars() + 1;
    cnf.reserve_vars(cnf.num_vars() + static_cast<int>(count));
  }

  auto lit = [&](int n, std::size_t i, int d) { return e.literal_of(n, i, d); };

  for (std::size_t idx = 0; idx < e.dag_.size(); ++idx) {
    const DagNode& node = e.dag_[idx];
    const int n = static_cast<int>(idx);
    if (e.node_vars_[idx] == 0) {
      if (node.op == Op::Not && e.dag_[static_cast<std::size_t>(node.a)].op != Op::Atom) {
        throw std::logic_error("encode_bounded: negation above a non-atom after nnf");
      }
      continue;
    }
    const int h = node.past_height;
    for (int d = 0; d <= h; ++d) {
      // Aux "value of the successor of k" for U nodes, shared by all j.
      int until_next = 0;
      for (std::size_t i = 0; i <= k; ++i) {
        const int v = lit(n, i, d);
        switch (node.op) {
          case Op::And:
            cnf.add_clause({-v, lit(node.a, i, d)});
            cnf.add_clause({-v, lit(node.b, i, d)});
            break;
          case Op::Or: cnf.add_clause({-v, lit(node.a, i, d), lit(node.b, i, d)}); break;
          case Op::Next:
            if (i < k) {
              cnf.add_clause({-v, lit(node.a, i + 1, d)});
            } else {
              for (std::size_t j = 1; j <= k; ++j) cnf.add_clause({-v, -e.loop_var(j), lit(node.a, j, d + 1)});
            }
            break;
          case Op::Until: {
            const int a = lit(node.a, i, d);
            const int b = lit(node.b, i, d);
            cnf.add_clause({-v, b, a});
            if (i < k) {
              cnf.add_clause({-v, b, lit(n, i + 1, d)});
            } else {
              until_next = cnf.new_var();
              cnf.add_clause({-v, b, until_next});
              for (std::size_t j = 1; j <= k; ++j) cnf.add_clause({-until_next, -e.loop_var(j), lit(n, j, d + 1)});
            }
            break;
          }
          case Op::Release: {
            const int a = lit(node.a, i, d);
            const int b = lit(node.b, i, d);
            cnf.add_clause({-v, b});
            if (i < k) {
              cnf.add_clause({-v, a, lit(n, i + 1, d)});
            } else {
              for (std::size_t j = 1; j <= k; ++j) cnf.add_clause({-v, a, -e.loop_var(j), lit(n, j, d + 1)});
            }
            break;
          }
          case Op::Yesterday:
          case Op::WeakYesterday: {
            const bool weak = node.op == Op::WeakYesterday;
            if (i == 0) {
              if (!weak || d > 0) cnf.add_clause({-v});
            } else if (d == 0) {
              cnf.add_clause({-v, lit(node.a, i - 1, 0)});
            } else {
              cnf.add_clause({-v, -e.loop_var(i), lit(node.a, k, d - 1)});
              cnf.add_clause({-v, e.loop_var(i), lit(node.a, i - 1, d)});
            }
            break;
          }
          case Op::Since:
          case Op::Trigger: {
            const int a = lit(node.a, i, d);
            const int b = lit(node.b, i, d);
            const bool since = node.op == Op::Since;
            // S: b || (a && prev);  T: b && (a || prev)
            if (since) {
              if (i == 0 && d == 0) {
                cnf.add_clause({-v, b});
                break;
              }
              cnf.add_clause({-v, b, a});
            } else {
              cnf.add_clause({-v, b});
              if (i == 0 && d == 0) break;
            }
            auto guard = [&](std::vector<int> c) {
              if (!since) c.push_back(a);
              cnf.add_clause(c);
            };
            auto base = [&]() { return since ? std::vector<int>{-v, b} : std::vector<int>{-v}; };
            if (i == 0) {
              cnf.add_clause({-v});  // unreachable state of a later copy
            } else if (d == 0) {
              auto c = base();
              c.push_back(lit(n, i - 1, 0));
              guard(c);
            } else {
              auto c1 = base();
              c1.push_back(-e.loop_var(i));
              c1.push_back(lit(n, k, d - 1));
              guard(c1);
              auto c2 = base();
              c2.push_back(e.loop_var(i));
              c2.push_back(lit(n, i - 1, d));
              guard(c2);
            }
            break;
          }
          default: throw std::logic_error("encode_bounded: unexpected operator after nnf");
        }
      }
      // Eventuality: a pending until at k of the self-looping copy must be
      // fulfilled somewhere in the loop.
      if (node.op == Op::Until && d == h) {
        std::vector<int> some{-until_next};
        for (std::size_t j = 1; j <= k; ++j) {
          const int ej = cnf.new_var();
          some.push_back(ej);
          cnf.add_clause({-ej, inloop[j]});
          cnf.add_clause({-ej, lit(node.b, j, h)});
        }
        cnf.add_clause(some);
      }
    }
  }

  cnf.add_clause({e.literal_of(e.root_, 0, 0)});
  return e;
}

/// Reads the lasso word out of a model of the encoding. The alphabet is the
/// set of propositions occurring in the formula.
inline ltl::LassoWord decode_witness(const BoundedEncoding& e, const sat::Assignment& model) {
  const std::size_t k = e.bound();
  std::size_t loop = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    if (model.value(e.loop_var(j))) {
      if (loop != 0) throw std::logic_error("decode_witness: more than one loop selector is true");
      loop = j;
    }
  }
  if (loop == 0) throw std::logic_error("decode_witness: no loop selector is true");
  std::vector<ltl::LassoWord::State> states(k + 1);
  std::set<std::string> alphabet;
  for (const auto& [name, vars] : e.atom_vars()) {
    alphabet.insert(name);
    for (std::size_t i = 0; i <= k; ++i) {
      if (model.value(vars[i])) states[i].insert(name);
    }
  }
  return ltl::LassoWord(std::move(states), loop, std::move(alphabet));
}

}  // namespace wfv::bsc
