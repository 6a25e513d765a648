#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wfv::ltl {

/// Node kinds of the LTL-with-past syntax tree.
///
/// WeakYesterday (Z) and Trigger (T) are the past duals of Yesterday and
/// Since. They never come out of the parser; nnf() introduces them when a
/// negation is pushed through a past operator.
enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Yesterday,
  WeakYesterday,
  Until,
  Since,
  Release,
  Trigger,
  Globally,
  Eventually,
};

constexpr std::size_t arity(Op op) noexcept {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::Yesterday:
    case Op::WeakYesterday:
    case Op::Globally:
    case Op::Eventually:
      return 1;
    default:
      return 2;
  }
}

constexpr bool is_past(Op op) noexcept {
  return op == Op::Yesterday || op == Op::WeakYesterday || op == Op::Since ||
         op == Op::Trigger;
}

class Formula;

namespace detail {
struct Node;
}

/// Immutable, shared LTL formula. Copies share structure; equality is
/// structural.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  Op op() const noexcept;
  std::size_t arity() const noexcept { return ltl::arity(op()); }

  /// Proposition name; empty unless op() == Op::Atom.
  const std::string& name() const noexcept;

  /// Operand `i` (0 or 1). Unary operators only have operand 0.
  const Formula& operand(std::size_t i) const;
  const Formula& lhs() const { return operand(0); }
  const Formula& rhs() const { return operand(1); }

  bool is(Op op) const noexcept { return this->op() == op; }

  /// Address of the shared node; stable for the lifetime of any copy.
  const void* id() const noexcept { return node_.get(); }

  static Formula make(Op op, std::string name, Formula a, Formula b);

  friend bool operator==(const Formula& x, const Formula& y);
  friend bool operator!=(const Formula& x, const Formula& y) { return !(x == y); }

 private:
  struct Null {};
  explicit Formula(Null) noexcept {}
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  static const std::shared_ptr<const detail::Node>& constant(Op op);

  // Unlinks uniquely owned descendants without recursion.
  static void release_chain(Formula& a, Formula& b) noexcept;
  friend struct detail::Node;

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct Node {
  Op op = Op::True;
  std::string name;
  Formula a;
  Formula b;

  Node(Op o, std::string n, Formula x, Formula y) : op(o), name(std::move(n)), a(std::move(x)), b(std::move(y)) {}
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  ~Node() { Formula::release_chain(a, b); }
};

}  // namespace detail

inline const std::shared_ptr<const detail::Node>& Formula::constant(Op op) {
  static const std::shared_ptr<const detail::Node> t =
      std::make_shared<detail::Node>(Op::True, std::string{}, Formula(Null{}), Formula(Null{}));
  static const std::shared_ptr<const detail::Node> f =
      std::make_shared<detail::Node>(Op::False, std::string{}, Formula(Null{}), Formula(Null{}));
  return op == Op::True ? t : f;
}

inline void Formula::release_chain(Formula& a, Formula& b) noexcept {
  std::vector<std::shared_ptr<const detail::Node>> work;
  auto take = [&work](Formula& f) {
    if (f.node_ && f.node_.use_count() == 1) work.push_back(std::move(f.node_));
  };
  take(a);
  take(b);
  while (!work.empty()) {
    std::shared_ptr<const detail::Node> n = std::move(work.back());
    work.pop_back();
    // Sole owner: nodes are allocated non-const, so detaching is safe.
    auto* m = const_cast<detail::Node*>(n.get());
    take(m->a);
    take(m->b);
  }
}

inline Formula::Formula() : node_(constant(Op::True)) {}

inline Op Formula::op() const noexcept { return node_->op; }

inline const std::string& Formula::name() const noexcept { return node_->name; }

inline const Formula& Formula::operand(std::size_t i) const {
  if (i >= arity()) throw std::out_of_range("formula operand index out of range");
  return i == 0 ? node_->a : node_->b;
}

inline Formula Formula::make(Op op, std::string name, Formula a, Formula b) {
  if (op == Op::True || op == Op::False) return Formula(constant(op));
  const std::size_t n = ltl::arity(op);
  if (n < 2) b = Formula(Null{});
  if (n < 1) a = Formula(Null{});
  return Formula(std::make_shared<detail::Node>(op, std::move(name), std::move(a), std::move(b)));
}

inline bool operator==(const Formula& x, const Formula& y) {
  // Iterative to cope with long conjunction chains.
  std::vector<std::pair<const detail::Node*, const detail::Node*>> stack{{x.node_.get(), y.node_.get()}};
  while (!stack.empty()) {
    auto [p, q] = stack.back();
    stack.pop_back();
    if (p == q) continue;
    if (p->op != q->op || p->name != q->name) return false;
    const std::size_t n = ltl::arity(p->op);
    if (n >= 1) stack.emplace_back(p->a.node_.get(), q->a.node_.get());
    if (n >= 2) stack.emplace_back(p->b.node_.get(), q->b.node_.get());
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

inline Formula top() { return Formula(); }
inline Formula bottom() { return Formula::make(Op::False, {}, {}, {}); }

inline Formula atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  return Formula::make(Op::Atom, std::move(name), {}, {});
}

inline Formula neg(Formula f) { return Formula::make(Op::Not, {}, std::move(f), {}); }
inline Formula conj(Formula a, Formula b) { return Formula::make(Op::And, {}, std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, {}, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return Formula::make(Op::Implies, {}, std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::make(Op::Iff, {}, std::move(a), std::move(b)); }
inline Formula next(Formula f) { return Formula::make(Op::Next, {}, std::move(f), {}); }
inline Formula yesterday(Formula f) { return Formula::make(Op::Yesterday, {}, std::move(f), {}); }
inline Formula weak_yesterday(Formula f) { return Formula::make(Op::WeakYesterday, {}, std::move(f), {}); }
inline Formula until(Formula a, Formula b) { return Formula::make(Op::Until, {}, std::move(a), std::move(b)); }
inline Formula since(Formula a, Formula b) { return Formula::make(Op::Since, {}, std::move(a), std::move(b)); }
inline Formula release(Formula a, Formula b) { return Formula::make(Op::Release, {}, std::move(a), std::move(b)); }
inline Formula trigger(Formula a, Formula b) { return Formula::make(Op::Trigger, {}, std::move(a), std::move(b)); }
inline Formula globally(Formula f) { return Formula::make(Op::Globally, {}, std::move(f), {}); }
inline Formula eventually(Formula f) { return Formula::make(Op::Eventually, {}, std::move(f), {}); }

/// `X^n f`.
inline Formula next_n(Formula f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) f = next(std::move(f));
  return f;
}

/// Left-nested conjunction; `true` when empty.
inline Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(std::move(acc), fs[i]);
  return acc;
}

/// Left-nested disjunction; `false` when empty.
inline Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(std::move(acc), fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Structural queries. All of them memoize on node identity, so formulas with
// heavy sharing are traversed once per distinct node.

/// Calls `visit` once per distinct node, children before parents.
inline void for_each_node(const Formula& root, const std::function<void(const Formula&)>& visit) {
  std::unordered_map<const void*, bool> seen;
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      visit(f);
      continue;
    }
    if (!seen.emplace(f.id(), true).second) continue;
    stack.emplace_back(f, true);
    for (std::size_t i = f.arity(); i-- > 0;) {
      if (!seen.count(f.operand(i).id())) stack.emplace_back(f.operand(i), false);
    }
  }
}

/// Maximum nesting depth of past operators (Y, Z, S, T).
inline int past_height(const Formula& root) {
  std::unordered_map<const void*, int> height;
  for_each_node(root, [&](const Formula& f) {
    int h = 0;
    for (std::size_t i = 0; i < f.arity(); ++i) h = std::max(h, height.at(f.operand(i).id()));
    height[f.id()] = h + (is_past(f.op()) ? 1 : 0);
  });
  return height.at(root.id());
}

/// Proposition names occurring in the formula.
inline std::set<std::string> atoms(const Formula& root) {
  std::set<std::string> out;
  for_each_node(root, [&](const Formula& f) {
    if (f.is(Op::Atom)) out.insert(f.name());
  });
  return out;
}

/// Number of nodes of the formula as a tree (shared subterms counted once per
/// occurrence).
inline std::size_t tree_size(const Formula& root) {
  std::unordered_map<const void*, std::size_t> size;
  for_each_node(root, [&](const Formula& f) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < f.arity(); ++i) s += size.at(f.operand(i).id());
    size[f.id()] = s;
  });
  return size.at(root.id());
}

/// Number of distinct nodes.
inline std::size_t dag_size(const Formula& root) {
  std::size_t n = 0;
  for_each_node(root, [&](const Formula&) { ++n; });
  return n;
}

}  // namespace wfv::ltl
