#pragma once

#include <unordered_map>

#include "wfv/ltl/formula.hpp"

namespace wfv::ltl {

namespace detail {

class NnfBuilder {
 public:
  Formula run(const Formula& f, bool negated) {
    const Key key{f.id(), negated};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out = build(f, negated);
    memo_.emplace(key, out);
    return out;
  }

 private:
  struct Key {
    const void* id;
    bool negated;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<const void*>{}(k.id) * 2 + (k.negated ? 1 : 0);
    }
  };

  Formula build(const Formula& f, bool n) {
    switch (f.op()) {
      case Op::True: return n ? bottom() : top();
      case Op::False: return n ? top() : bottom();
      case Op::Atom: return n ? neg(f) : f;
      case Op::Not: return run(f.lhs(), !n);
      case Op::And:
        return n ? disj(run(f.lhs(), true), run(f.rhs(), true))
                 : conj(run(f.lhs(), false), run(f.rhs(), false));
      case Op::Or:
        return n ? conj(run(f.lhs(), true), run(f.rhs(), true))
                 : disj(run(f.lhs(), false), run(f.rhs(), false));
      case Op::Implies:
        return n ? conj(run(f.lhs(), false), run(f.rhs(), true))
                 : disj(run(f.lhs(), true), run(f.rhs(), false));
      case Op::Iff:
        // a <-> b  ==  (!a || b) && (a || !b)
        return n ? disj(conj(run(f.lhs(), false), run(f.rhs(), true)),
                        conj(run(f.lhs(), true), run(f.rhs(), false)))
                 : conj(disj(run(f.lhs(), true), run(f.rhs(), false)),
                        disj(run(f.lhs(), false), run(f.rhs(), true)));
      case Op::Next: return next(run(f.lhs(), n));
      case Op::Yesterday: return n ? weak_yesterday(run(f.lhs(), true)) : yesterday(run(f.lhs(), false));
      case Op::WeakYesterday: return n ? yesterday(run(f.lhs(), true)) : weak_yesterday(run(f.lhs(), false));
      case Op::Until:
        return n ? release(run(f.lhs(), true), run(f.rhs(), true)) : until(run(f.lhs(), false), run(f.rhs(), false));
      case Op::Release:
        return n ? until(run(f.lhs(), true), run(f.rhs(), true)) : release(run(f.lhs(), false), run(f.rhs(), false));
      case Op::Since:
        return n ? trigger(run(f.lhs(), true), run(f.rhs(), true)) : since(run(f.lhs(), false), run(f.rhs(), false));
      case Op::Trigger:
        return n ? since(run(f.lhs(), true), run(f.rhs(), true)) : trigger(run(f.lhs(), false), run(f.rhs(), false));
      // G a == false R a,  F a == true U a
      case Op::Globally: return n ? until(top(), run(f.lhs(), true)) : release(bottom(), run(f.lhs(), false));
      case Op::Eventually: return n ? release(bottom(), run(f.lhs(), true)) : until(top(), run(f.lhs(), false));
    }
    throw std::logic_error("nnf: unknown operator");
  }

  std::unordered_map<Key, Formula, KeyHash> memo_;
};

}  // namespace detail

/// Negation normal form: negations only on atoms, no Implies/Iff/G/F.
/// Past negations become the duals Z (weak yesterday) and T (trigger).
/// Sharing in the input is preserved in the output.
inline Formula nnf(const Formula& f) { return detail::NnfBuilder{}.run(f, false); }

/// True when `f` is in the form produced by nnf().
inline bool is_nnf(const Formula& root) {
  bool ok = true;
  for_each_node(root, [&](const Formula& f) {
    switch (f.op()) {
      case Op::Not: ok = ok && f.lhs().is(Op::Atom); break;
      case Op::Implies:
      case Op::Iff:
      case Op::Globally:
      case Op::Eventually: ok = false; break;
      default: break;
    }
  });
  return ok;
}

}  // namespace wfv::ltl
