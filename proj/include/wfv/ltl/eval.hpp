#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wfv/ltl/formula.hpp"
#include "wfv/ltl/lasso.hpp"

namespace wfv::ltl {

class UnknownProposition : public std::invalid_argument {
 public:
  explicit UnknownProposition(const std::string& name)
      : std::invalid_argument("proposition '" + name + "' is not in the word's alphabet"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Exact truth values of a formula at every position of a lasso word.
///
/// Past subformulas read different histories on successive passes through the
/// loop, but with past height h they stabilize after h passes. The word is
/// therefore expanded to `loop + (h+1)*|loop|` positions whose last block loops
/// onto itself; past operators are evaluated forward along the expansion and
/// future operators as fixpoints on the expanded lasso (least for U, greatest
/// for R). Positions beyond the expansion are folded onto the last block.
class Evaluation {
 public:
  Evaluation(const LassoWord& word, const Formula& formula) : word_(word) {
    const std::size_t h = static_cast<std::size_t>(past_height(formula));
    loop_start_ = word.loop() + h * word.loop_length();
    size_ = loop_start_ + word.loop_length();
    root_ = compute(formula);
  }

  /// Truth value at infinite-word position `i`.
  bool at(std::size_t i) const { return values_[root_][expanded(i)] != 0; }

  std::size_t expanded_size() const noexcept { return size_; }

 private:
  std::size_t expanded(std::size_t i) const noexcept {
    if (i < size_) return i;
    return loop_start_ + (i - loop_start_) % word_.loop_length();
  }

  std::size_t succ(std::size_t i) const noexcept { return i + 1 < size_ ? i + 1 : loop_start_; }

  std::size_t compute(const Formula& root) {
    std::unordered_map<const void*, std::size_t> slot;
    for_each_node(root, [&](const Formula& f) {
      std::vector<std::uint8_t> v(size_, 0);
      auto child = [&](std::size_t i) -> const std::vector<std::uint8_t>& {
        return values_[slot.at(f.operand(i).id())];
      };
      switch (f.op()) {
        case Op::True: std::fill(v.begin(), v.end(), 1); break;
        case Op::False: break;
        case Op::Atom:
          if (!word_.alphabet().count(f.name())) throw UnknownProposition(f.name());
          for (std::size_t i = 0; i < size_; ++i) v[i] = word_.holds(i, f.name()) ? 1 : 0;
          break;
        case Op::Not: {
          const auto& a = child(0);
          for (std::size_t i = 0; i < size_; ++i) v[i] = !a[i];
          break;
        }
        case Op::And:
        case Op::Or:
        case Op::Implies:
        case Op::Iff: {
          const auto& a = child(0);
          const auto& b = child(1);
          for (std::size_t i = 0; i < size_; ++i) {
            switch (f.op()) {
              case Op::And: v[i] = a[i] && b[i]; break;
              case Op::Or: v[i] = a[i] || b[i]; break;
              case Op::Implies: v[i] = !a[i] || b[i]; break;
              default: v[i] = (a[i] != 0) == (b[i] != 0); break;
            }
          }
          break;
        }
        case Op::Next: {
          const auto& a = child(0);
          for (std::size_t i = 0; i < size_; ++i) v[i] = a[succ(i)];
          break;
        }
        case Op::Yesterday:
        case Op::WeakYesterday: {
          const auto& a = child(0);
          v[0] = f.is(Op::WeakYesterday);
          for (std::size_t i = 1; i < size_; ++i) v[i] = a[i - 1];
          break;
        }
        case Op::Since: {
          const auto& a = child(0);
          const auto& b = child(1);
          v[0] = b[0];
          for (std::size_t i = 1; i < size_; ++i) v[i] = b[i] || (a[i] && v[i - 1]);
          break;
        }
        case Op::Trigger: {
          const auto& a = child(0);
          const auto& b = child(1);
          v[0] = b[0];
          for (std::size_t i = 1; i < size_; ++i) v[i] = b[i] && (a[i] || v[i - 1]);
          break;
        }
        case Op::Until:
        case Op::Eventually: {
          const bool finally = f.is(Op::Eventually);
          const auto* a = finally ? nullptr : &child(0);
          const auto& b = child(finally ? 0 : 1);
          fixpoint(v, false, [&](std::size_t i, std::uint8_t nextv) {
            return static_cast<std::uint8_t>(b[i] || ((a == nullptr || (*a)[i]) && nextv));
          });
          break;
        }
        case Op::Release:
        case Op::Globally: {
          const bool always = f.is(Op::Globally);
          const auto* a = always ? nullptr : &child(0);
          const auto& b = child(always ? 0 : 1);
          fixpoint(v, true, [&](std::size_t i, std::uint8_t nextv) {
            return static_cast<std::uint8_t>(b[i] && ((a != nullptr && (*a)[i]) || nextv));
          });
          break;
        }
      }
      slot[f.id()] = values_.size();
      values_.push_back(std::move(v));
    });
    return slot.at(root.id());
  }

  // Iterates v[i] = step(i, v[succ(i)]) from the given initial value until
  // nothing changes. Backward sweeps converge in at most three passes.
  template <class Step>
  void fixpoint(std::vector<std::uint8_t>& v, bool init, Step step) {
    std::fill(v.begin(), v.end(), init ? 1 : 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = size_; i-- > 0;) {
        const std::uint8_t nv = step(i, v[succ(i)]);
        if (nv != v[i]) {
          v[i] = nv;
          changed = true;
        }
      }
    }
  }

  const LassoWord& word_;
  std::size_t loop_start_ = 0;
  std::size_t size_ = 0;
  std::vector<std::vector<std::uint8_t>> values_;
  std::size_t root_ = 0;
};

/// Truth of `f` at position `i` of the infinite word denoted by `word`.
/// Throws UnknownProposition for atoms outside the word's alphabet.
inline bool eval(const LassoWord& word, std::size_t i, const Formula& f) { return Evaluation(word, f).at(i); }

inline bool satisfiable_on(const LassoWord& word, const Formula& f) { return eval(word, 0, f); }

}  // namespace wfv::ltl
