#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfv::ltl {

/// An ultimately periodic word `states[0..loop-1] (states[loop..k])^omega`
/// over an explicit proposition alphabet. `k` is bound(); positions 0..k are
/// stored and position k is followed by position loop.
class LassoWord {
 public:
  using State = std::set<std::string>;

  /// Alphabet defaults to the union of the states. Throws std::invalid_argument
  /// when fewer than two states are given, the loop is outside [1, k], or a
  /// state mentions a proposition outside a given alphabet.
  LassoWord(std::vector<State> states, std::size_t loop, std::set<std::string> alphabet = {})
      : states_(std::move(states)), loop_(loop), alphabet_(std::move(alphabet)) {
    if (states_.size() < 2) throw std::invalid_argument("lasso word needs at least two states (k >= 1)");
    if (loop_ < 1 || loop_ > bound()) {
      throw std::invalid_argument("lasso loop " + std::to_string(loop_) + " outside [1, " +
                                  std::to_string(bound()) + "]");
    }
    const bool derive = alphabet_.empty();
    for (const auto& s : states_) {
      for (const auto& p : s) {
        if (derive) {
          alphabet_.insert(p);
        } else if (!alphabet_.count(p)) {
          throw std::invalid_argument("state mentions proposition '" + p + "' outside the alphabet");
        }
      }
    }
  }

  std::size_t bound() const noexcept { return states_.size() - 1; }
  std::size_t loop() const noexcept { return loop_; }
  std::size_t prefix_length() const noexcept { return loop_; }
  std::size_t loop_length() const noexcept { return states_.size() - loop_; }

  const std::vector<State>& states() const noexcept { return states_; }
  const std::set<std::string>& alphabet() const noexcept { return alphabet_; }

  /// Index into states() of infinite-word position `i`.
  std::size_t fold(std::size_t i) const noexcept {
    if (i <= bound()) return i;
    return loop_ + (i - loop_) % loop_length();
  }

  /// State at infinite-word position `i`.
  const State& at(std::size_t i) const noexcept { return states_[fold(i)]; }

  bool holds(std::size_t i, const std::string& prop) const { return at(i).count(prop) > 0; }

  friend bool operator==(const LassoWord&, const LassoWord&) = default;

 private:
  std::vector<State> states_;
  std::size_t loop_;
  std::set<std::string> alphabet_;
};

}  // namespace wfv::ltl
