#pragma once

#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfv::sat {

/// Clause set over variables 1..num_vars(). Literals are signed variable
/// indices as in DIMACS. Clauses are stored flat.
///
/// An empty clause is not stored; adding one marks the formula as
/// contradictory, which is reported by has_empty_clause() and exported as a
/// lone `0` line.
class Cnf {
 public:
  Cnf() = default;
  explicit Cnf(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
  }

  int num_vars() const noexcept { return num_vars_; }
  std::size_t num_clauses() const noexcept { return offsets_.size() - 1; }
  bool has_empty_clause() const noexcept { return empty_clause_; }

  int new_var() { return ++num_vars_; }

  /// Ensures variables up to `n` exist.
  void reserve_vars(int n) {
    if (n > num_vars_) num_vars_ = n;
  }

  void add_clause(std::span<const int> lits) {
    if (lits.empty()) {
      empty_clause_ = true;
      return;
    }
    for (int l : lits) {
      if (l == 0 || std::abs(l) > num_vars_) {
        throw std::out_of_range("literal " + std::to_string(l) + " outside variables 1.." +
                                std::to_string(num_vars_));
      }
    }
    literals_.insert(literals_.end(), lits.begin(), lits.end());
    offsets_.push_back(literals_.size());
  }

  void add_clause(std::initializer_list<int> lits) { add_clause(std::span<const int>(lits.begin(), lits.size())); }
  void add_clause(const std::vector<int>& lits) { add_clause(std::span<const int>(lits)); }

  std::span<const int> clause(std::size_t i) const {
    return {literals_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t num_literals() const noexcept { return literals_.size(); }

  friend bool operator==(const Cnf&, const Cnf&) = default;

 private:
  int num_vars_ = 0;
  bool empty_clause_ = false;
  std::vector<int> literals_;
  std::vector<std::size_t> offsets_{0};
};

/// Total assignment of variables 1..num_vars().
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, false) {}

  int num_vars() const noexcept { return values_.empty() ? 0 : static_cast<int>(values_.size()) - 1; }

  bool value(int var) const {
    if (var < 1 || var > num_vars()) throw std::out_of_range("variable " + std::to_string(var) + " not assigned");
    return values_[static_cast<std::size_t>(var)];
  }

  /// Truth of a signed literal.
  bool holds(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }

  void set(int var, bool v) {
    if (var < 1 || var > num_vars()) throw std::out_of_range("variable " + std::to_string(var) + " not assigned");
    values_[static_cast<std::size_t>(var)] = v;
  }

  bool satisfies(const Cnf& f) const {
    if (f.has_empty_clause() || f.num_vars() > num_vars()) return false;
    for (std::size_t c = 0; c < f.num_clauses(); ++c) {
      bool sat = false;
      for (int l : f.clause(c)) {
        if (holds(l)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_;
};

}  // namespace wfv::sat
