#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "wfv/sat/cnf.hpp"

namespace wfv::sat {

enum class Status { Sat, Unsat, Unknown };

struct SolverOptions {
  std::uint64_t seed = 0x5eed;
  /// 0 means unlimited. Running out yields Status::Unknown.
  std::uint64_t conflict_limit = 0;
  double restart_first = 100;
  double restart_growth = 1.5;
  double var_decay = 0.95;
  double clause_decay = 0.999;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_clauses = 0;
  double solve_ms = 0;
};

struct SolveResult {
  Status status = Status::Unknown;
  Assignment model;  // meaningful only for Status::Sat
  SolverStats stats;
};

namespace detail {

/// Conflict-driven clause learning: two watched literals with blockers,
/// first-UIP learning with local minimization, VSIDS on a binary heap, phase
/// saving, geometric restarts and activity-based learnt clause deletion.
class CdclSolver {
 public:
  CdclSolver(const Cnf& f, const SolverOptions& opt) : opt_(opt), nvars_(f.num_vars()) {
    const auto n = static_cast<std::size_t>(nvars_);
    assigns_.assign(n, kUndef);
    level_.assign(n, 0);
    reason_.assign(n, kNoClause);
    polarity_.assign(n, 1);  // 1 = prefer false
    activity_.assign(n, 0.0);
    seen_.assign(n, 0);
    watches_.resize(2 * n);
    heap_index_.assign(n, -1);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (std::size_t v = 0; v < n; ++v) activity_[v] = jitter(rng);
    for (std::size_t v = 0; v < n; ++v) heap_insert(static_cast<int>(v));

    if (f.has_empty_clause()) ok_ = false;
    std::vector<Lit> tmp;
    for (std::size_t c = 0; ok_ && c < f.num_clauses(); ++c) {
      tmp.clear();
      for (int l : f.clause(c)) tmp.push_back(from_dimacs(l));
      add_input_clause(tmp);
    }
    if (ok_ && propagate() != kNoClause) ok_ = false;
    max_learnts_ = std::max<double>(static_cast<double>(clauses_.size()) / 3.0, 5000.0);
  }

  SolveResult solve() {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    res.status = ok_ ? search_all() : Status::Unsat;
    if (res.status == Status::Sat) {
      res.model = Assignment(nvars_);
      for (int v = 0; v < nvars_; ++v) res.model.set(v + 1, assigns_[static_cast<std::size_t>(v)] == kTrue);
    }
    stats_.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.stats = stats_;
    return res;
  }

 private:
  using Lit = std::uint32_t;
  using CRef = std::uint32_t;
  static constexpr CRef kNoClause = std::numeric_limits<CRef>::max();
  static constexpr std::int8_t kTrue = 1, kFalse = -1, kUndef = 0;

  struct Watcher {
    CRef cref;
    Lit blocker;
  };
  struct Clause {
    std::uint32_t begin;
    std::uint32_t size;
    float activity;
    bool learnt;
    bool removed;
  };

  static Lit from_dimacs(int l) { return static_cast<Lit>(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0)); }
  static int var(Lit l) { return static_cast<int>(l >> 1); }
  static bool sign(Lit l) { return (l & 1) != 0; }
  static Lit negate(Lit l) { return l ^ 1; }

  std::int8_t value(Lit l) const {
    const std::int8_t a = assigns_[static_cast<std::size_t>(var(l))];
    return sign(l) ? static_cast<std::int8_t>(-a) : a;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  Lit* lits(CRef c) { return arena_.data() + clauses_[c].begin; }

  // --- clause database -----------------------------------------------------

  void add_input_clause(std::vector<Lit>& c) {
    std::sort(c.begin(), c.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0 && c[i] == c[i - 1]) continue;
      if (i > 0 && c[i] == negate(c[i - 1])) return;  // tautology
      if (value(c[i]) == kTrue) return;               // satisfied at level 0
      if (value(c[i]) == kFalse) continue;
      c[j++] = c[i];
    }
    c.resize(j);
    if (c.empty()) {
      ok_ = false;
    } else if (c.size() == 1) {
      enqueue(c[0], kNoClause);
    } else {
      attach(alloc(c, false));
    }
  }

  CRef alloc(const std::vector<Lit>& c, bool learnt) {
    const auto ref = static_cast<CRef>(clauses_.size());
    clauses_.push_back({static_cast<std::uint32_t>(arena_.size()), static_cast<std::uint32_t>(c.size()), 0.0f,
                        learnt, false});
    arena_.insert(arena_.end(), c.begin(), c.end());
    return ref;
  }

  void attach(CRef c) {
    Lit* l = lits(c);
    watches_[negate(l[0])].push_back({c, l[1]});
    watches_[negate(l[1])].push_back({c, l[0]});
  }

  bool locked(CRef c) {
    const Lit first = lits(c)[0];
    return value(first) == kTrue && reason_[static_cast<std::size_t>(var(first))] == c;
  }

  void reduce_learnts() {
    std::vector<CRef> learnt;
    for (CRef c = 0; c < clauses_.size(); ++c) {
      if (clauses_[c].learnt && !clauses_[c].removed) learnt.push_back(c);
    }
    std::sort(learnt.begin(), learnt.end(), [&](CRef a, CRef b) {
      const auto& x = clauses_[a];
      const auto& y = clauses_[b];
      if ((x.size == 2) != (y.size == 2)) return y.size == 2;
      return x.activity < y.activity;
    });
    const std::size_t half = learnt.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      auto& cl = clauses_[learnt[i]];
      if (cl.size > 2 && !locked(learnt[i])) {
        cl.removed = true;
        --live_learnts_;
      }
    }
    // Drop watchers of removed clauses.
    for (auto& ws : watches_) {
      ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watcher& w) { return clauses_[w.cref].removed; }),
               ws.end());
    }
    compact_arena();
  }

  void compact_arena() {
    std::vector<Lit> fresh;
    fresh.reserve(arena_.size());
    std::vector<CRef> remap(clauses_.size(), kNoClause);
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    for (CRef c = 0; c < clauses_.size(); ++c) {
      const auto& cl = clauses_[c];
      if (cl.removed) continue;
      remap[c] = static_cast<CRef>(kept.size());
      Clause moved = cl;
      moved.begin = static_cast<std::uint32_t>(fresh.size());
      fresh.insert(fresh.end(), arena_.begin() + cl.begin, arena_.begin() + cl.begin + cl.size);
      kept.push_back(moved);
    }
    arena_ = std::move(fresh);
    clauses_ = std::move(kept);
    for (auto& ws : watches_)
      for (auto& w : ws) w.cref = remap[w.cref];
    for (auto& r : reason_)
      if (r != kNoClause) r = remap[r];
  }

  // --- propagation ---------------------------------------------------------

  void enqueue(Lit l, CRef from) {
    const auto v = static_cast<std::size_t>(var(l));
    assigns_[v] = sign(l) ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(l);
  }

  CRef propagate() {
    CRef conflict = kNoClause;
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];  // p became true; visit clauses watching ~p
      ++stats_.propagations;
      auto& ws = watches_[p];
      const Lit false_lit = negate(p);
      std::size_t i = 0, j = 0;
      const std::size_t n = ws.size();
      while (i < n) {
        const Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        Lit* c = lits(w.cref);
        const std::uint32_t size = clauses_[w.cref].size;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const Lit first = c[0];
        const Watcher kept{w.cref, first};
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = kept;
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[negate(c[1])].push_back(kept);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = kept;
        if (value(first) == kFalse) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < n) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoClause) break;
    }
    return conflict;
  }

  // --- conflict analysis ---------------------------------------------------

  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level) {
    learnt.clear();
    learnt.push_back(0);  // placeholder for the asserting literal
    int pending = 0;
    Lit p = 0;
    bool have_p = false;
    std::size_t index = trail_.size();
    CRef c = conflict;
    do {
      bump_clause(c);
      Lit* cl = lits(c);
      const std::uint32_t size = clauses_[c].size;
      for (std::uint32_t k = have_p ? 1 : 0; k < size; ++k) {
        const Lit q = cl[k];
        const auto v = static_cast<std::size_t>(var(q));
        if (!seen_[v] && level_[v] > 0) {
          bump_var(var(q));
          seen_[v] = 1;
          if (level_[v] >= decision_level()) {
            ++pending;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen_[static_cast<std::size_t>(var(trail_[--index]))]) {
      }
      p = trail_[index];
      have_p = true;
      c = reason_[static_cast<std::size_t>(var(p))];
      seen_[static_cast<std::size_t>(var(p))] = 0;
      --pending;
    } while (pending > 0);
    learnt[0] = negate(p);

    // Local minimization: drop literals implied by other literals of the clause.
    analyze_stack_ = learnt;
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      const auto v = static_cast<std::size_t>(var(learnt[i]));
      const CRef r = reason_[v];
      bool redundant = r != kNoClause;
      if (redundant) {
        Lit* rl = lits(r);
        for (std::uint32_t k = 1; k < clauses_[r].size; ++k) {
          const auto u = static_cast<std::size_t>(var(rl[k]));
          if (!seen_[u] && level_[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[j++] = learnt[i];
    }
    learnt.resize(j);
    for (Lit l : analyze_stack_) seen_[static_cast<std::size_t>(var(l))] = 0;

    if (learnt.size() == 1) {
      backtrack_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i) {
        if (level_[static_cast<std::size_t>(var(learnt[i]))] > level_[static_cast<std::size_t>(var(learnt[max_i]))])
          max_i = i;
      }
      std::swap(learnt[1], learnt[max_i]);
      backtrack_level = level_[static_cast<std::size_t>(var(learnt[1]))];
    }
  }

  void cancel_until(int level) {
    if (decision_level() <= level) return;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[static_cast<std::size_t>(level)];) {
      const Lit l = trail_[i];
      const auto v = static_cast<std::size_t>(var(l));
      polarity_[v] = sign(l) ? 1 : 0;
      assigns_[v] = kUndef;
      reason_[v] = kNoClause;
      if (heap_index_[v] < 0) heap_insert(static_cast<int>(v));
    }
    trail_.resize(trail_lim_[static_cast<std::size_t>(level)]);
    trail_lim_.resize(static_cast<std::size_t>(level));
    qhead_ = trail_.size();
  }

  // --- heuristics ------------------------------------------------------------

  void bump_var(int v) {
    auto& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
      for (auto& x : activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[static_cast<std::size_t>(v)] >= 0) heap_up(heap_index_[static_cast<std::size_t>(v)]);
  }

  void bump_clause(CRef c) {
    auto& cl = clauses_[c];
    if (!cl.learnt) return;
    cl.activity += static_cast<float>(cla_inc_);
    if (cl.activity > 1e20f) {
      for (auto& x : clauses_)
        if (x.learnt) x.activity *= 1e-20f;
      cla_inc_ *= 1e-20;
    }
  }

  bool heap_less(int a, int b) const {
    return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)];
  }

  void heap_insert(int v) {
    heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(static_cast<int>(heap_.size()) - 1);
  }

  void heap_up(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[static_cast<std::size_t>(parent)])) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(parent)];
      heap_index_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_index_[static_cast<std::size_t>(v)] = i;
  }

  void heap_down(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    const int n = static_cast<int>(heap_.size());
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)]))
        ++child;
      if (!heap_less(heap_[static_cast<std::size_t>(child)], v)) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(child)];
      heap_index_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = child;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_index_[static_cast<std::size_t>(v)] = i;
  }

  int heap_pop() {
    const int top = heap_.front();
    heap_index_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_index_[static_cast<std::size_t>(last)] = 0;
      heap_down(0);
    }
    return top;
  }

  bool pick_branch(Lit& out) {
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (assigns_[static_cast<std::size_t>(v)] == kUndef) {
        out = static_cast<Lit>(2 * v + polarity_[static_cast<std::size_t>(v)]);
        return true;
      }
    }
    return false;
  }

  // --- search ----------------------------------------------------------------

  Status search_all() {
    double budget = opt_.restart_first;
    std::uint64_t since_restart = 0;
    std::vector<Lit> learnt;
    for (;;) {
      const CRef conflict = propagate();
      if (conflict != kNoClause) {
        ++stats_.conflicts;
        ++since_restart;
        if (decision_level() == 0) return Status::Unsat;
        int bt = 0;
        analyze(conflict, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoClause);
        } else {
          const CRef c = alloc(learnt, true);
          attach(c);
          bump_clause(c);
          ++live_learnts_;
          ++stats_.learnt_clauses;
          enqueue(learnt[0], c);
        }
        var_inc_ /= opt_.var_decay;
        cla_inc_ /= opt_.clause_decay;
        if (opt_.conflict_limit != 0 && stats_.conflicts >= opt_.conflict_limit) return Status::Unknown;
        continue;
      }
      if (static_cast<double>(since_restart) >= budget) {
        ++stats_.restarts;
        since_restart = 0;
        budget *= opt_.restart_growth;
        cancel_until(0);
        continue;
      }
      if (static_cast<double>(live_learnts_) >= max_learnts_ + static_cast<double>(trail_.size())) {
        reduce_learnts();
        max_learnts_ *= 1.1;
      }
      Lit next = 0;
      if (!pick_branch(next)) return Status::Sat;
      ++stats_.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoClause);
    }
  }

  SolverOptions opt_;
  int nvars_;
  bool ok_ = true;
  std::vector<Lit> arena_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<std::uint8_t> polarity_;
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_index_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<Lit> analyze_stack_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  double max_learnts_ = 0;
  std::size_t live_learnts_ = 0;
  SolverStats stats_;
};

}  // namespace detail

/// Decides `f`. Every returned model is checked against all clauses of `f`;
/// a failing check throws std::logic_error.
inline SolveResult solve(const Cnf& f, const SolverOptions& options = {}) {
  SolveResult res = detail::CdclSolver(f, options).solve();
  if (res.status == Status::Sat && !res.model.satisfies(f)) {
    throw std::logic_error("internal SAT solver returned a model that violates the clause set");
  }
  return res;
}

}  // namespace wfv::sat
