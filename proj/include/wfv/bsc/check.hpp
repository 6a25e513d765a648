#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "wfv/bsc/encoding.hpp"
#include "wfv/ltl/eval.hpp"
#include "wfv/sat/solver.hpp"

namespace wfv::bsc {

/// The SAT engine produced no verdict (resource limit, external solver
/// failure). Never reported as a satisfiability verdict.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model decoded from the SAT solver does not satisfy the formula. This
/// means the encoding is wrong; it is raised instead of returning the witness.
class ReplayFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using SatBackend = std::function<sat::SolveResult(const sat::Cnf&)>;

inline SatBackend internal_backend(sat::SolverOptions options = {}) {
  return [options](const sat::Cnf& f) { return sat::solve(f, options); };
}

struct CheckStats {
  std::size_t bound = 0;
  int variables = 0;
  std::size_t clauses = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  double encode_ms = 0;
  double solve_ms = 0;
};

enum class Verdict { Sat, UnsatWithinBound };

struct CheckResult {
  Verdict verdict = Verdict::UnsatWithinBound;
  std::optional<ltl::LassoWord> witness;  // set iff verdict == Sat
  CheckStats stats;

  bool sat() const noexcept { return verdict == Verdict::Sat; }
};

/// Searches for a lasso model of `phi` with positions 0..k. A Sat witness has
/// been replayed through the reference evaluator before it is returned.
inline CheckResult check_sat(const Formula& phi, std::size_t k, const SatBackend& backend = internal_backend()) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const BoundedEncoding enc = encode_bounded(phi, k);
  const auto t1 = clock::now();
  sat::SolveResult res = backend(enc.cnf());
  const auto t2 = clock::now();

  CheckResult out;
  out.stats.bound = k;
  out.stats.variables = enc.cnf().num_vars();
  out.stats.clauses = enc.cnf().num_clauses();
  out.stats.decisions = res.stats.decisions;
  out.stats.conflicts = res.stats.conflicts;
  out.stats.propagations = res.stats.propagations;
  out.stats.encode_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  out.stats.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

  switch (res.status) {
    case sat::Status::Unknown: throw SolverFailure("SAT solver gave no verdict (limit reached or backend failure)");
    case sat::Status::Unsat: out.verdict = Verdict::UnsatWithinBound; return out;
    case sat::Status::Sat: break;
  }
  if (res.model.num_vars() < enc.cnf().num_vars() || !res.model.satisfies(enc.cnf())) {
    throw SolverFailure("SAT backend returned an assignment that violates the clause set");
  }
  ltl::LassoWord w = decode_witness(enc, res.model);
  if (!ltl::satisfiable_on(w, phi)) {
    throw ReplayFailure("decoded witness does not satisfy the formula under the reference evaluator");
  }
  out.verdict = Verdict::Sat;
  out.witness = std::move(w);
  return out;
}

struct PropertyResult {
  bool holds_within_bound = false;          // no counterexample up to k
  std::optional<ltl::LassoWord> counterexample;
  CheckStats stats;
};

/// Looks for a lasso model of `system && !property`.
inline PropertyResult check_property(const Formula& system, const Formula& property, std::size_t k,
                                     const SatBackend& backend = internal_backend()) {
  CheckResult r = check_sat(ltl::conj(system, ltl::neg(property)), k, backend);
  PropertyResult out;
  out.stats = r.stats;
  out.holds_within_bound = !r.sat();
  out.counterexample = std::move(r.witness);
  return out;
}

}  // namespace wfv::bsc
