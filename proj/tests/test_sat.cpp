#include <gtest/gtest.h>

#include "oracles/brute_sat.hpp"
#include "oracles/random.hpp"
#include "wfv/sat/dimacs.hpp"
#include "wfv/sat/solver.hpp"

using namespace wfv::sat;

TEST(Cnf, RejectsOutOfRangeLiterals) {
  Cnf f(2);
  EXPECT_THROW(f.add_clause({3}), std::out_of_range);
  EXPECT_THROW(f.add_clause({0}), std::out_of_range);
  f.add_clause({1, -2});
  EXPECT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(f.new_var(), 3);
}

TEST(Dimacs, ExportFormat) {
  Cnf f(2);
  f.add_clause({1, -2});
  EXPECT_EQ(export_dimacs(f), "p cnf 2 1\n1 -2 0\n");
  EXPECT_EQ(export_dimacs(f, "bound 3"), "c bound 3\np cnf 2 1\n1 -2 0\n");
}

TEST(Dimacs, ParseAcceptsMultilineClausesAndComments) {
  const Cnf f = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 -1 0\n");
  ASSERT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(std::vector<int>(f.clause(0).begin(), f.clause(0).end()), (std::vector<int>{1, -2, 3}));
  EXPECT_EQ(f.num_vars(), 3);
}

TEST(Dimacs, ParseErrors) {
  EXPECT_THROW(parse_dimacs("1 2 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs(""), DimacsError);
}

TEST(Dimacs, ModelLines) {
  const Assignment a = parse_dimacs_model("v 1 -2 0\n");
  EXPECT_TRUE(a.value(1));
  EXPECT_FALSE(a.value(2));
  const auto out = parse_solver_output("c x\ns SATISFIABLE\nv -1\nv 2 0\n", 3);
  EXPECT_EQ(out.status, ModelStatus::Satisfiable);
  ASSERT_TRUE(out.model);
  EXPECT_EQ(out.model->num_vars(), 3);
  EXPECT_TRUE(out.model->value(2));
  EXPECT_FALSE(out.model->value(3));
  EXPECT_EQ(parse_solver_output("s UNSATISFIABLE\n").status, ModelStatus::Unsatisfiable);
  EXPECT_THROW(parse_solver_output("s SATISFIABLE\n"), DimacsError);
  EXPECT_THROW(parse_dimacs_model("s UNKNOWN\n"), DimacsError);
  EXPECT_THROW(parse_solver_output("v 1 0\nv 2 0\n"), DimacsError);
}

TEST(Dimacs, ModelRoundTrip) {
  Assignment a(23);
  for (int v = 1; v <= 23; v += 3) a.set(v, true);
  const Assignment b = parse_dimacs_model(format_model(a), 23);
  for (int v = 1; v <= 23; ++v) EXPECT_EQ(a.value(v), b.value(v));
}

TEST(Solver, Trivial) {
  EXPECT_EQ(solve(Cnf(0)).status, Status::Sat);
  Cnf unit(1);
  unit.add_clause({1});
  const auto r = solve(unit);
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_TRUE(r.model.value(1));
  unit.add_clause({-1});
  EXPECT_EQ(solve(unit).status, Status::Unsat);
  Cnf empty(3);
  empty.add_clause(std::vector<int>{});
  EXPECT_EQ(solve(empty).status, Status::Unsat);
}

TEST(Solver, PigeonHoleIsUnsat) {
  // 6 pigeons, 5 holes.
  const int P = 6, H = 5;
  Cnf f(P * H);
  auto x = [&](int p, int h) { return p * H + h + 1; };
  for (int p = 0; p < P; ++p) {
    std::vector<int> c;
    for (int h = 0; h < H; ++h) c.push_back(x(p, h));
    f.add_clause(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p = 0; p < P; ++p)
      for (int q = p + 1; q < P; ++q) f.add_clause({-x(p, h), -x(q, h)});
  const auto r = solve(f);
  EXPECT_EQ(r.status, Status::Unsat);
  EXPECT_GT(r.stats.conflicts, 0u);
}

TEST(Solver, ConflictLimitYieldsUnknown) {
  const int P = 9, H = 8;
  Cnf f(P * H);
  auto x = [&](int p, int h) { return p * H + h + 1; };
  for (int p = 0; p < P; ++p) {
    std::vector<int> c;
    for (int h = 0; h < H; ++h) c.push_back(x(p, h));
    f.add_clause(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p = 0; p < P; ++p)
      for (int q = p + 1; q < P; ++q) f.add_clause({-x(p, h), -x(q, h)});
  SolverOptions o;
  o.conflict_limit = 10;
  EXPECT_EQ(solve(f, o).status, Status::Unknown);
}

TEST(Solver, AgreesWithBruteForce) {
  oracle::Rng rng(7);
  for (int n = 0; n < 2000; ++n) {
    const Cnf f = oracle::random_cnf(rng, 14);
    const bool expected = oracle::brute_force_sat(f);
    SolverOptions o;
    o.seed = rng();
    const auto r = solve(f, o);
    ASSERT_EQ(r.status == Status::Sat, expected) << export_dimacs(f);
    if (expected) {
      ASSERT_TRUE(r.model.satisfies(f));
    }
  }
}

TEST(Solver, DeterministicForAFixedSeed) {
  oracle::Rng rng(3);
  for (int n = 0; n < 50; ++n) {
    const Cnf f = oracle::random_cnf(rng, 40);
    const auto a = solve(f), b = solve(f);
    ASSERT_EQ(a.status, b.status);
    ASSERT_EQ(a.stats.decisions, b.stats.decisions);
    if (a.status == Status::Sat) {
      for (int v = 1; v <= f.num_vars(); ++v) ASSERT_EQ(a.model.value(v), b.model.value(v));
    }
  }
}

TEST(Dimacs, CnfRoundTrip) {
  oracle::Rng rng(5);
  for (int n = 0; n < 500; ++n) {
    Cnf f = oracle::random_cnf(rng, 30);
    if (n % 50 == 0) f.add_clause(std::vector<int>{});
    ASSERT_EQ(parse_dimacs(export_dimacs(f, "round trip")), f);
  }
}
