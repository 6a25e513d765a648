#include <gtest/gtest.h>

#include "oracles/lasso_enum.hpp"
#include "oracles/random.hpp"
#include "wfv/bsc/check.hpp"
#include "wfv/bsc/witness_json.hpp"
#include "wfv/ltl/syntax.hpp"

using namespace wfv;
using ltl::parse;

TEST(Encoding, RejectsZeroBound) { EXPECT_THROW(bsc::encode_bounded(parse("p"), 0), std::invalid_argument); }

TEST(Encoding, AtomsAndLoopSelectorsAreAllocated) {
  const auto e = bsc::encode_bounded(parse("p U X q"), 3);
  EXPECT_EQ(e.atom_vars().size(), 2u);
  for (const auto& [name, vars] : e.atom_vars()) EXPECT_EQ(vars.size(), 4u) << name;
  std::set<int> loops;
  for (std::size_t j = 1; j <= 3; ++j) loops.insert(e.loop_var(j));
  EXPECT_EQ(loops.size(), 3u);
}

TEST(Check, SingleAtom) {
  const auto r = bsc::check_sat(parse("p"), 1);
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(r.witness->holds(0, "p"));
  EXPECT_EQ(r.witness->bound(), 1u);
}

TEST(Check, EventuallyAtBoundOne) {
  const auto r = bsc::check_sat(parse("F q"), 1);
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(ltl::eval(*r.witness, 0, parse("F q")));
}

TEST(Check, Contradiction) {
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_FALSE(bsc::check_sat(parse("G p && F !p"), k).sat()) << k;
}

TEST(Check, AlternatingModel) {
  const auto phi = parse("p && G (p -> X !p) && G (!p -> X p)");
  EXPECT_FALSE(bsc::check_sat(phi, 1).sat());
  const auto r = bsc::check_sat(phi, 2);
  ASSERT_TRUE(r.sat());
  EXPECT_EQ(r.witness->loop(), 1u);
  EXPECT_EQ(r.witness->states(), (std::vector<ltl::LassoWord::State>{{"p"}, {}, {"p"}}));
}

TEST(Check, PastOperatorsThroughTheLoop) {
  // A p-pulse every third position with q exactly one step after each pulse.
  const auto phi = parse("p && G (p -> X !p && X X !p && X X X p) && G (q <-> Y p)");
  EXPECT_FALSE(bsc::check_sat(phi, 2).sat());
  const auto r = bsc::check_sat(phi, 3);
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(r.witness->holds(1, "q"));
  EXPECT_FALSE(r.witness->holds(0, "q"));
  // Y is false at the origin, so q can not start there.
  EXPECT_FALSE(bsc::check_sat(parse("q && G (q <-> Y p)"), 4).sat());
  EXPECT_TRUE(bsc::check_sat(parse("!(Y p) && !(Y !p) && X Y !p"), 1).sat());
  EXPECT_TRUE(bsc::check_sat(parse("G F (p S q) && G !q"), 4).sat() == false);
  EXPECT_TRUE(bsc::check_sat(parse("q && X G !q && G F (p S q)"), 3).sat());
}

TEST(Property, Examples) {
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_TRUE(bsc::check_property(parse("G p"), parse("G p"), k).holds_within_bound);
  const auto r = bsc::check_property(ltl::top(), parse("G p"), 2);
  ASSERT_FALSE(r.holds_within_bound);
  ASSERT_TRUE(r.counterexample);
  EXPECT_FALSE(ltl::eval(*r.counterexample, 0, parse("G p")));
}

TEST(Check, BackendFailuresAreNotVerdicts) {
  bsc::SatBackend unknown = [](const sat::Cnf&) { return sat::SolveResult{}; };
  EXPECT_THROW(bsc::check_sat(parse("p"), 2, unknown), bsc::SolverFailure);
  bsc::SatBackend liar = [](const sat::Cnf& f) {
    sat::SolveResult r;
    r.status = sat::Status::Sat;
    r.model = sat::Assignment(f.num_vars());
    return r;
  };
  EXPECT_THROW(bsc::check_sat(parse("p"), 2, liar), bsc::SolverFailure);
}

TEST(Decode, LoopSelectorErrors) {
  const auto e = bsc::encode_bounded(parse("p"), 2);
  sat::Assignment none(e.cnf().num_vars());
  EXPECT_THROW(bsc::decode_witness(e, none), std::logic_error);
  sat::Assignment two(e.cnf().num_vars());
  two.set(e.loop_var(1), true);
  two.set(e.loop_var(2), true);
  EXPECT_THROW(bsc::decode_witness(e, two), std::logic_error);
  sat::Assignment quiet(e.cnf().num_vars());
  quiet.set(e.loop_var(1), true);
  const auto w = bsc::decode_witness(e, quiet);
  EXPECT_EQ(w.loop(), 1u);
  for (const auto& s : w.states()) EXPECT_TRUE(s.empty());
}

TEST(WitnessJson, RoundTripAndErrors) {
  const ltl::LassoWord w({{"A:x#1"}, {}, {"T:t#1", "R"}}, 2, {"A:x#1", "T:t#1", "R", "W#1"});
  const auto back = bsc::witness_from_json(bsc::witness_to_string(w));
  EXPECT_EQ(back.states(), w.states());
  EXPECT_EQ(back.loop(), w.loop());
  EXPECT_EQ(back.alphabet(), w.alphabet());
  EXPECT_THROW(bsc::witness_from_json("{\"bound\": 2, \"loop\": 1, \"states\": [[], []]}"), bsc::WitnessFormatError);
  EXPECT_THROW(bsc::witness_from_json("{\"bound\": 1, \"loop\": 3, \"states\": [[], []]}"), bsc::WitnessFormatError);
  EXPECT_THROW(bsc::witness_from_json("{\"bound\": 1, "), bsc::WitnessFormatError);
}

TEST(Properties, SoundnessOnRandomFormulas) {
  oracle::Rng rng(99);
  const auto aps = oracle::atom_names(4);
  int sat = 0;
  for (int n = 0; n < 150; ++n) {
    const auto phi = oracle::random_formula(rng, aps, 5);
    const std::size_t k = 1 + rng() % 6;
    const auto r = bsc::check_sat(phi, k);  // replays internally
    if (r.sat()) {
      ++sat;
      ASSERT_TRUE(ltl::eval(*r.witness, 0, phi));
      ASSERT_EQ(r.witness->bound(), k);
    }
  }
  EXPECT_GT(sat, 20);
}

TEST(Properties, BoundedCompleteness) {
  oracle::Rng rng(4242);
  const auto aps = oracle::atom_names(2);
  for (int n = 0; n < 40; ++n) {
    const auto phi = oracle::random_formula(rng, aps, 4);
    const std::size_t k = 1 + rng() % 3;
    const bool expected = oracle::any_lasso(aps, k, [&](const ltl::LassoWord& w) { return ltl::eval(w, 0, phi); });
    ASSERT_EQ(bsc::check_sat(phi, k).sat(), expected) << ltl::to_string(phi) << " k=" << k;
  }
}

TEST(Properties, MonotonicInTheBound) {
  oracle::Rng rng(17);
  const auto aps = oracle::atom_names(3);
  for (int n = 0; n < 60; ++n) {
    const auto phi = oracle::random_formula(rng, aps, 4);
    bool seen = false;
    for (std::size_t k = 1; k <= 5; ++k) {
      const bool s = bsc::check_sat(phi, k).sat();
      ASSERT_TRUE(!seen || s) << ltl::to_string(phi) << " lost at k=" << k;
      seen = seen || s;
    }
  }
}
