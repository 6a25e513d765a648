#include <gtest/gtest.h>

#include "oracles/naive_ltl.hpp"
#include "oracles/random.hpp"
#include "wfv/ltl/eval.hpp"
#include "wfv/ltl/nnf.hpp"
#include "wfv/ltl/syntax.hpp"

using namespace wfv::ltl;

namespace {

LassoWord word(std::vector<std::set<std::string>> states, std::size_t loop) {
  return LassoWord(std::move(states), loop);
}

}  // namespace

TEST(Formula, StructuralEqualityAndSharing) {
  const Formula a = until(atom("p"), atom("q"));
  const Formula b = until(atom("p"), atom("q"));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.id(), b.id());
  EXPECT_NE(a, until(atom("q"), atom("p")));
  EXPECT_THROW(atom(""), std::invalid_argument);
  EXPECT_THROW(atom("p").operand(0), std::out_of_range);
}

TEST(Formula, PastHeight) {
  EXPECT_EQ(past_height(atom("p")), 0);
  EXPECT_EQ(past_height(since(atom("p"), yesterday(atom("q")))), 2);
  EXPECT_EQ(past_height(globally(implies(atom("t"), yesterday(atom("A"))))), 1);
  EXPECT_EQ(past_height(next(until(atom("p"), atom("q")))), 0);
}

TEST(Formula, SizesAndAtoms) {
  const Formula p = atom("p");
  const Formula shared = conj(p, p);
  EXPECT_EQ(tree_size(shared), 3u);
  EXPECT_EQ(dag_size(shared), 2u);
  EXPECT_EQ(atoms(conj(atom("b"), disj(atom("a"), atom("b")))), (std::set<std::string>{"a", "b"}));
}

TEST(Formula, LongChainsDoNotOverflowTheStack) {
  Formula f = atom("p0");
  for (int i = 1; i < 200000; ++i) f = conj(std::move(f), atom("p" + std::to_string(i % 7)));
  // Atoms are not interned: one node per call.
  EXPECT_EQ(dag_size(f), 2u * 200000u - 1u);
  EXPECT_EQ(f, conj_all([] {
              std::vector<Formula> v;
              for (int i = 0; i < 200000; ++i) v.push_back(atom("p" + std::to_string(i % 7)));
              return v;
            }()));
  EXPECT_EQ(past_height(f), 0);
}

TEST(Syntax, ParsesPrecedenceAndAssociativity) {
  EXPECT_EQ(parse("p && q || r"), disj(conj(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(parse("p -> q -> r"), implies(atom("p"), implies(atom("q"), atom("r"))));
  EXPECT_EQ(parse("p <-> q <-> r"), iff(iff(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(parse("p U q U r"), until(atom("p"), until(atom("q"), atom("r"))));
  EXPECT_EQ(parse("!p U q"), until(neg(atom("p")), atom("q")));
  EXPECT_EQ(parse("p U q && r"), conj(until(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(parse("G (t -> Y A)"), globally(implies(atom("t"), yesterday(atom("A")))));
  EXPECT_EQ(parse("X X p S F q"), since(next(next(atom("p"))), eventually(atom("q"))));
  EXPECT_EQ(parse("p R q"), release(atom("p"), atom("q")));
  EXPECT_EQ(parse("true && !false"), conj(top(), neg(bottom())));
}

TEST(Syntax, AtomsWithNamespaces) {
  EXPECT_EQ(parse("F (A:end#1)"), eventually(atom("A:end#1")));
  EXPECT_EQ(parse("T:t_yes#2 -> !T:t_no#2"), implies(atom("T:t_yes#2"), neg(atom("T:t_no#2"))));
  EXPECT_EQ(parse("\"X\" && R"), conj(atom("X"), atom("R")));
}

TEST(Syntax, Errors) {
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("p &&"), SyntaxError);
  EXPECT_THROW(parse("(p"), SyntaxError);
  EXPECT_THROW(parse("p q"), SyntaxError);
  EXPECT_THROW(parse("p $ q"), SyntaxError);
  try {
    parse("p && )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Syntax, PrintParseRoundTrip) {
  oracle::Rng rng(11);
  const auto aps = oracle::atom_names(3);
  for (int n = 0; n < 300; ++n) {
    const Formula f = oracle::random_formula(rng, aps, 5);
    EXPECT_EQ(parse(to_string(f)), f) << to_string(f);
  }
}

TEST(Nnf, Examples) {
  EXPECT_EQ(nnf(neg(atom("p"))), neg(atom("p")));
  EXPECT_EQ(nnf(neg(until(atom("p"), atom("q")))), release(neg(atom("p")), neg(atom("q"))));
  EXPECT_EQ(nnf(neg(globally(atom("p")))), until(top(), neg(atom("p"))));
  EXPECT_EQ(nnf(neg(yesterday(atom("p")))), weak_yesterday(neg(atom("p"))));
  EXPECT_EQ(nnf(neg(since(atom("p"), atom("q")))), trigger(neg(atom("p")), neg(atom("q"))));
  EXPECT_TRUE(is_nnf(nnf(parse("!(p -> (q <-> G r)) || !F Y s"))));
  EXPECT_FALSE(is_nnf(parse("!(p && q)")));
}

TEST(Lasso, Construction) {
  EXPECT_THROW(LassoWord({{"p"}}, 1), std::invalid_argument);
  EXPECT_THROW(LassoWord({{"p"}, {}}, 0), std::invalid_argument);
  EXPECT_THROW(LassoWord({{"p"}, {}}, 2), std::invalid_argument);
  EXPECT_THROW(LassoWord({{"p"}, {}}, 1, {"q"}), std::invalid_argument);
  const LassoWord w({{"a"}, {"b"}, {"c"}}, 1);
  EXPECT_EQ(w.fold(3), 1u);
  EXPECT_EQ(w.fold(4), 2u);
  EXPECT_EQ(w.fold(5), 1u);
  EXPECT_TRUE(w.holds(6, "c"));
  EXPECT_EQ(w.alphabet(), (std::set<std::string>{"a", "b", "c"}));
}

TEST(Eval, SpecExamples) {
  EXPECT_TRUE(eval(word({{"p"}, {"p"}}, 1), 0, globally(atom("p"))));
  EXPECT_TRUE(eval(word({{"p"}, {"q"}}, 1), 0, until(atom("p"), atom("q"))));
  EXPECT_FALSE(eval(word({{"p"}, {"p"}}, 1), 0, yesterday(atom("p"))));
  EXPECT_TRUE(satisfiable_on(word({{"p"}, {}}, 1), top()));
  EXPECT_TRUE(satisfiable_on(word({{"q"}, {}}, 1), eventually(atom("q"))));
  EXPECT_FALSE(satisfiable_on(word({{"p"}, {"p"}}, 1), eventually(neg(atom("p")))));
}

TEST(Eval, UnknownPropositionIsAnError) {
  EXPECT_THROW(eval(word({{"p"}, {}}, 1), 0, atom("zz")), UnknownProposition);
  // Declared but absent is simply false.
  EXPECT_FALSE(eval(LassoWord({{}, {}}, 1, {"zz"}), 0, atom("zz")));
}

TEST(Eval, PastAcrossTheLoop) {
  // p only at 0; loop 1..2.  Y Y p holds at 2 on the first pass only;
  // F on the loop can not find it again.
  const LassoWord w({{"p"}, {}, {}}, 1);
  EXPECT_TRUE(eval(w, 2, yesterday(yesterday(atom("p")))));
  EXPECT_FALSE(eval(w, 4, yesterday(yesterday(atom("p")))));
  EXPECT_FALSE(eval(w, 3, globally(eventually(yesterday(yesterday(atom("p")))))));
  // q at 2 only: at 3 (= 1 on the second pass) Y q holds, at 1 it does not.
  const LassoWord v({{}, {}, {"q"}}, 1);
  EXPECT_FALSE(eval(v, 1, yesterday(atom("q"))));
  EXPECT_TRUE(eval(v, 3, yesterday(atom("q"))));
  EXPECT_TRUE(eval(v, 0, eventually(conj(yesterday(atom("q")), neg(atom("q"))))));
  EXPECT_TRUE(eval(v, 1, since(neg(atom("q")), atom("q"))) == false);
  EXPECT_TRUE(eval(v, 3, since(neg(atom("q")), atom("q"))));
}

class Properties : public ::testing::Test {
 protected:
  oracle::Rng rng{2024};
  std::vector<std::string> aps = oracle::atom_names(4);
};

TEST_F(Properties, NnfPreservesTruth) {
  for (int n = 0; n < 500; ++n) {
    const Formula f = oracle::random_formula(rng, aps, 5);
    const LassoWord w = oracle::random_word(rng, aps, 6);
    const Evaluation e(w, f), g(w, nnf(f));
    for (std::size_t i = 0; i <= w.bound(); ++i) ASSERT_EQ(e.at(i), g.at(i)) << to_string(f) << " at " << i;
  }
}

TEST_F(Properties, UntilReleaseDuality) {
  for (int n = 0; n < 500; ++n) {
    const Formula a = oracle::random_formula(rng, aps, 3), b = oracle::random_formula(rng, aps, 3);
    const LassoWord w = oracle::random_word(rng, aps, 6);
    const Evaluation lhs(w, neg(until(a, b))), rhs(w, release(neg(a), neg(b)));
    for (std::size_t i = 0; i <= w.bound(); ++i) ASSERT_EQ(lhs.at(i), rhs.at(i));
  }
}

TEST_F(Properties, FixpointExpansions) {
  for (int n = 0; n < 500; ++n) {
    const Formula a = oracle::random_formula(rng, aps, 3), b = oracle::random_formula(rng, aps, 3);
    const LassoWord w = oracle::random_word(rng, aps, 6);
    const Formula u = until(a, b), s = since(a, b);
    const Evaluation eu(w, iff(u, disj(b, conj(a, next(u))))), es(w, iff(s, disj(b, conj(a, yesterday(s)))));
    for (std::size_t i = 0; i <= w.bound() + w.loop_length(); ++i) {
      ASSERT_TRUE(eu.at(i)) << to_string(u);
      ASSERT_TRUE(es.at(i)) << to_string(s);
    }
  }
}

TEST_F(Properties, AgreesWithNaiveUnrolling) {
  for (int n = 0; n < 500; ++n) {
    const Formula f = oracle::random_formula(rng, aps, 5);
    const LassoWord w = oracle::random_word(rng, aps, 6);
    const Evaluation e(w, f);
    oracle::NaiveEvaluator naive(w, f);
    for (std::size_t i = 0; i <= w.bound(); ++i) ASSERT_EQ(e.at(i), naive.at(i)) << to_string(f) << " at " << i;
  }
}
