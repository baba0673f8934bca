#include <gtest/gtest.h>

#include "fomc/fomc.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fomc;
using support::F;

TEST(Vocabulary, RejectsDuplicatesAndNullaryFunctions) {
  Vocabulary v;
  v.add_relation("E", 2);
  EXPECT_THROW(v.add_constant("E"), VocabularyError);
  EXPECT_THROW(v.add_function("f", 0), VocabularyError);
  EXPECT_THROW(v.add_relation("R", 0), VocabularyError);
  EXPECT_EQ(v.symbol_count(), 1u);
}

TEST(FreshSymbol, AppendsUnderscoreUntilUnused) {
  Vocabulary v;
  v.add_constant("c").add_constant("c_");
  EXPECT_EQ(fresh_symbol(v, "c"), "c__");
  EXPECT_EQ(fresh_symbol(v, "d"), "d");
}

TEST(Structure, ValidatesTuplesAndTables) {
  Vocabulary v;
  v.add_relation("E", 2).add_function("f", 1);
  Structure a(v, 2);
  EXPECT_THROW(a.set_relation("E", {{0, 2}}), StructureError);
  EXPECT_THROW(a.set_relation("E", {{0}}), StructureError);
  EXPECT_THROW(a.set_function("f", {1}), StructureError);
  EXPECT_THROW(Structure(v, 0), StructureError);
  a.set_function("f", {1, 0});
  EXPECT_EQ(a.function("f")(std::vector<Element>{0}), 1u);
}

TEST(Metrics, SubformulaCount) {
  EXPECT_EQ(subformula_count(F("R(x,y)")), 1u);
  EXPECT_EQ(subformula_count(F("(R(x,y) & R(y,x))")), 3u);
  for (std::size_t k = 0; k <= 10; ++k) {
    // Independent count: EX x, &, S(x), then per step EX y, &, |, =, E, EX x, &, =.
    EXPECT_EQ(subformula_count(chain_sentence(k)), 4 + 8 * k);
  }
}

TEST(Metrics, Width) {
  EXPECT_EQ(width(F("EX x. EX y. E(x,y)")), 2u);
  EXPECT_EQ(width(F("R(x)")), 1u);
  for (std::size_t k = 1; k <= 6; ++k) EXPECT_EQ(width(chain_sentence(k)), 2u);
}

TEST(Metrics, FreeVarsInFirstAppearanceOrder) {
  using V = std::vector<std::string>;
  EXPECT_EQ(free_vars(F("E(x,y)")), (V{"x", "y"}));
  EXPECT_EQ(free_vars(F("EX x. E(x,y)")), (V{"y"}));
  EXPECT_EQ(free_vars(F("(E(y,x) | EX y. T(y))")), (V{"y", "x"}));
}

TEST(Classify, Examples) {
  auto qf = classify(F("(R(x) & ~S(x))"));
  EXPECT_EQ(qf.sigma_level, 0u);
  EXPECT_EQ(qf.pi_level, 0u);

  auto ea = classify(F("EX x. ALL y. E(x,y)"));
  EXPECT_EQ(ea.sigma_level, 2u);
  EXPECT_FALSE(ea.pi_level);

  auto ne = classify(F("~EX x. R(x)"));
  EXPECT_FALSE(ne.sigma_level);
  EXPECT_EQ(ne.pi_level, 1u);

  auto chain = classify(chain_sentence(3));
  EXPECT_EQ(chain.sigma_level, 1u);
  EXPECT_EQ(chain.num_variables, 2u);
  EXPECT_EQ(chain.subformula_count, 28u);
  EXPECT_EQ(chain.encoding_length, print_formula(chain_sentence(3)).size());
}

TEST(Classify, MatchesGrammarOracle) {
  Rng rng(11);
  for (int i = 0; i < 600; ++i) {
    Formula f = support::random_sentence(rng, 3, rng.below(4), 40, false, rng.chance(0.5));
    auto c = classify(f);
    auto o = oracle::reported_levels(f);
    ASSERT_EQ(c.sigma_level, o.sigma) << print_formula(f);
    ASSERT_EQ(c.pi_level, o.pi) << print_formula(f);
    ASSERT_LE(c.width, c.num_variables);
    ASSERT_EQ(c.sigma_level == 0u, c.pi_level == 0u);
    ASSERT_EQ(c.sigma_level == 0u, is_quantifier_free(f));
  }
}

TEST(Classify, MonotoneUnderQuantifiers) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    Formula f = support::random_sentence(rng, 2, rng.below(3), 30, false, rng.chance(0.5));
    auto c = classify(f);
    if (c.sigma_level) {
      EXPECT_EQ(classify(Formula::exists("x1", f)).sigma_level,
                std::max<std::size_t>(*c.sigma_level, 1));
    }
    if (c.pi_level) {
      EXPECT_EQ(classify(Formula::forall("x1", f)).pi_level,
                std::max<std::size_t>(*c.pi_level, 1));
    }
  }
}

TEST(Nnf, Examples) {
  EXPECT_EQ(nnf(F("~(A(x) & B(x))")), F("(~A(x) | ~B(x))"));
  EXPECT_EQ(nnf(F("~EX x. R(x)")), F("ALL x. ~R(x)"));
  EXPECT_EQ(nnf(F("~~R(x)")), F("R(x)"));
}

TEST(Nnf, PreservesTruthAndDoesNotGrow) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Formula f = support::random_sentence(rng, 2, rng.below(3), 30, false, rng.chance(0.5));
    Formula g = nnf(f);
    ASSERT_TRUE(is_nnf(g));
    // Pushing a negation onto two literals adds one node.
    ASSERT_LE(subformula_count(g), 2 * subformula_count(f));
    Structure a = random_structure(standard_vocabulary(), 1 + rng.below(4), 0.5, rng);
    ASSERT_EQ(oracle::holds(f, a, {}), oracle::holds(g, a, {})) << print_formula(f);
  }
}

TEST(SubstituteConst, Examples) {
  Vocabulary v;
  v.add_relation("E", 2).add_relation("R", 1).add_relation("S", 1).add_constant("s");
  EXPECT_EQ(substitute_const(F("E(x,y)"), "x", "s", v), parse_formula("E(s,y)", v));
  EXPECT_EQ(substitute_const(F("EX x. E(x,y)"), "x", "s", v), F("EX x. E(x,y)"));
  EXPECT_EQ(substitute_const(F("(R(x) & EX x. S(x))"), "x", "s", v),
            parse_formula("(R(s) & EX x. S(x))", v));
  EXPECT_THROW(substitute_const(F("R(x)"), "x", "nope", v), VocabularyError);
}

TEST(SubstituteConst, RemovesExactlyTheVariable) {
  Rng rng(14);
  Vocabulary v = standard_vocabulary();
  for (int i = 0; i < 200; ++i) {
    FormulaGenParams p;
    p.vars = 3;
    p.level = 0;
    p.norm = 1 + rng.below(15);
    Formula f = random_formula(p, rng);
    auto before = free_vars(f);
    std::vector<std::string> expect;
    for (const auto& x : before) {
      if (x != "x1") expect.push_back(x);
    }
    EXPECT_EQ(free_vars(substitute_const(f, "x1", "c", v)), expect);
  }
}

TEST(StructureSize, Examples) {
  Structure g = support::graph_structure(support::path_graph(3));
  EXPECT_EQ(structure_size(g), 8u);

  Vocabulary v;
  v.add_function("f", 1);
  Structure a(v, 2);
  EXPECT_EQ(structure_size(a), 5u);
}

TEST(EvalAtom, Examples) {
  Structure g = support::graph_structure(support::path_graph(2));
  EXPECT_TRUE(eval_atom(F("E(x,y)"), g, {{"x", 0}, {"y", 1}}));

  Structure three(Vocabulary{}, 3);
  EXPECT_TRUE(eval_atom(F("x=y"), three, {{"x", 2}, {"y", 2}}));

  Vocabulary v;
  v.add_relation("R", 1).add_function("f", 1);
  Structure a(v, 2);
  a.set_relation("R", {{1}}).set_function("f", {1, 0});
  Formula atom = parse_formula("R(f(x))", v);
  EXPECT_TRUE(eval_atom(atom, a, {{"x", 0}}));
  EXPECT_FALSE(eval_atom(atom, a, {{"x", 1}}));
  EXPECT_THROW(eval_atom(atom, a, {}), AssignmentError);
}

TEST(Assignment, Contract) {
  Assignment a{{"x", 1}};
  EXPECT_THROW(a.bind("x", 2), AssignmentError);
  EXPECT_THROW(a.check_range(1), AssignmentError);
  EXPECT_EQ(a.restrict({"x"}), a);
  EXPECT_THROW(a.restrict({"y"}), AssignmentError);
}

TEST(Generators, FormulaLevelAndNormAreExact) {
  Rng rng(15);
  for (int i = 0; i < 400; ++i) {
    FormulaGenParams p;
    p.vars = 1 + rng.below(3);
    p.level = rng.below(4);
    p.pi = rng.chance(0.5);
    p.norm = p.level + 1 + rng.below(40);
    Formula f = random_formula(p, rng);
    ASSERT_EQ(subformula_count(f), p.norm);
    ASSERT_TRUE(is_sentence(f));
    ASSERT_LE(num_variables(f), p.vars);
    auto lv = oracle::reported_levels(f);
    ASSERT_EQ(p.pi ? lv.pi : lv.sigma, p.level) << print_formula(f);
  }
}

TEST(Generators, SeededStreamsRepeat) {
  Rng a(99), b(99);
  Structure sa = random_structure(standard_vocabulary(true), 3, 0.5, a);
  Structure sb = random_structure(standard_vocabulary(true), 3, 0.5, b);
  EXPECT_EQ(sa, sb);
}
