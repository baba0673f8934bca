#include <gtest/gtest.h>

#include "fomc/fomc.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fomc;
using support::F;

// --- bounded reachability to model checking --------------------------------

TEST(StconToMc, ZeroBoundSelfLoopFree) {
  Digraph g(1);
  auto [a, phi] = stcon_to_mc({g, 0, 0, 0});
  EXPECT_EQ(phi, F("EX x. (S(x) & T(x))"));
  EXPECT_TRUE(eval_brute(phi, a).answer);
}

TEST(StconToMc, SingleEdge) {
  Digraph g(2);
  g.add_edge(0, 1);
  auto [a, phi] = stcon_to_mc({g, 0, 1, 1});
  EXPECT_TRUE(evaluate(phi, a, Engine::Auto).answer);
  auto [b, psi] = stcon_to_mc({Digraph(2), 0, 1, 1});
  EXPECT_FALSE(evaluate(psi, b, Engine::Auto).answer);
}

TEST(StconToMc, OutputShape) {
  for (std::size_t k = 0; k <= 12; ++k) {
    Formula phi = chain_sentence(k);
    auto c = classify(phi);
    EXPECT_EQ(c.subformula_count, 8 * k + 4);
    EXPECT_EQ(c.num_variables, k == 0 ? 1u : 2u);
    EXPECT_EQ(c.sigma_level, 1u);
    if (k >= 1) {
      EXPECT_EQ(c.width, 2u);
    }
  }
}

TEST(StconToMc, ExhaustiveSmallGraphsBrute) {
  for (unsigned mask = 0; mask < 512; mask += 7) {
    Digraph g(3);
    for (unsigned bit = 0; bit < 9; ++bit) {
      if (mask >> bit & 1u) g.add_edge(bit / 3, bit % 3);
    }
    for (Vertex s = 0; s < 3; ++s) {
      for (Vertex t = 0; t < 3; ++t) {
        for (std::size_t k = 0; k <= 3; ++k) {
          auto [a, phi] = stcon_to_mc({g, s, t, k});
          ASSERT_EQ(eval_brute(phi, a).answer, oracle::path_within(g, s, t, k));
        }
      }
    }
  }
}

// --- model checking to reachability ----------------------------------------

TEST(McToStcon, ConstantEquality) {
  Vocabulary v;
  v.add_constant("c");
  Structure a(v, 2);
  McStcon r = mc_to_stcon(a, parse_formula("c=c", v));
  EXPECT_EQ(r.instance.graph.vertex_count(), 2u);
  EXPECT_EQ(r.instance.graph.edges().size(), 1u);
  EXPECT_EQ(bfs_distance(r.instance.graph, r.instance.source, r.instance.target), 1u);
  EXPECT_EQ(r.instance.bound, 2u);
}

TEST(McToStcon, RejectsNonSigma1Nnf) {
  Structure a = parse_structure("universe 2\nrel S 1\n0\n.\n");
  EXPECT_THROW(mc_to_stcon(a, F("ALL x. S(x)")), PreconditionError);
  EXPECT_THROW(mc_to_stcon(a, F("~EX x. S(x)")), PreconditionError);
}

TEST(McToStcon, AgreesWithBruteOnRandomSentences) {
  Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    Formula phi = nnf(support::random_sentence(rng, 1 + rng.below(3), 1, 30));
    Structure a = random_structure(standard_vocabulary(), 1 + rng.below(4), rng.unit(), rng);
    McStcon r = mc_to_stcon(a, phi);
    const auto& inst = r.instance;
    std::size_t norm = subformula_count(phi);
    ASSERT_EQ(inst.bound, 2 * norm);
    ASSERT_LE(inst.graph.vertex_count(),
              2 * norm * checked_power(a.universe_size(), width(phi)));
    bool truth = eval_brute(phi, a).answer;
    auto d = bfs_distance(inst.graph, inst.source, inst.target);
    ASSERT_EQ(d.has_value(), truth) << print_formula(phi);
    if (d) {
      ASSERT_LE(*d, 2 * norm - 1);
    }
    ASSERT_EQ(bfs_reach(inst.graph, inst.source, inst.target, inst.bound), truth);
  }
}

TEST(McToStcon, VertexAssignmentsCoverFreeVariables) {
  Rng rng(52);
  for (int i = 0; i < 60; ++i) {
    Formula phi = nnf(support::random_sentence(rng, 3, 1, 25));
    Structure a = random_structure(standard_vocabulary(), 2, 0.5, rng);
    McStcon r = mc_to_stcon(a, phi);
    ASSERT_EQ(r.vertices.size(), r.instance.graph.vertex_count());
    for (const auto& v : r.vertices) {
      std::vector<std::string> vars;
      for (const auto& [x, e] : v.alpha.bindings()) vars.push_back(x);
      ASSERT_EQ(vars, free_vars(subformula_at(phi, v.position)));
    }
  }
}

// Conjunctions must check both conjuncts: false right conjunct, no path.
TEST(McToStcon, ConjunctionNeedsRightConjunct) {
  Structure a = parse_structure("universe 2\nrel S 1\n0\n.\nrel T 1\n.\n");
  McStcon r = mc_to_stcon(a, F("EX x. (S(x) & T(x))"));
  EXPECT_FALSE(bfs_reach(r.instance.graph, r.instance.source, r.instance.target));
}

// --- function elimination ----------------------------------------------------

TEST(ExtendStructure, BinaryFunction) {
  Vocabulary v;
  v.add_function("f", 2);
  Structure a(v, 2);
  a.set_function("f", {0, 1, 1, 0});
  ExtendedStructure e = extend_structure(a);
  EXPECT_EQ(e.structure.universe_size(), 6u);
  const Relation& re = e.structure.relation(e.names.extend);
  for (Element id = 2; id < 6; ++id) {
    const Tuple& t = e.elements[id];
    ASSERT_EQ(t.size(), 2u);
    EXPECT_TRUE(re.contains(std::vector<Element>{t[0], t[1], id}));
  }
  EXPECT_THROW(extend_structure(Structure(v, 1)), PreconditionError);
}

TEST(ExtendStructure, PrefixesOfRelationTuples) {
  Structure a = parse_structure("universe 2\nrel R 3\n0 1 1\n.\n");
  ExtendedStructure e = extend_structure(a);
  // 0, 1, (0,1), (0,1,1)
  EXPECT_EQ(e.structure.universe_size(), 4u);
  EXPECT_EQ(e.structure.relation(e.names.relations.at("R")).size(), 1u);
  EXPECT_EQ(e.structure.relation(e.names.universe).size(), 2u);
}

TEST(ValueFormulas, Examples) {
  ExtendedNames names;
  names.universe = "U";
  names.constants["c"] = "U_c";
  names.functions["f"] = "F_f";
  names.extend = "R_e";
  FunctionEliminator el(names, "x", "y", "z", true);
  EXPECT_EQ(el.value(Term::var("x2"), false), F("x=x2"));
  EXPECT_EQ(el.value(Term::var("x2"), true), F("x=x2"));
  EXPECT_EQ(el.value(Term::constant("c"), false), Formula::rel("U_c", {Term::var("x")}));
  EXPECT_EQ(el.value(Term::constant("c"), true), Formula::rel("U_c", {Term::var("x")}));

  Vocabulary v;
  v.add_function("f", 1);
  Structure a(v, 2);
  a.set_function("f", {1, 1});
  ExtendedStructure e = extend_structure(a);
  FunctionEliminator real(e.names, "x", "y", "z", true);
  Formula val = real.value(Term::apply("f", {Term::var("x1")}), false);
  Formula uval = real.value(Term::apply("f", {Term::var("x1")}), true);
  for (Element x = 0; x < 2; ++x) {
    EXPECT_EQ(eval_brute(val, e.structure, {{"x", x}, {"x1", 0}}).answer, x == 1);
    EXPECT_EQ(eval_brute(uval, e.structure, {{"x", x}, {"x1", 0}}).answer, x == 1);
  }
}

TEST(EliminateFunctions, Examples) {
  Vocabulary v;
  v.add_relation("R", 1).add_function("f", 1);
  Structure a(v, 2);
  a.set_relation("R", {{1}}).set_function("f", {1, 0});
  Formula phi = parse_formula("EX x1. R(f(x1))", v);
  EliminationResult r = eliminate_functions(a, phi);
  EXPECT_TRUE(eval_brute(phi, a).answer);
  EXPECT_TRUE(eval_brute(r.trans, r.extended.structure).answer);

  Formula id = parse_formula("ALL x1. x1=x1", v);
  EliminationResult s = eliminate_functions(a, id);
  EXPECT_EQ(s.trans, F("ALL x1. (~U(x1) | x1=x1)"));
  EXPECT_TRUE(eval_brute(s.trans, s.extended.structure).answer);
  EXPECT_THROW(eliminate_functions(a, parse_formula("R(x1)", v)), PreconditionError);
}

TEST(EliminateFunctions, FunctionFreeInputOnlyGainsRelativization) {
  Structure a = parse_structure("universe 3\nrel S 1\n0\n.\n");
  EliminationResult r = eliminate_functions(a, F("ALL x. (S(x) | EX y. ~x=y)"));
  EXPECT_EQ(r.trans, F("ALL x. (~U(x) | (S(x) | EX y. (U(y) & ~x=y)))"));
}

TEST(EliminateFunctions, AuxiliaryNamesAvoidCollisions) {
  Vocabulary v;
  v.add_relation("P", 1).add_function("f", 1);
  Structure a(v, 2);
  a.set_relation("P", {{0}}).set_function("f", {1, 0});
  EliminationResult r = eliminate_functions(a, parse_formula("EX x. EX y. P(f(x))", v));
  EXPECT_EQ(r.aux_vars, (std::vector<std::string>{"x_", "y_", "z"}));
  // f(1) = 0 lies in P.
  EXPECT_TRUE(eval_brute(r.trans, r.extended.structure).answer);
}

namespace {

void check_elimination(std::uint64_t seed, int cases, bool keep) {
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::size_t s = 1 + rng.below(2);
    std::size_t t = 1 + rng.below(2);
    Formula phi = support::random_sentence(rng, s, t, 20, true, rng.chance(0.3));
    Structure a = random_structure(standard_vocabulary(true), 2 + rng.below(3), rng.unit(), rng);
    EliminationOptions opts;
    opts.keep_variable_atoms = keep;
    EliminationResult r = eliminate_functions(a, phi, opts);
    ASSERT_EQ(eval_brute(r.trans, r.extended.structure).answer, eval_brute(phi, a).answer)
        << print_formula(phi);
    ASSERT_LE(num_variables(r.trans), s + 3);
    ASSERT_LE(r.extended.structure.universe_size(),
              structure_size(a) * structure_size(a));
    ASSERT_EQ(eval_brute(r.normalized, r.extended.structure).answer,
              eval_brute(r.trans, r.extended.structure).answer);
  }
}

}  // namespace

TEST(EliminateFunctions, RandomSuite) { check_elimination(53, 300, true); }

TEST(EliminateFunctions, RandomSuiteFullTranslation) { check_elimination(54, 150, false); }
