#include <gtest/gtest.h>

#include <string>

#include "llfp/ast/parser.hpp"
#include "llfp/ast/validate.hpp"
#include "llfp/driver/driver.hpp"
#include "llfp/oracle/generator.hpp"

namespace llfp {
namespace {

const char* kEqNeq = R"(
lattice powerset {a,b}
clause (forall x. E(x;[x])),
       (forall x. forall 'Y. !E(x;'Y) => N(x;'Y))
)";

std::string first_problem(const std::string& text) {
  Program p = parse_program(text);
  try {
    check_well_formed(p, kind_has_complement(p.lattice.kind));
  } catch (const ValidationError& e) {
    return e.problems().front();
  }
  return "";
}

TEST(ParserTest, EqNeqStructure) {
  Program p = parse_program(kEqNeq);
  EXPECT_EQ(p.lattice.kind, LatticeKind::powerset);
  EXPECT_EQ(p.universe.size(), 2U);
  ASSERT_EQ(p.strata.size(), 2U);
  ASSERT_EQ(p.predicates.size(), 2U);
  EXPECT_EQ(p.predicates[0].name, "E");
  EXPECT_EQ(p.predicates[0].arity, 1U);
  EXPECT_EQ(p.strata[1].num_x, 1U);
  EXPECT_EQ(p.strata[1].num_y, 1U);
  const auto& f = std::get<Forall>(p.strata[1].clause.node);
  EXPECT_EQ(f.kind, VarKind::x);
  const auto& fy = std::get<Forall>(f.body->node);
  EXPECT_EQ(fy.kind, VarKind::y);
  EXPECT_EQ(fy.name, "'Y");
  const auto& imp = std::get<Imply>(fy.body->node);
  EXPECT_TRUE(std::get<Query>(imp.pre->node).negated);
}

TEST(ParserTest, PrintParseRoundTrip) {
  Program p = parse_program(kEqNeq);
  EXPECT_EQ(parse_program(print_program(p)), p);
}

TEST(ParserTest, RoundTripOnGeneratedInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Program p = parse_program(generate_instance(seed).text);
    std::string printed = print_program(p);
    EXPECT_EQ(parse_program(printed), p) << printed;
  }
}

TEST(ParserTest, PrecedenceAndGrouping) {
  Program p = parse_program(R"(
lattice powerset {a,b}
rel R/1
clause forall x. R(x;{a}) & R(x;{b}) | R(x;[x]) => R(x;top)
)");
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  const auto& imp = std::get<Imply>(f.body->node);
  const auto& orr = std::get<PreOr>(imp.pre->node);
  EXPECT_TRUE(std::holds_alternative<PreAnd>(orr.lhs->node));
  EXPECT_TRUE(std::holds_alternative<Query>(orr.rhs->node));
}

TEST(ParserTest, IntervalLiteralsAndFunctions) {
  Program p = parse_program(R"(
lattice interval zmin=-1 zmax=3
universe q0, x
clause A(q0,x;f_add([0,0],[-1,inf])) & A(q0,x;[-inf,2]) & A(q0,x;bot)
)");
  EXPECT_EQ(p.lattice.zmin, -1);
  EXPECT_EQ(p.lattice.zmax, 3);
  const auto& a = std::get<ClauseAnd>(p.strata[0].clause.node);
  const auto& lhs = std::get<ClauseAnd>(a.lhs->node);
  const auto& first = std::get<Assert>(lhs.lhs->node);
  EXPECT_EQ(std::get<FnApp>(first.value.node).name, "f_add");
}

TEST(ParserTest, FactsAndUniverseOrder) {
  Program p = parse_program(R"(
lattice signs
universe q, 0
fact R(0,q) = {0}
)");
  EXPECT_EQ(p.universe.names(), (std::vector<std::string>{"q", "0"}));
  ASSERT_EQ(p.facts.size(), 1U);
  EXPECT_EQ(p.facts[0].args, (std::vector<AtomId>{1, 0}));
  EXPECT_TRUE(p.strata.empty());
}

TEST(ParserTest, Errors) {
  auto fails_with = [](const char* text, const std::string& needle) {
    try {
      parse_program(text);
    } catch (const ParseError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails_with("rel R/1", "lattice declaration"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nclause R(a;{a}) & R(a,a;{a})", "arity mismatch"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nclause R(a;f_add({a},{a}))", "unknown function symbol"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nfun f_add/2", "unknown function symbol"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nfact R(z) = {a}", "unknown atom"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nclause R(a;{z})", "unknown atom"));
  EXPECT_TRUE(fails_with("lattice signs\nclause R(a;{x})", "unknown sign"));
  EXPECT_TRUE(fails_with("lattice interval zmin=0 zmax=1\nclause R(a;{a})", "set literal"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nclause exists x. R(x;{a})", "exists is only allowed"));
  EXPECT_TRUE(fails_with("lattice powerset {a}\nclause (R(a;{a})", "expected"));
  EXPECT_TRUE(fails_with("lattice interval zmin=2 zmax=1", "zmin <= zmax"));
  try {
    parse_program("lattice powerset {a}\n\nclause R(a;{a}) &");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(ValidateTest, FreeVariablesAreReported) {
  EXPECT_NE(first_problem("lattice powerset {a}\nclause R(x;{a})").find("free variable x"), std::string::npos);
  EXPECT_NE(first_problem("lattice powerset {a}\nclause forall x. R(x;'Y)").find("free variable 'Y"),
            std::string::npos);
  EXPECT_EQ(first_problem(kEqNeq), "");
}

TEST(ValidateTest, FunctionTermsOnlyInAssertions) {
  auto msg = first_problem("lattice powerset {a}\nclause forall x. R(x;union([x],[x])) => S(x;[x])");
  EXPECT_NE(msg.find("function term union"), std::string::npos);
  EXPECT_NE(msg.find("clause 1"), std::string::npos);
  EXPECT_EQ(first_problem("lattice powerset {a}\nclause forall x. R(x;[x]) => S(x;union([x],[x]))"), "");
}

TEST(ValidateTest, NegationNeedsComplement) {
  auto msg = first_problem("lattice interval zmin=0 zmax=1\nuniverse q\nclause R(q;top), (!R(q;top) => S(q;top))");
  EXPECT_NE(msg.find("without complement"), std::string::npos);
}

TEST(ValidateTest, AllProblemsCollected) {
  Program p = parse_program("lattice powerset {a}\nclause R(x;{a}) & S(z;{a})");
  try {
    check_well_formed(p, true);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.problems().size(), 2U);
  }
}

TEST(RankTest, EqNeqRanks) {
  Program p = parse_program(kEqNeq);
  auto ranks = compute_ranks(p);
  EXPECT_EQ(ranks, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(p.predicates[1].rank, 2U);
  EXPECT_TRUE(verify_ranks(p, ranks).empty());
}

TEST(RankTest, MutualNegationRejected) {
  Program p = parse_program(R"(
lattice powerset {a,b}
clause (forall x. forall 'Y. !P(x;'Y) => Q(x;'Y)),
       (forall x. forall 'Y. !Q(x;'Y) => P(x;'Y))
)");
  try {
    compute_ranks(p);
    FAIL();
  } catch (const StratificationError& e) {
    EXPECT_NE(std::string(e.what()).find("stratification violation"), std::string::npos);
  }
}

TEST(RankTest, AssertedInTwoElements) {
  Program p = parse_program("lattice powerset {a}\nclause R(a;{a}), R(a;top)");
  EXPECT_THROW(compute_ranks(p), StratificationError);
}

TEST(RankTest, PositiveQueryOfHigherRank) {
  Program p = parse_program("lattice powerset {a}\nclause (R(a;{a}) => S(a;{a})), R(a;{a})");
  EXPECT_THROW(compute_ranks(p), StratificationError);
}

TEST(RankTest, NegativeQueryOfSameRank) {
  Program p = parse_program("lattice powerset {a}\nclause R(a;{a}) & (!R(a;{a}) => S(a;{a}))");
  EXPECT_THROW(compute_ranks(p), StratificationError);
}

TEST(RankTest, FactOnAssertedPredicate) {
  Program p = parse_program("lattice powerset {a}\nfact R(a) = {a}\nclause R(a;top)");
  EXPECT_THROW(compute_ranks(p), StratificationError);
}

TEST(RankTest, VerifyRanksIndependently) {
  Program p = parse_program(kEqNeq);
  EXPECT_FALSE(verify_ranks(p, {2, 2}).empty());
  EXPECT_FALSE(verify_ranks(p, {1, 1}).empty());
}

TEST(ReorderTest, ApplyMovesAfterEveryDefinition) {
  Program p = load_program(R"(
lattice powerset {a,b}
rel R/1
rel S/1
rel T/1
clause forall x. forall 'Y. 'Y(x) & R(x;'Y) & S(x;'Y) => T(x;'Y)
)");
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  const auto& fy = std::get<Forall>(f.body->node);
  const Pre& pre = *std::get<Imply>(fy.body->node).pre;
  const auto& top = std::get<PreAnd>(pre.node);
  EXPECT_TRUE(std::holds_alternative<Apply>(top.rhs->node));
  EXPECT_EQ(print_pre(p, pre), "R(x;'Y) & S(x;'Y) & 'Y(x)");
}

TEST(ReorderTest, NeutralWhenAlreadyOrdered) {
  const char* text = R"(
lattice powerset {a,b}
clause forall x. forall 'Y. R(x;'Y) & 'Y(x) & (S(x;[x]) | S(x;{a})) => T(x;'Y)
)";
  Program p = parse_program(text);
  compute_ranks(p);
  EXPECT_EQ(reorder_preconditions(p), p);
}

TEST(ReorderTest, ApplyBeforeLaterDefinitionMoves) {
  Program p = load_program(R"(
lattice powerset {a,b}
clause forall x. forall 'Y. R(x;'Y) & 'Y(x) & (S(x;[x]) | S(x;'Y)) => T(x;'Y)
)");
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  const auto& fy = std::get<Forall>(f.body->node);
  EXPECT_EQ(print_pre(p, *std::get<Imply>(fy.body->node).pre), "R(x;'Y) & (S(x;[x]) | S(x;'Y)) & 'Y(x)");
}

TEST(ReorderTest, RecursesIntoOrAndExists) {
  Program p = load_program(R"(
lattice powerset {a,b}
clause forall x. (exists 'Y. 'Y(x) & R(x;'Y)) | S(x;{a}) => T(x;{a})
)");
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  const Pre& pre = *std::get<Imply>(f.body->node).pre;
  EXPECT_EQ(print_pre(p, pre), "(exists 'Y. R(x;'Y) & 'Y(x)) | S(x;{a})");
}

TEST(FreeVarsTest, Basic) {
  Program p = parse_program("lattice powerset {a}\nclause forall x. forall 'Y. R(x;'Y) & (exists z. R(z;[x])) => S(x;'Y)");
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  EXPECT_TRUE(free_vars(p.strata[0].clause).empty());
  const auto& fy = std::get<Forall>(f.body->node);
  const Pre& pre = *std::get<Imply>(fy.body->node).pre;
  auto fv = free_vars(pre);
  EXPECT_EQ(fv.size(), 2U);
  EXPECT_EQ(defined_y(pre).size(), 1U);
  EXPECT_TRUE(applied_y(pre).empty());
}

}  // namespace
}  // namespace llfp
