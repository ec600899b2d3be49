#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "llfp/ast/interpretation.hpp"
#include "llfp/driver/driver.hpp"
#include "llfp/solver/solver.hpp"

namespace llfp {
namespace {

using PEnv = Env<BitSet>;

/// Powerset {a,b,c} with its builtin registry.
class PowersetFixture : public ::testing::Test {
 protected:
  PowersetFixture() : lat_({"a", "b", "c"}), reg_(lat_) {
    register_builtins(reg_, lat_);
    reg_.freeze();
  }

  BitSet set(std::initializer_list<const char*> atoms) const {
    BitSet out = lat_.bottom();
    for (const char* a : atoms) out = lat_.join(out, lat_.beta(a));
    return out;
  }

  std::string solve_dump(const std::string& text) {
    Program p = load_program(text);
    Solver solver(p, lat_, reg_);
    solver.solve();
    return dump_interpretation(p, lat_, solver.result());
  }

  PowersetLattice lat_;
  FunctionRegistry<PowersetLattice> reg_;
};

/// The precondition of the implication under the leading quantifiers of clause i.
const Pre& pre_of(const Program& p, std::size_t i = 0) {
  const Clause* c = &p.strata[i].clause;
  while (const auto* f = std::get_if<Forall>(&c->node)) c = &*f->body;
  return *std::get<Imply>(c->node).pre;
}

const Query& query_of(const Program& p, std::size_t i = 0) { return std::get<Query>(pre_of(p, i).node); }

TEST(UnifyTermsTest, ConstantsAndVariables) {
  std::vector<Term> u{Term::var("x", 0), Term::constant("b", 1), Term::var("x", 0)};
  PEnv env(1, 0);
  std::vector<AtomId> ok{2, 1, 2};
  auto e = unify_terms<BitSet>(env, u, ok);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->atom(0), std::optional<AtomId>(2));
  std::vector<AtomId> wrong_constant{2, 0, 2};
  EXPECT_FALSE(unify_terms<BitSet>(env, u, wrong_constant).has_value());
  std::vector<AtomId> repeated_mismatch{2, 1, 0};
  EXPECT_FALSE(unify_terms<BitSet>(env, u, repeated_mismatch).has_value());
  PEnv bound = env;
  bound.x[0] = 0;
  EXPECT_FALSE(unify_terms<BitSet>(bound, u, ok).has_value());
}

TEST_F(PowersetFixture, UnifyValueYVariable) {
  Program p = load_program("lattice powerset {a,b,c}\nclause forall x. forall 'Y. R(x;'Y) => S(x;'Y)");
  Solver solver(p, lat_, reg_);
  const auto& q = query_of(p);
  std::vector<PEnv> seen;
  auto collect = [&](const PEnv& e) { seen.push_back(e); };

  PEnv env(1, 1);
  solver.unify_value(env, q.value, set({"a", "b"}), collect);
  ASSERT_EQ(seen.size(), 1U);
  EXPECT_EQ(seen[0].y[0], std::optional<BitSet>(set({"a", "b"})));

  seen.clear();
  env.y[0] = set({"b", "c"});
  solver.unify_value(env, q.value, set({"a", "b"}), collect);
  ASSERT_EQ(seen.size(), 1U);
  EXPECT_EQ(seen[0].y[0], std::optional<BitSet>(set({"b"})));

  seen.clear();
  env.y[0] = set({"c"});
  solver.unify_value(env, q.value, set({"a", "b"}), collect);
  EXPECT_TRUE(seen.empty());
}

TEST_F(PowersetFixture, UnifyValueRepresentationAndLiteral) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
clause forall x. R(x;[x]) => S(x;{a}),
       forall x. R(x;{a,b}) => T(x;{a})
)");
  Solver solver(p, lat_, reg_);
  std::vector<PEnv> seen;
  auto collect = [&](const PEnv& e) { seen.push_back(e); };

  PEnv env(1, 0);
  solver.unify_value(env, query_of(p, 0).value, set({"a", "c"}), collect);
  ASSERT_EQ(seen.size(), 2U);
  EXPECT_EQ(seen[0].atom(0), std::optional<AtomId>(0));
  EXPECT_EQ(seen[1].atom(0), std::optional<AtomId>(2));

  seen.clear();
  env.x[0] = 1;
  solver.unify_value(env, query_of(p, 0).value, set({"a", "c"}), collect);
  EXPECT_TRUE(seen.empty());
  env.x[0] = 2;
  solver.unify_value(env, query_of(p, 0).value, set({"a", "c"}), collect);
  EXPECT_EQ(seen.size(), 1U);

  seen.clear();
  solver.unify_value(env, query_of(p, 1).value, set({"a", "b", "c"}), collect);
  solver.unify_value(env, query_of(p, 1).value, set({"a"}), collect);
  EXPECT_EQ(seen.size(), 1U);
}

TEST_F(PowersetFixture, UnifyCombinesTermsAndValue) {
  Program p = load_program("lattice powerset {a,b,c}\nclause forall x. forall 'Y. R(x,b;'Y) => S(x;'Y)");
  Solver solver(p, lat_, reg_);
  const auto& q = query_of(p);
  int calls = 0;
  PEnv env(1, 1);
  std::vector<AtomId> hit{0, 1};
  std::vector<AtomId> miss{0, 2};
  solver.unify(env, q.args, q.value, hit, set({"c"}), [&](const PEnv& e) {
    ++calls;
    EXPECT_EQ(e.atom(0), std::optional<AtomId>(0));
    EXPECT_EQ(e.y[0], std::optional<BitSet>(set({"c"})));
  });
  solver.unify(env, q.args, q.value, miss, set({"c"}), [&](const PEnv&) { ++calls; });
  EXPECT_EQ(calls, 1);
}

TEST_F(PowersetFixture, UnifiableEnumeratesOpenVariables) {
  Program p = load_program("lattice powerset {a,b,c}\nclause forall x. forall z. R(x,b;union([x],[z]))");
  Solver solver(p, lat_, reg_);
  const auto& f = std::get<Forall>(p.strata[0].clause.node);
  const auto& g = std::get<Forall>(f.body->node);
  const auto& a = std::get<Assert>(g.body->node);
  std::vector<std::pair<Tuple, BitSet>> got;
  PEnv env(2, 0);
  env.x[0] = 0;
  solver.unifiable(env, a.args, a.value, [&](const Tuple& t, const BitSet& l) { got.emplace_back(t, l); });
  ASSERT_EQ(got.size(), 3U);
  EXPECT_EQ(got[0].first, (Tuple{0, 1}));
  EXPECT_EQ(got[0].second, set({"a"}));
  EXPECT_EQ(got[2].second, set({"a", "c"}));
}

TEST_F(PowersetFixture, StoreHasAndAdd) {
  std::vector<Predicate> preds{{"R", 2, 1}};
  ResultStore<PowersetLattice> store(lat_, preds);
  store.begin_stratum(1);
  std::vector<AtomId> t{0, 1};
  EXPECT_TRUE(store.has(0, t, lat_.bottom()));
  EXPECT_FALSE(store.has(0, t, set({"a"})));
  auto grown = store.add(0, t, set({"a"}));
  ASSERT_TRUE(grown.has_value());
  EXPECT_EQ(*grown, set({"a"}));
  EXPECT_FALSE(store.add(0, t, set({"a"})).has_value());
  EXPECT_EQ(store.add(0, t, set({"b"})), std::optional<BitSet>(set({"a", "b"})));
  EXPECT_TRUE(store.has(0, t, set({"b"})));
  EXPECT_EQ(store.stats().growths, 2U);
  EXPECT_EQ(store.stats().non_growing_adds, 1U);
  EXPECT_EQ(store.stats().last_modified_stratum[0], 1);
  std::vector<AtomId> p0{0};
  std::vector<AtomId> p1{1};
  EXPECT_EQ(store.snapshot(0, p0).size(), 1U);
  EXPECT_TRUE(store.snapshot(0, p1).empty());
}

TEST_F(PowersetFixture, StoreRejectsWritesToFinishedStrata) {
  std::vector<Predicate> preds{{"R", 1, 1}, {"S", 1, 2}};
  ResultStore<PowersetLattice> store(lat_, preds);
  store.begin_stratum(2);
  std::vector<AtomId> t{0};
  EXPECT_THROW(store.add(0, t, set({"a"})), InvariantViolation);
  EXPECT_NO_THROW(store.add(1, t, set({"a"})));
  EXPECT_TRUE(store.is_final(0));
  EXPECT_FALSE(store.is_final(1));
}

TEST(InflStoreTest, RegisterDeliverAndFilter) {
  InflStore<int> infl(2);
  std::vector<std::pair<Tuple, int>> first;
  std::vector<std::pair<Tuple, int>> second;
  auto a = infl.add(0, Tuple{1}, 0, [&](const Tuple& t, const int& v) { first.emplace_back(t, v); });
  auto b = infl.add(0, Tuple{}, 0, [&](const Tuple& t, const int& v) { second.emplace_back(t, v); });
  infl.sweep(a, {{Tuple{1, 0}, 5}});
  infl.sweep(b, {});
  infl.deliver(0, Tuple{1, 2}, 7);
  infl.deliver(0, Tuple{0, 2}, 8);
  infl.deliver(1, Tuple{1, 2}, 9);
  EXPECT_EQ(first, (std::vector<std::pair<Tuple, int>>{{Tuple{1, 0}, 5}, {Tuple{1, 2}, 7}}));
  EXPECT_EQ(second, (std::vector<std::pair<Tuple, int>>{{Tuple{1, 2}, 7}, {Tuple{0, 2}, 8}}));
  EXPECT_EQ(infl.growth_deliveries(), 3U);
  auto recs = infl.records();
  EXPECT_EQ(recs[0].sweep_size, 1U);
  EXPECT_EQ(recs[0].growth_deliveries, 1U);
  EXPECT_EQ(recs[1].growth_deliveries, 2U);
}

TEST(InflStoreTest, ConsumerRegisteredDuringDeliveryIsNotCalledTwice) {
  InflStore<int> infl(1);
  int inner_calls = 0;
  infl.add(0, Tuple{}, 0, [&](const Tuple&, const int&) {
    infl.add(0, Tuple{}, 1, [&](const Tuple&, const int&) { ++inner_calls; });
  });
  infl.deliver(0, Tuple{0}, 1);
  EXPECT_EQ(inner_calls, 0);
  EXPECT_EQ(infl.size(), 2U);
}

TEST_F(PowersetFixture, ExecuteAssertTrueForall) {
  EXPECT_EQ(solve_dump("lattice powerset {a,b,c}\nclause R(a;{b}) & 1"), "R(a) = {b}\n");
  EXPECT_EQ(solve_dump("lattice powerset {a,b,c}\nclause 1"), "");
  EXPECT_EQ(solve_dump("lattice powerset {a,b,c}\nclause forall x. R(x,a;[x])"),
            "R(a,a) = {a}\nR(b,a) = {b}\nR(c,a) = {c}\n");
  EXPECT_EQ(solve_dump("lattice powerset {a,b,c}\nclause R(a;bot)"), "");
}

TEST_F(PowersetFixture, EqualityAndNonEquality) {
  EXPECT_EQ(solve_dump(R"(
lattice powerset {a,b,c}
clause (forall x. E(x;[x])),
       (forall x. forall 'Y. !E(x;'Y) => N(x;'Y))
)"),
            "E(a) = {a}\nE(b) = {b}\nE(c) = {c}\nN(a) = {b,c}\nN(b) = {a,c}\nN(c) = {a,b}\n");
}

TEST_F(PowersetFixture, TransitiveClosureReachesFixpoint) {
  EXPECT_EQ(solve_dump(R"(
lattice powerset {a,b,c}
fact E(a) = {b}
fact E(b) = {c}
clause (forall x. forall 'Y. E(x;'Y) => T(x;'Y)) &
       (forall x. forall y. forall 'Z. T(x;[y]) & T(y;'Z) => T(x;'Z))
)"),
            "E(a) = {b}\nE(b) = {c}\nT(a) = {b,c}\nT(b) = {c}\n");
}

TEST_F(PowersetFixture, OrInvokesContinuationOncePerEnvironment) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
fact R(a) = {a}
clause forall x. R(x;{a}) | R(x;[x]) => S(x;{a})
)");
  Solver solver(p, lat_, reg_);
  solver.solve();
  int calls = 0;
  solver.check(pre_of(p), [&](const PEnv&) { ++calls; }, PEnv(1, 0));
  EXPECT_EQ(calls, 1);
}

TEST_F(PowersetFixture, ExistsDropsTheWitness) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
fact R(a,b) = {a}
fact R(a,c) = {a}
clause forall x. (exists w. R(x,w;{a})) => S(x;{c})
)");
  Solver solver(p, lat_, reg_);
  solver.solve();
  std::vector<PEnv> seen;
  solver.check(pre_of(p), [&](const PEnv& e) { seen.push_back(e); }, PEnv(2, 0));
  ASSERT_EQ(seen.size(), 1U);
  EXPECT_EQ(seen[0].atom(0), std::optional<AtomId>(0));
  EXPECT_FALSE(seen[0].atom(1).has_value());
}

TEST_F(PowersetFixture, ApplyWithUnboundYBindsTop) {
  Program p = parse_program("lattice powerset {a,b,c}\nclause forall x. forall 'Y. 'Y(x) => S(x;'Y)");
  compute_ranks(p);
  Solver solver(p, lat_, reg_);
  solver.mutable_store().begin_stratum(1);
  std::vector<PEnv> seen;
  solver.check(pre_of(p), [&](const PEnv& e) { seen.push_back(e); }, PEnv(1, 1));
  ASSERT_EQ(seen.size(), 3U);
  for (const auto& e : seen) EXPECT_EQ(e.y[0], std::optional<BitSet>(lat_.top()));
}

TEST_F(PowersetFixture, ApplyWithBoundY) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
fact R(a) = {b,c}
clause forall x. forall 'Y. forall z. R(x;'Y) & 'Y(z) => S(z;{a})
)");
  Solver solver(p, lat_, reg_);
  solver.solve();
  EXPECT_EQ(dump_interpretation(p, lat_, solver.result()), "R(a) = {b,c}\nS(b) = {a}\nS(c) = {a}\n");
}

TEST_F(PowersetFixture, BotLiteralQueryHoldsEverywhere) {
  EXPECT_EQ(solve_dump("lattice powerset {a,b}\nclause forall x. R(x;bot) => S(x;[x])"), "S(a) = {a}\nS(b) = {b}\n");
}

TEST_F(PowersetFixture, FinalPredicatesAreNotRegistered) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
fact R(a) = {a}
clause forall x. R(x;{a}) => S(x;{b})
)");
  Solver solver(p, lat_, reg_);
  solver.solve();
  EXPECT_EQ(solver.stats().registrations, 0U);
  EXPECT_EQ(solver.stats().skipped_registrations, 1U);
}

TEST_F(PowersetFixture, DifferencePropagationCounters) {
  Program p = load_program(R"(
lattice powerset {a,b,c}
clause (forall x. forall 'Y. T(x;'Y) => U(x;'Y)) & T(a;{a}) & T(a;{b}) & T(b;{c})
)");
  Solver solver(p, lat_, reg_);
  solver.solve();
  auto s = solver.stats();
  EXPECT_EQ(s.registrations, 1U);
  EXPECT_EQ(s.consumers[0].growth_deliveries, 3U);
  EXPECT_EQ(s.growths_per_predicate[0], 3U);
  EXPECT_TRUE(s.difference_propagation_holds());
  EXPECT_EQ(dump_interpretation(p, lat_, solver.result()),
            "T(a) = {a,b}\nT(b) = {c}\nU(a) = {a,b}\nU(b) = {c}\n");
}

TEST(SolverIntervalTest, FunctionsInAssertions) {
  Program p = load_program(R"(
lattice interval zmin=0 zmax=3
universe q
clause A(q;[0,0]) & (forall 'I. A(q;'I) => A(q;f_add('I,[1,1])))
)");
  auto lat = IntervalLattice::range(0, 3);
  FunctionRegistry<IntervalLattice> reg(lat);
  register_builtins(reg, lat);
  Solver solver(p, lat, reg);
  solver.solve();
  EXPECT_EQ(dump_interpretation(p, lat, solver.result()), "A(q) = [0,inf]\n");
}

TEST(SolverSignsTest, NegationOverSigns) {
  Program p = load_program(R"(
lattice signs
universe -1, 0, 2
clause (forall x. P(x;[x])),
       (forall x. forall 'Y. !P(x;'Y) => Q(x;'Y))
)");
  SignLattice lat;
  FunctionRegistry<SignLattice> reg(lat);
  register_builtins(reg, lat);
  Solver solver(p, lat, reg);
  solver.solve();
  EXPECT_EQ(dump_interpretation(p, lat, solver.result()),
            "P(-1) = {-}\nP(0) = {0}\nP(2) = {+}\nQ(-1) = {0,+}\nQ(0) = {-,+}\nQ(2) = {-,0}\n");
}

}  // namespace
}  // namespace llfp
