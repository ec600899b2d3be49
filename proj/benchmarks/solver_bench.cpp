#include <benchmark/benchmark.h>

#include <string>

#include "llfp/driver/driver.hpp"
#include "llfp/frontend/program_graph.hpp"
#include "llfp/oracle/oracle.hpp"
#include "llfp/solver/solver.hpp"

namespace {

using namespace llfp;

std::string atoms(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? "," : "") + ("a" + std::to_string(i));
  return out;
}

std::string eq_neq(std::size_t n) {
  return "lattice powerset {" + atoms(n) +
         "}\nclause (forall x. E(x;[x])),\n(forall x. forall 'Y. !E(x;'Y) => N(x;'Y))\n";
}

/// Reachability along a chain a0 -> a1 -> ... as powerset-valued edges.
std::string chain(std::size_t n) {
  std::string out = "lattice powerset {" + atoms(n) + "}\n";
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out += "fact E(a" + std::to_string(i) + ") = {a" + std::to_string(i + 1) + "}\n";
  }
  out +=
      "clause (forall x. forall 'Y. E(x;'Y) => T(x;'Y)) &\n"
      "(forall x. forall y. forall 'Z. T(x;[y]) & T(y;'Z) => T(x;'Z))\n";
  return out;
}

/// x := 0; while x < n do x := x + 1 over Z = [0, n].
std::string counting_loop(std::int64_t n) {
  std::string m = std::to_string(n);
  return "state q0\nstate q1\nstate q2\nstate q3\ninitial q0\nvar x\n"
         "q0 -> q1 : x := 0\nq1 -> q2 : test x < " + m + "\nq2 -> q1 : x := x + 1\nq1 -> q3 : test x >= " + m + "\n";
}

template <typename Fn>
void solve_text(benchmark::State& state, const std::string& text, Fn&& per_run) {
  Program p = load_program(text);
  with_lattice(p.lattice, [&](const auto& lattice, const auto& registry) {
    for (auto _ : state) {
      Solver solver(p, lattice, registry);
      solver.solve();
      per_run(state, solver.stats());
    }
  });
}

void BM_EqNeq(benchmark::State& state) {
  solve_text(state, eq_neq(static_cast<std::size_t>(state.range(0))),
             [](benchmark::State&, const SolverStats&) {});
}
BENCHMARK(BM_EqNeq)->RangeMultiplier(2)->Range(4, 64);

void BM_ChainClosure(benchmark::State& state) {
  solve_text(state, chain(static_cast<std::size_t>(state.range(0))), [](benchmark::State& st, const SolverStats& s) {
    st.counters["growths"] = static_cast<double>(s.growths);
    st.counters["invocations"] = static_cast<double>(s.consumer_invocations);
  });
}
BENCHMARK(BM_ChainClosure)->RangeMultiplier(2)->Range(4, 32);

void BM_ChainClosureNaive(benchmark::State& state) {
  Program p = load_program(chain(static_cast<std::size_t>(state.range(0))));
  with_lattice(p.lattice, [&](const auto& lattice, const auto& registry) {
    Oracle oracle(p, lattice, registry);
    for (auto _ : state) benchmark::DoNotOptimize(oracle.naive_fixpoint());
  });
}
BENCHMARK(BM_ChainClosureNaive)->RangeMultiplier(2)->Range(4, 8);

void BM_IntervalLoop(benchmark::State& state) {
  auto g = parse_program_graph(counting_loop(state.range(0)));
  solve_text(state, gen_interval_clauses(g), [](benchmark::State& st, const SolverStats& s) {
    st.counters["growths"] = static_cast<double>(s.growths);
  });
}
BENCHMARK(BM_IntervalLoop)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace

BENCHMARK_MAIN();
