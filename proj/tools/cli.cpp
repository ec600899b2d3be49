#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "llfp/ast/interpretation.hpp"
#include "llfp/driver/driver.hpp"
#include "llfp/frontend/program_graph.hpp"
#include "llfp/oracle/generator.hpp"
#include "llfp/oracle/oracle.hpp"
#include "llfp/solver/solver.hpp"

namespace llfp::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_stats(std::ostream& out, const SolverStats& s, double millis) {
  out << "# growths: " << s.growths << "\n"
      << "# non-growing adds: " << s.non_growing_adds << "\n"
      << "# consumer invocations: " << s.consumer_invocations << " (sweep " << s.sweep_deliveries << ", growth "
      << s.growth_deliveries << ")\n"
      << "# consumers registered: " << s.registrations << "\n"
      << "# candidates: " << s.candidates << "\n"
      << "# time ms: " << millis << "\n";
}

/// Solves a prepared program and prints its dump.
int solve_and_dump(const Program& program, bool stats, std::ostream& out) {
  return with_lattice(program.lattice, [&](const auto& lattice, const auto& registry) {
    auto start = std::chrono::steady_clock::now();
    Solver solver(program, lattice, registry);
    solver.solve();
    auto millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << dump_interpretation(program, lattice, solver.result());
    if (stats) print_stats(out, solver.stats(), millis);
    return kOk;
  });
}

int compare(const Program& program, bool corrupt, std::ostream& out) {
  return with_lattice(program.lattice, [&](const auto& lattice, const auto& registry) {
    Solver solver(program, lattice, registry);
    solver.solve();
    if (corrupt) {
      Tuple t(program.predicates.empty() ? 0 : program.predicates[0].arity, 0);
      if (!program.predicates.empty() && program.universe.size() > 0) {
        auto cur = solver.store().get(0, t);
        solver.mutable_store().poke(0, t, cur == lattice.top() ? lattice.bottom() : lattice.top());
      }
    }
    auto mine = solver.result();
    Oracle oracle(program, lattice, registry);
    auto ref = oracle.naive_fixpoint();
    std::vector<std::string> diffs;
    for (PredId r = 0; r < program.predicates.size(); ++r) {
      std::set<Tuple> keys;
      for (const auto& [t, v] : mine.relations[r]) keys.insert(t);
      for (const auto& [t, v] : ref.relations[r]) keys.insert(t);
      for (const auto& t : keys) {
        auto a = value_at(lattice, mine, r, t);
        auto b = value_at(lattice, ref, r, t);
        if (a == b) continue;
        std::string name = program.predicates[r].name + "(";
        for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "," : "") + program.universe.name(t[i]);
        diffs.push_back(name + "): solver " + lattice.to_literal(a) + ", oracle " + lattice.to_literal(b));
      }
    }
    if (diffs.empty()) {
      out << "identical\n";
      return kOk;
    }
    for (const auto& d : diffs) out << d << "\n";
    return kFailure;
  });
}

int oracle_dump(const Program& program, std::ostream& out) {
  return with_lattice(program.lattice, [&](const auto& lattice, const auto& registry) {
    Oracle oracle(program, lattice, registry);
    out << dump_interpretation(program, lattice, oracle.naive_fixpoint());
    return kOk;
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least-model solver for lattice-valued least fixed point clauses"};
  app.name("llfp");
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> facts;
  bool stats = false;

  auto* solve = app.add_subcommand("solve", "Solve a clause file and print the least model");
  solve->add_option("file", file, "clause file")->required();
  solve->add_option("--fact", facts, "extra fact, e.g. 'R(a) = {a}'");
  solve->add_flag("--stats", stats, "print instrumentation counters");

  std::string analysis = "intervals";
  std::optional<std::int64_t> zmin;
  std::optional<std::int64_t> zmax;
  std::int64_t bound = 0;
  bool emit = false;
  auto* analyze = app.add_subcommand("analyze", "Run the sign or interval analysis of a program graph");
  analyze->add_option("graph", file, "program graph file")->required();
  analyze->add_option("--analysis", analysis, "signs or intervals")->check(CLI::IsMember({"signs", "intervals"}));
  analyze->add_option("--zmin", zmin, "lower end of the integer range");
  analyze->add_option("--zmax", zmax, "upper end of the integer range");
  analyze->add_option("--bound", bound, "default range [-bound, bound] joined with the literals");
  analyze->add_flag("--emit-clauses", emit, "print the generated clause file instead of solving");
  analyze->add_flag("--stats", stats, "print instrumentation counters");

  bool corrupt = false;
  auto* cmp = app.add_subcommand("compare", "Compare the solver against the naive fixpoint");
  cmp->add_option("file", file, "clause file")->required();
  cmp->add_flag("--corrupt-store", corrupt)->group("");

  auto* check = app.add_subcommand("check", "Validate a clause file");
  check->add_option("file", file, "clause file")->required();

  std::uint64_t seed = 1;
  bool emit_instance = false;
  auto* oracle = app.add_subcommand("oracle", "Reference semantics: naive fixpoint of a file or a random instance");
  oracle->add_option("file", file, "clause file (omit to generate one)");
  oracle->add_option("--seed", seed, "seed of the random instance");
  oracle->add_flag("--emit-instance", emit_instance, "print the generated clause file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      std::string text = read_file(file);
      for (const auto& f : facts) text += "\nfact " + f + "\n";
      return solve_and_dump(load_program(text), stats, out);
    }
    if (*analyze) {
      auto graph = parse_program_graph(read_file(file));
      std::string text;
      if (analysis == "signs") {
        text = gen_sign_clauses(graph);
      } else {
        text = gen_interval_clauses(graph, IntervalOptions{zmin, zmax, bound});
      }
      if (emit) {
        out << text;
        return kOk;
      }
      return solve_and_dump(load_program(text), stats, out);
    }
    if (*cmp) return compare(load_program(read_file(file)), corrupt, out);
    if (*check) {
      Program p = load_program(read_file(file));
      out << "ok: " << p.strata.size() << " clause(s), " << p.predicates.size() << " predicate(s)\n";
      for (const auto& pred : p.predicates) out << "rank " << pred.name << " = " << pred.rank << "\n";
      return kOk;
    }
    if (*oracle) {
      if (!file.empty()) return oracle_dump(load_program(read_file(file)), out);
      auto inst = generate_instance(seed);
      if (emit_instance) {
        out << inst.text;
        return kOk;
      }
      return oracle_dump(inst.program, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace llfp::cli
