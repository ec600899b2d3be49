#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llfp/lattice/interval.hpp"
#include "llfp/lattice/lattice.hpp"
#include "llfp/lattice/signs.hpp"

namespace llfp {

class GraphError : public std::runtime_error {
 public:
  GraphError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A variable or an integer literal.
struct Operand {
  std::optional<std::int64_t> literal;
  std::string var;
  std::string to_string() const;
  bool operator==(const Operand&) const = default;
};

/// x := a, or x := a op b in three-address form.
struct AssignAction {
  std::string target;
  Operand lhs;
  std::optional<ArithOp> op;
  Operand rhs;
  bool operator==(const AssignAction&) const = default;
};

/// `test a relop b`, `test true` or `test false`.
struct TestAction {
  std::optional<bool> constant;
  Operand lhs;
  std::string relop;
  Operand rhs;
  bool operator==(const TestAction&) const = default;
};

struct SkipAction {
  bool operator==(const SkipAction&) const = default;
};

using Action = std::variant<AssignAction, TestAction, SkipAction>;

struct GraphEdge {
  std::string source;
  std::string target;
  Action action;
  bool operator==(const GraphEdge&) const = default;
};

struct ProgramGraph {
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> variables;
  std::vector<GraphEdge> edges;
  bool operator==(const ProgramGraph&) const = default;
};

/// Line format:
///   state q          (one per state)
///   initial q0
///   var x
///   qs -> qt : x := y + z | x := n | x := y | test a < b | test true | skip
/// Operands of assignments and tests are variables or integer literals.
/// `#` and `//` start comments.
ProgramGraph parse_program_graph(std::string_view text);

std::string action_to_string(const Action& action);

/// Integer literals occurring in assignments and tests.
std::vector<std::int64_t> graph_literals(const ProgramGraph& graph);

struct IntervalOptions {
  std::optional<std::int64_t> zmin;
  std::optional<std::int64_t> zmax;
  /// Z defaults to [min(literals, -bound), max(literals, bound)].
  std::int64_t bound = 0;
};

/// The finite Z used for a graph under the given options.
std::pair<std::int64_t, std::int64_t> interval_range(const ProgramGraph& graph, const IntervalOptions& options);

/// Clause file for the interval analysis: one predicate A(q,v; I).
std::string gen_interval_clauses(const ProgramGraph& graph, const IntervalOptions& options = {});

/// Clause file for the detection of signs over the sign powerset.
std::string gen_sign_clauses(const ProgramGraph& graph);

/// Sign abstraction of an interval: every sign of an integer inside it.
SignSet sign_of(const Interval& interval);

struct ConcreteRun {
  std::size_t steps = 0;
  bool overflow = false;
  bool stuck = false;
};

/// Random small-step execution from the initial state with initial values
/// drawn from [init_lo, init_hi]. visit(state, values) sees every reached
/// configuration, including the first one.
ConcreteRun run_concrete(const ProgramGraph& graph, Rng& rng, std::size_t max_steps,
                         const std::function<void(const std::string&, const std::map<std::string, std::int64_t>&)>& visit,
                         std::int64_t init_lo = -3, std::int64_t init_hi = 3);

}  // namespace llfp
