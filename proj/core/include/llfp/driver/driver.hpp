#pragma once

#include <string_view>
#include <utility>

#include "llfp/ast/ast.hpp"
#include "llfp/ast/parser.hpp"
#include "llfp/ast/validate.hpp"
#include "llfp/lattice/builtins.hpp"

namespace llfp {

inline bool kind_has_complement(LatticeKind kind) { return kind != LatticeKind::interval; }

/// check_well_formed, compute_ranks and reorder_preconditions in one go.
/// The returned program is ready for the solver and the oracle.
inline Program prepare(Program program) {
  check_well_formed(program, kind_has_complement(program.lattice.kind));
  compute_ranks(program);
  return reorder_preconditions(program);
}

inline Program load_program(std::string_view text) { return prepare(parse_program(text)); }

/// Builds the declared lattice and a frozen registry of its builtin
/// functions, then returns fn(lattice, registry).
template <typename F>
decltype(auto) with_lattice(const LatticeDecl& decl, F&& fn) {
  switch (decl.kind) {
    case LatticeKind::powerset: {
      PowersetLattice lattice(decl.atoms);
      FunctionRegistry<PowersetLattice> registry(lattice);
      register_builtins(registry, lattice);
      registry.freeze();
      return std::forward<F>(fn)(lattice, registry);
    }
    case LatticeKind::signs: {
      SignLattice lattice;
      FunctionRegistry<SignLattice> registry(lattice);
      register_builtins(registry, lattice);
      registry.freeze();
      return std::forward<F>(fn)(lattice, registry);
    }
    case LatticeKind::interval:
    default: {
      auto lattice = IntervalLattice::range(decl.zmin, decl.zmax);
      FunctionRegistry<IntervalLattice> registry(lattice);
      register_builtins(registry, lattice);
      registry.freeze();
      return std::forward<F>(fn)(lattice, registry);
    }
  }
}

}  // namespace llfp
