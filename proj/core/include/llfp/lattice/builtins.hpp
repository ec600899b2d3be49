#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "llfp/lattice/function_registry.hpp"
#include "llfp/lattice/interval.hpp"
#include "llfp/lattice/powerset.hpp"
#include "llfp/lattice/signs.hpp"

namespace llfp {

enum class LatticeKind { powerset, signs, interval };

std::string to_string(LatticeKind kind);

/// Names and arities of the functions shipped for each lattice kind.
///   powerset: union/2, inter/2, id/1
///   signs:    s_add/2, s_sub/2, s_mul/2
///   interval: f_add/2, f_sub/2, f_mul/2
std::vector<std::pair<std::string, std::size_t>> builtin_signatures(LatticeKind kind);

void register_builtins(FunctionRegistry<PowersetLattice>& registry, const PowersetLattice& lattice);
void register_builtins(FunctionRegistry<SignLattice>& registry, const SignLattice& lattice);
void register_builtins(FunctionRegistry<IntervalLattice>& registry, const IntervalLattice& lattice);

}  // namespace llfp
