#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "llfp/ast/ast.hpp"
#include "llfp/ast/interpretation.hpp"
#include "llfp/lattice/powerset.hpp"

namespace llfp {

class UnsupportedFragment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Set-based reading of a powerset program: R/k becomes a set of k+1 tuples
/// whose last component is an element of the powerset carrier, and every Y
/// variable becomes an element variable. Stratified naive evaluation.
///
/// Only the fragment without Y(u) and without function terms is accepted;
/// query literals must be bottom or a singleton. Throws UnsupportedFragment
/// otherwise.
std::vector<std::set<Tuple>> alfp_evaluate(const Program& program);

/// Whether alfp_evaluate accepts the program.
bool in_alfp_fragment(const Program& program);

/// Mismatches between the two readings: (a, b) in R' iff b in rho(R)(a).
std::vector<std::string> alfp_mismatches(const Program& program, const PowersetLattice& lattice,
                                         const Interpretation<BitSet>& rho,
                                         const std::vector<std::set<Tuple>>& relations);

}  // namespace llfp
