#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "llfp/ast/ast.hpp"

namespace llfp {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class StratificationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Checks closedness, that function terms only occur in assertions, and that
/// negation is only used over a lattice with a complement. Collects every
/// violation, each prefixed with its clause path, into one ValidationError.
void check_well_formed(const Program& program, bool lattice_has_complement);

/// rank(R) = i for the element cl_i asserting R, 0 if R is never asserted.
/// Throws StratificationError when a predicate is asserted in two elements,
/// a positive query reaches a higher rank, a negative query does not reach a
/// strictly lower rank, or a fact targets an asserted predicate. On success
/// the ranks are stored into program.predicates.
std::vector<std::size_t> compute_ranks(Program& program);

/// Independent re-check of the three stratification conditions for a given
/// rank table; returns the list of violations.
std::vector<std::string> verify_ranks(const Program& program, const std::vector<std::size_t>& ranks);

/// Stable reordering of every conjunction spine so that a conjunct applying
/// Y (containing Y(u) without defining Y) comes after every conjunct that
/// defines Y via R(u;Y) or !R(u;Y).
Program reorder_preconditions(const Program& program);

/// Variables (by kind and id) occurring free in a precondition or clause.
struct VarRef {
  VarKind kind;
  VarId id;
  auto operator<=>(const VarRef&) const = default;
};
using VarSet = std::set<VarRef>;

VarSet free_vars(const Pre& pre);
VarSet free_vars(const Clause& clause);

/// Y-variables with a defining occurrence (query value position) in pre.
std::set<VarId> defined_y(const Pre& pre);
/// Y-variables applied via Y(u) in pre.
std::set<VarId> applied_y(const Pre& pre);

}  // namespace llfp
