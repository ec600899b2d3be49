#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "llfp/ast/ast.hpp"

namespace llfp {

struct GeneratorOptions {
  /// Restrict to powerset programs the set-based evaluator accepts.
  bool alfp_fragment = false;
  /// Reject instances whose model enumeration would visit more candidates.
  std::size_t max_candidates = std::size_t{1} << 14;
  std::size_t max_strata = 2;
};

struct GeneratedInstance {
  std::string text;
  /// Prepared (validated, ranked, reordered) program parsed from text.
  Program program;
  std::size_t attempts = 0;
};

/// Seeded random tiny program: at most two predicates of arity <= 2, a
/// universe of at most three atoms and a lattice of at most eight elements.
/// Candidate texts that fail validation or exceed the enumeration budget are
/// discarded and redrawn from the same generator.
GeneratedInstance generate_instance(std::uint64_t seed, const GeneratorOptions& options = {});

/// Number of interpretations enumerate_models would visit, ignoring facts.
std::size_t candidate_space(const Program& program);

}  // namespace llfp
