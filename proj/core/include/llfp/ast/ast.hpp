#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "llfp/ast/box.hpp"
#include "llfp/lattice/builtins.hpp"
#include "llfp/lattice/lattice.hpp"

namespace llfp {

using AtomId = std::uint32_t;
using VarId = std::uint32_t;
using PredId = std::uint32_t;

inline constexpr VarId kUnboundVar = static_cast<VarId>(-1);

/// Interned universe atoms; ids are dense and follow first appearance.
class Universe {
 public:
  AtomId intern(std::string_view name);
  std::optional<AtomId> find(std::string_view name) const;
  const std::string& name(AtomId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Universe& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> ids_;
};

enum class VarKind { x, y };

/// u ::= x | a. `free` marks an identifier that is neither bound nor a
/// universe atom; validation rejects it.
struct Term {
  enum class Kind { var, constant, free };
  Kind kind = Kind::constant;
  std::string name;
  std::uint32_t id = 0;  // VarId for var, AtomId for constant

  static Term var(std::string name, VarId id) { return {Kind::var, std::move(name), id}; }
  static Term constant(std::string name, AtomId id) { return {Kind::constant, std::move(name), id}; }
  static Term free(std::string name) { return {Kind::free, std::move(name), 0}; }

  bool is_var() const { return kind == Kind::var; }
  bool operator==(const Term&) const = default;
};

struct LatticeTerm;

struct YVar {
  std::string name;
  VarId id = kUnboundVar;
  bool operator==(const YVar&) const = default;
};

/// [u]: beta of the atom denoted by u.
struct Repr {
  Term term;
  bool operator==(const Repr&) const = default;
};

struct FnApp {
  std::string name;
  std::vector<LatticeTerm> args;
  bool operator==(const FnApp&) const;
};

struct Lit {
  LatticeLiteral value;
  bool operator==(const Lit&) const = default;
};

/// V ::= Y | [u] | literal, V' ::= V | f(V'...).
struct LatticeTerm {
  std::variant<YVar, Repr, FnApp, Lit> node;
  bool operator==(const LatticeTerm&) const = default;
};

inline bool FnApp::operator==(const FnApp& o) const { return name == o.name && args == o.args; }

struct Pre;

/// R(u; V) or !R(u; V).
struct Query {
  PredId pred = 0;
  std::vector<Term> args;
  LatticeTerm value;
  bool negated = false;
  bool operator==(const Query&) const = default;
};

/// Y(u).
struct Apply {
  YVar y;
  Term arg;
  bool operator==(const Apply&) const = default;
};

struct PreAnd {
  Box<Pre> lhs;
  Box<Pre> rhs;
  bool operator==(const PreAnd&) const = default;
};

struct PreOr {
  Box<Pre> lhs;
  Box<Pre> rhs;
  bool operator==(const PreOr&) const = default;
};

struct Exists {
  VarKind kind = VarKind::x;
  std::string name;
  VarId var = 0;
  Box<Pre> body;
  bool operator==(const Exists&) const = default;
};

struct Pre {
  std::variant<Query, Apply, PreAnd, PreOr, Exists> node;
  bool operator==(const Pre&) const = default;
};

struct Clause;

/// R(u; V').
struct Assert {
  PredId pred = 0;
  std::vector<Term> args;
  LatticeTerm value;
  bool operator==(const Assert&) const = default;
};

struct True {
  bool operator==(const True&) const = default;
};

struct ClauseAnd {
  Box<Clause> lhs;
  Box<Clause> rhs;
  bool operator==(const ClauseAnd&) const = default;
};

struct Imply {
  Box<Pre> pre;
  Box<Clause> body;
  bool operator==(const Imply&) const = default;
};

struct Forall {
  VarKind kind = VarKind::x;
  std::string name;
  VarId var = 0;
  Box<Clause> body;
  bool operator==(const Forall&) const = default;
};

struct Clause {
  std::variant<Assert, True, ClauseAnd, Imply, Forall> node;
  bool operator==(const Clause&) const = default;
};

struct Predicate {
  std::string name;
  std::size_t arity = 0;
  /// Filled in by compute_ranks; 0 for base relations.
  std::size_t rank = 0;
  bool operator==(const Predicate&) const = default;
};

/// fact R(a1,...,ak) = literal: contributes to the rank-0 interpretation.
struct Fact {
  PredId pred = 0;
  std::vector<AtomId> args;
  LatticeLiteral value;
  bool operator==(const Fact&) const = default;
};

struct LatticeDecl {
  LatticeKind kind = LatticeKind::powerset;
  std::vector<std::string> atoms;  // powerset only
  std::int64_t zmin = 0;           // interval only
  std::int64_t zmax = 0;
  bool operator==(const LatticeDecl&) const = default;
};

/// One element cl_i of the clause sequence. Variables bound inside it are
/// numbered densely per kind, so an environment is two fixed-size slot arrays.
struct Stratum {
  Clause clause;
  std::size_t num_x = 0;
  std::size_t num_y = 0;
  bool operator==(const Stratum&) const = default;
};

/// A parsed clause file: lattice declaration, universe, predicates, rank-0
/// facts and the clause sequence cl_1, ..., cl_s.
struct Program {
  LatticeDecl lattice;
  Universe universe;
  std::vector<Predicate> predicates;
  std::vector<std::pair<std::string, std::size_t>> functions;  // declared with `fun`
  std::vector<Fact> facts;
  std::vector<Stratum> strata;

  std::optional<PredId> find_predicate(std::string_view name) const;
  std::size_t num_strata() const { return strata.size(); }
  bool operator==(const Program&) const = default;
};

}  // namespace llfp
