#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "llfp/ast/ast.hpp"
#include "llfp/lattice/lattice.hpp"

namespace llfp {

using Tuple = std::vector<AtomId>;

/// rho: predicate -> ground tuple -> value, with finite support. Bottom
/// entries are never stored, so two interpretations are equal iff they
/// agree everywhere.
template <typename V>
struct Interpretation {
  std::vector<std::map<Tuple, V>> relations;

  Interpretation() = default;
  explicit Interpretation(std::size_t num_predicates) : relations(num_predicates) {}

  bool operator==(const Interpretation&) const = default;
};

template <complete_lattice L>
typename L::value_type value_at(const L& lattice, const Interpretation<typename L::value_type>& rho, PredId pred,
                                const Tuple& tuple) {
  const auto& rel = rho.relations[pred];
  auto it = rel.find(tuple);
  return it == rel.end() ? lattice.bottom() : it->second;
}

/// Sets rho(R)(tuple) := value, dropping the entry when value is bottom.
template <complete_lattice L>
void set_value(const L& lattice, Interpretation<typename L::value_type>& rho, PredId pred, const Tuple& tuple,
               const typename L::value_type& value) {
  if (value == lattice.bottom()) {
    rho.relations[pred].erase(tuple);
  } else {
    rho.relations[pred][tuple] = value;
  }
}

/// Pointwise order.
template <complete_lattice L>
bool pointwise_leq(const L& lattice, const Interpretation<typename L::value_type>& a,
                   const Interpretation<typename L::value_type>& b) {
  for (std::size_t r = 0; r < a.relations.size(); ++r) {
    for (const auto& [tuple, v] : a.relations[r]) {
      if (!lattice.leq(v, value_at(lattice, b, static_cast<PredId>(r), tuple))) return false;
    }
  }
  return true;
}

/// One line per non-bottom leaf: `R(a1,...,ak) = <literal>`, predicates sorted
/// by name, tuples in interned-id order.
template <complete_lattice L>
std::string dump_interpretation(const Program& program, const L& lattice,
                                const Interpretation<typename L::value_type>& rho) {
  std::vector<std::size_t> order(program.predicates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return program.predicates[a].name < program.predicates[b].name; });
  std::string out;
  for (auto r : order) {
    if (r >= rho.relations.size()) continue;
    for (const auto& [tuple, v] : rho.relations[r]) {
      out += program.predicates[r].name + "(";
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0) out += ",";
        out += program.universe.name(tuple[i]);
      }
      out += ") = " + lattice.to_literal(v) + "\n";
    }
  }
  return out;
}

}  // namespace llfp
