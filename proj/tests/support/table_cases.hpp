#pragma once

// Satisfaction cases for every formula construct. Each case is a lattice
// declaration, facts that describe the interpretation rho, and one clause.
// The verdict of the reference semantics on (rho, clause) must equal
// `expected`. TRIVIAL verdicts are read off the rule by hand; DERIVED ones
// are recomputed here by looping over the lattice directly.

#include <string>
#include <vector>

#include "llfp/driver/driver.hpp"
#include "llfp/oracle/oracle.hpp"

namespace llfp::testing {

struct TableCase {
  std::string tag;  // TRIVIAL or DERIVED
  std::string name;
  std::string text;
  bool expected;
};

namespace detail {

inline BitSet ps(const PowersetLattice& lat, std::initializer_list<const char*> atoms) {
  BitSet out = lat.bottom();
  for (const char* a : atoms) out = lat.join(out, lat.beta(a));
  return out;
}

/// forall Y != bot. Y <= r implies Y <= s.
inline bool all_y_implies(const PowersetLattice& lat, const BitSet& r, const BitSet& s) {
  const auto all = *lat.elements();
  for (const auto& y : all) {
    if (y == lat.bottom()) continue;
    if (lat.leq(y, r) && !lat.leq(y, s)) return false;
  }
  return true;
}

/// exists Y != bot. Y <= r and beta(atom) <= Y.
inline bool some_y_contains(const PowersetLattice& lat, const BitSet& r, const BitSet& atom) {
  const auto all = *lat.elements();
  for (const auto& y : all) {
    if (y != lat.bottom() && lat.leq(y, r) && lat.leq(atom, y)) return true;
  }
  return false;
}

}  // namespace detail

inline std::vector<TableCase> table_cases() {
  using detail::ps;
  const PowersetLattice lat({"a", "b"});
  const std::string head = "lattice powerset {a,b}\n";
  std::vector<TableCase> cases;
  auto add = [&](std::string tag, std::string name, std::string body, bool expected) {
    cases.push_back({std::move(tag), std::move(name), head + body, expected});
  };

  add("TRIVIAL", "assert holds when the leaf dominates", "fact R(a) = {a,b}\nclause R(a;{a})", true);
  add("TRIVIAL", "assert fails when the leaf is too small", "fact R(a) = {b}\nclause R(a;{a})", false);
  add("TRIVIAL", "assert of bottom holds on an absent leaf", "clause R(a;bot)", true);
  add("TRIVIAL", "true holds everywhere", "clause 1", true);
  add("TRIVIAL", "conjunction needs both sides", "fact R(a) = {a}\nclause R(a;{a}) & R(b;{b})", false);
  add("TRIVIAL", "implication with a false precondition", "clause S(a;{a}) => R(a;{a})", true);
  add("TRIVIAL", "implication with a true precondition and false body",
      "fact S(a) = {a}\nclause S(a;{a}) => R(a;{a})", false);
  add("TRIVIAL", "forall x over a matching relation", "fact R(a) = {a}\nfact R(b) = {b}\nclause forall x. R(x;[x])",
      true);
  add("TRIVIAL", "forall x fails on one atom", "fact R(a) = {a}\nfact R(b) = {a}\nclause forall x. R(x;[x])", false);

  {
    BitSet r = ps(lat, {"a"});
    BitSet s = ps(lat, {"a", "b"});
    add("DERIVED", "forall Y transfers a smaller leaf",
        "fact R(a) = {a}\nfact S(a) = {a,b}\nclause forall 'Y. R(a;'Y) => S(a;'Y)", detail::all_y_implies(lat, r, s));
  }
  {
    BitSet r = ps(lat, {"a", "b"});
    BitSet s = ps(lat, {"a"});
    add("DERIVED", "forall Y finds a counterexample",
        "fact R(a) = {a,b}\nfact S(a) = {a}\nclause forall 'Y. R(a;'Y) => S(a;'Y)", detail::all_y_implies(lat, r, s));
  }
  {
    BitSet comp = lat.complement(ps(lat, {"a"}));
    bool pre = lat.leq(ps(lat, {"b"}), comp);
    add("DERIVED", "negative query reads the complement",
        "fact R(a) = {a}\nclause !R(a;{b}) => S(a;{a})", !pre);
  }
  {
    BitSet comp = lat.complement(lat.top());
    bool pre = lat.leq(ps(lat, {"b"}), comp);
    add("DERIVED", "negative query against a full leaf", "fact R(a) = {a,b}\nclause !R(a;{b}) => S(a;{a})", !pre);
  }
  add("TRIVIAL", "disjunction with a true right side and a satisfied body",
      "fact R(b) = {a}\nfact S(a) = {a}\nclause R(a;{a}) | R(b;{a}) => S(a;{a})", true);
  add("TRIVIAL", "disjunction with a true right side and a failing body",
      "fact R(b) = {a}\nclause R(a;{a}) | R(b;{a}) => S(a;{a})", false);
  add("TRIVIAL", "exists x with a witness", "fact R(b) = {b}\nclause (exists w. R(w;{b})) => S(a;{a})", false);
  add("TRIVIAL", "exists x without a witness", "fact R(b) = {a}\nclause (exists w. R(w;{b})) => S(a;{a})", true);
  {
    BitSet r = lat.top();
    bool fires = detail::some_y_contains(lat, r, lat.beta("b"));
    add("DERIVED", "apply with a binding that contains the atom",
        "fact R(a) = {a,b}\nclause forall 'Y. R(a;'Y) & 'Y(b) => S(b;{a})", !fires);
  }
  {
    BitSet r = ps(lat, {"a"});
    bool fires = detail::some_y_contains(lat, r, lat.beta("b"));
    add("DERIVED", "apply where no binding contains the atom",
        "fact R(a) = {a}\nclause forall 'Y. R(a;'Y) & 'Y(b) => S(b;{a})", !fires);
  }
  {
    // If bottom were a legal value of Y the precondition would hold.
    BitSet r = lat.bottom();
    bool ok = detail::all_y_implies(lat, r, lat.bottom());
    add("DERIVED", "Y never takes the bottom value", "clause forall 'Y. R(a;'Y) => S(a;'Y)", ok);
  }
  {
    BitSet r = ps(lat, {"a", "b"});
    bool fires = detail::some_y_contains(lat, r, lat.beta("b"));
    add("DERIVED", "exists Y with apply", "fact R(a) = {a,b}\nclause (exists 'Y. R(a;'Y) & 'Y(b)) => S(a;{a})",
        !fires);
  }
  {
    bool ok = lat.leq(lat.join(lat.beta("a"), ps(lat, {"b"})), ps(lat, {"a", "b"}));
    add("DERIVED", "function term in an assertion",
        "fact R(a) = {a}\nfact S(a) = {a,b}\nclause forall x. R(x;[x]) => S(a;union([x],{b}))", ok);
  }
  cases.push_back({"TRIVIAL", "representation over signs",
                   "lattice signs\nuniverse -1, 2\nfact P(-1) = {-}\nfact P(2) = {0,+}\nclause forall x. P(x;[x])", true});
  cases.push_back({"TRIVIAL", "interval assert inside the leaf",
                   "lattice interval zmin=0 zmax=3\nuniverse q\nfact R(q) = [0,inf]\nclause R(q;[0,2])", true});
  cases.push_back({"TRIVIAL", "interval assert outside the leaf",
                   "lattice interval zmin=0 zmax=3\nuniverse q\nfact R(q) = [1,3]\nclause R(q;[0,2])", false});
  return cases;
}

/// Verdict of the reference semantics: rho is the facts, the clause is the
/// first element of the sequence. Ranks are irrelevant for satisfaction.
inline bool evaluate_case(const TableCase& c) {
  Program p = parse_program(c.text);
  check_well_formed(p, kind_has_complement(p.lattice.kind));
  return with_lattice(p.lattice, [&](const auto& lattice, const auto& registry) {
    using V = typename std::decay_t<decltype(lattice)>::value_type;
    Oracle oracle(p, lattice, registry);
    const auto& st = p.strata.at(0);
    return oracle.satisfies_cl(oracle.facts(), Env<V>(st.num_x, st.num_y), st.clause);
  });
}

}  // namespace llfp::testing
