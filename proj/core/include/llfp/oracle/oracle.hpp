#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "llfp/ast/ast.hpp"
#include "llfp/ast/interpretation.hpp"
#include "llfp/lattice/function_registry.hpp"
#include "llfp/solver/solver.hpp"

namespace llfp {

/// The instance is outside what the reference semantics can enumerate.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits of enumerate_models.
struct EnumerationLimits {
  std::size_t max_universe = 3;
  std::size_t max_lattice = 8;
  std::size_t max_predicates = 2;
  std::size_t max_arity = 2;
  /// Upper bound on the number of candidate interpretations visited.
  std::size_t max_candidates = std::size_t{1} << 18;
};

/// Reference semantics of a prepared program: the satisfaction relation read
/// directly off the semantic rules, plus the constructions built on it.
/// Environments reuse the solver's Env, but every slot is bound when a
/// formula is evaluated.
template <complete_lattice L>
class Oracle {
 public:
  using V = typename L::value_type;
  using Rho = Interpretation<V>;

  Oracle(const Program& program, const L& lattice, const FunctionRegistry<L>& functions)
      : program_(&program), lattice_(&lattice), functions_(&functions) {
    for (const auto& name : program.universe.names()) beta_.push_back(lattice.beta(name));
  }

  const std::vector<V>& beta() const { return beta_; }

  /// Elements other than bottom, the range of Y quantifiers.
  const std::vector<V>& proper_elements() const {
    if (!proper_) {
      auto all = lattice_->elements();
      if (!all) throw OracleLimitError("lattice " + lattice_->name() + " is too large to enumerate");
      proper_.emplace();
      for (const auto& v : *all) {
        if (v != lattice_->bottom()) proper_->push_back(v);
      }
    }
    return *proper_;
  }

  V eval(const LatticeTerm& t, const Env<V>& s) const {
    if (const auto* y = std::get_if<YVar>(&t.node)) return *s.y[y->id];
    if (const auto* r = std::get_if<Repr>(&t.node)) return beta_[atom(r->term, s)];
    if (const auto* l = std::get_if<Lit>(&t.node)) return lattice_->from_literal(l->value);
    const auto& f = std::get<FnApp>(t.node);
    std::vector<V> args;
    for (const auto& a : f.args) args.push_back(eval(a, s));
    return functions_->apply(f.name, args);
  }

  bool satisfies_pre(const Rho& rho, const Env<V>& s, const Pre& pre) const {
    if (const auto* q = std::get_if<Query>(&pre.node)) {
      V stored = value_at(*lattice_, rho, q->pred, tuple(q->args, s));
      if (q->negated) stored = lattice_->complement(stored);
      return lattice_->leq(eval(q->value, s), stored);
    }
    if (const auto* a = std::get_if<Apply>(&pre.node)) {
      return lattice_->leq(beta_[atom(a->arg, s)], *s.y[a->y.id]);
    }
    if (const auto* c = std::get_if<PreAnd>(&pre.node)) {
      return satisfies_pre(rho, s, *c->lhs) && satisfies_pre(rho, s, *c->rhs);
    }
    if (const auto* o = std::get_if<PreOr>(&pre.node)) {
      return satisfies_pre(rho, s, *o->lhs) || satisfies_pre(rho, s, *o->rhs);
    }
    const auto& e = std::get<Exists>(pre.node);
    bool found = false;
    for_each_value(s, e.kind, e.var, [&](const Env<V>& s2) {
      if (!found && satisfies_pre(rho, s2, *e.body)) found = true;
    });
    return found;
  }

  bool satisfies_cl(const Rho& rho, const Env<V>& s, const Clause& cl) const {
    if (const auto* a = std::get_if<Assert>(&cl.node)) {
      return lattice_->leq(eval(a->value, s), value_at(*lattice_, rho, a->pred, tuple(a->args, s)));
    }
    if (std::holds_alternative<True>(cl.node)) return true;
    if (const auto* c = std::get_if<ClauseAnd>(&cl.node)) {
      return satisfies_cl(rho, s, *c->lhs) && satisfies_cl(rho, s, *c->rhs);
    }
    if (const auto* i = std::get_if<Imply>(&cl.node)) {
      return !satisfies_pre(rho, s, *i->pre) || satisfies_cl(rho, s, *i->body);
    }
    const auto& f = std::get<Forall>(cl.node);
    bool ok = true;
    for_each_value(s, f.kind, f.var, [&](const Env<V>& s2) {
      if (ok && !satisfies_cl(rho, s2, *f.body)) ok = false;
    });
    return ok;
  }

  /// rho satisfies every element of the clause sequence.
  bool is_model(const Rho& rho) const {
    for (const auto& st : program_->strata) {
      if (!satisfies_cl(rho, Env<V>(st.num_x, st.num_y), st.clause)) return false;
    }
    return true;
  }

  /// The rank-0 interpretation given by the facts.
  Rho facts() const {
    Rho rho(program_->predicates.size());
    for (const auto& f : program_->facts) {
      V v = lattice_->join(value_at(*lattice_, rho, f.pred, f.args), lattice_->from_literal(f.value));
      set_value(*lattice_, rho, f.pred, f.args, v);
    }
    return rho;
  }

  /// Rank-0 part of rho dominates the facts.
  bool above_facts(const Rho& rho) const {
    Rho base = facts();
    return pointwise_leq(*lattice_, base, rho);
  }

  /// Kleene iteration per stratum: join every value an assertion demands
  /// under the current interpretation until nothing changes.
  Rho naive_fixpoint() const {
    Rho rho = facts();
    for (const auto& st : program_->strata) {
      bool changed = true;
      while (changed) {
        changed = false;
        Rho before = rho;
        apply_clause(before, rho, Env<V>(st.num_x, st.num_y), st.clause, changed);
      }
    }
    return rho;
  }

  /// All models above the facts, by exhaustive enumeration.
  std::vector<Rho> enumerate_models(const EnumerationLimits& limits = {}) const {
    if (program_->universe.size() > limits.max_universe) {
      throw OracleLimitError("universe has " + std::to_string(program_->universe.size()) + " atoms");
    }
    if (program_->predicates.size() > limits.max_predicates) {
      throw OracleLimitError("too many predicates for enumeration");
    }
    auto all = lattice_->elements();
    if (!all || all->size() > limits.max_lattice) throw OracleLimitError("lattice too large for enumeration");
    Rho base = facts();

    struct Cell {
      PredId pred;
      Tuple tuple;
      std::vector<V> choices;
    };
    std::vector<Cell> cells;
    std::size_t product = 1;
    for (PredId r = 0; r < program_->predicates.size(); ++r) {
      const auto& p = program_->predicates[r];
      if (p.arity > limits.max_arity) throw OracleLimitError("predicate " + p.name + " has arity above the limit");
      for_each_tuple(p.arity, [&](const Tuple& t) {
        Cell c{r, t, {}};
        V floor = value_at(*lattice_, base, r, t);
        for (const auto& v : *all) {
          if (lattice_->leq(floor, v)) c.choices.push_back(v);
        }
        product *= c.choices.size();
        if (product > limits.max_candidates) throw OracleLimitError("too many candidate interpretations");
        cells.push_back(std::move(c));
      });
    }

    std::vector<Rho> models;
    std::vector<std::size_t> odo(cells.size(), 0);
    Rho rho(program_->predicates.size());
    while (true) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        set_value(*lattice_, rho, cells[k].pred, cells[k].tuple, cells[k].choices[odo[k]]);
      }
      if (is_model(rho)) models.push_back(rho);
      std::size_t k = 0;
      for (; k < cells.size(); ++k) {
        if (++odo[k] < cells[k].choices.size()) break;
        odo[k] = 0;
      }
      if (k == cells.size()) break;
    }
    return models;
  }

  /// Greatest lower bound in the lexicographic order: strata are fixed one
  /// at a time, and only the candidates agreeing with the bound on all lower
  /// ranks take part in the meet at the next rank.
  Rho glb(const std::vector<Rho>& models) const {
    Rho out(program_->predicates.size());
    std::vector<const Rho*> current;
    for (const auto& m : models) current.push_back(&m);
    const std::size_t s = program_->strata.size();
    for (std::size_t j = 0; j <= s; ++j) {
      for (PredId r = 0; r < program_->predicates.size(); ++r) {
        if (program_->predicates[r].rank != j) continue;
        for_each_tuple(program_->predicates[r].arity, [&](const Tuple& t) {
          V m = lattice_->top();
          for (const auto* rho : current) m = lattice_->meet(m, value_at(*lattice_, *rho, r, t));
          set_value(*lattice_, out, r, t, m);
        });
      }
      std::vector<const Rho*> next;
      for (const auto* rho : current) {
        if (agrees_at_rank(*rho, out, j)) next.push_back(rho);
      }
      current = std::move(next);
    }
    return out;
  }

  /// rho1 precedes rho2 in the lexicographic order over ranks 0..s.
  bool lex_leq(const Rho& a, const Rho& b) const {
    const std::size_t s = program_->strata.size();
    for (std::size_t j = 0; j <= s; ++j) {
      bool leq = true;
      bool strict = false;
      for (PredId r = 0; r < program_->predicates.size(); ++r) {
        if (program_->predicates[r].rank != j) continue;
        bool fwd = relation_leq(a, b, r);
        bool back = relation_leq(b, a, r);
        leq = leq && fwd;
        strict = strict || (fwd && !back);
      }
      if (!leq) return false;
      if (j == s || strict) return true;
      // Equal at rank j: move on to the next rank.
    }
    return true;
  }

  template <typename F>
  void for_each_tuple(std::size_t arity, F&& fn) const {
    const std::size_t n = program_->universe.size();
    Tuple t(arity, 0);
    if (arity > 0 && n == 0) return;
    while (true) {
      fn(static_cast<const Tuple&>(t));
      std::size_t k = 0;
      for (; k < arity; ++k) {
        if (++t[k] < n) break;
        t[k] = 0;
      }
      if (k == arity) break;
    }
  }

 private:
  AtomId atom(const Term& t, const Env<V>& s) const {
    auto a = ground_term(t, s);
    if (!a) throw OracleLimitError("unbound term " + t.name);
    return *a;
  }

  Tuple tuple(const std::vector<Term>& args, const Env<V>& s) const {
    Tuple t;
    for (const auto& u : args) t.push_back(atom(u, s));
    return t;
  }

  template <typename F>
  void for_each_value(const Env<V>& s, VarKind kind, VarId var, F&& fn) const {
    Env<V> s2 = s;
    if (kind == VarKind::x) {
      for (AtomId a = 0; a < program_->universe.size(); ++a) {
        s2.x[var] = a;
        fn(static_cast<const Env<V>&>(s2));
      }
    } else {
      for (const auto& v : proper_elements()) {
        s2.y[var] = v;
        fn(static_cast<const Env<V>&>(s2));
      }
    }
  }

  /// One round: preconditions are read in `read`, assertions join into `write`.
  void apply_clause(const Rho& read, Rho& write, const Env<V>& s, const Clause& cl, bool& changed) const {
    if (const auto* a = std::get_if<Assert>(&cl.node)) {
      Tuple t = tuple(a->args, s);
      V old = value_at(*lattice_, write, a->pred, t);
      V now = lattice_->join(old, eval(a->value, s));
      if (now != old) {
        set_value(*lattice_, write, a->pred, t, now);
        changed = true;
      }
    } else if (const auto* c = std::get_if<ClauseAnd>(&cl.node)) {
      apply_clause(read, write, s, *c->lhs, changed);
      apply_clause(read, write, s, *c->rhs, changed);
    } else if (const auto* i = std::get_if<Imply>(&cl.node)) {
      if (satisfies_pre(read, s, *i->pre)) apply_clause(read, write, s, *i->body, changed);
    } else if (const auto* f = std::get_if<Forall>(&cl.node)) {
      for_each_value(s, f->kind, f->var,
                     [&](const Env<V>& s2) { apply_clause(read, write, s2, *f->body, changed); });
    }
  }

  bool relation_leq(const Rho& a, const Rho& b, PredId r) const {
    for (const auto& [t, v] : a.relations[r]) {
      if (!lattice_->leq(v, value_at(*lattice_, b, r, t))) return false;
    }
    return true;
  }

  bool agrees_at_rank(const Rho& a, const Rho& b, std::size_t rank) const {
    for (PredId r = 0; r < program_->predicates.size(); ++r) {
      if (program_->predicates[r].rank == rank && a.relations[r] != b.relations[r]) return false;
    }
    return true;
  }

  const Program* program_;
  const L* lattice_;
  const FunctionRegistry<L>* functions_;
  std::vector<V> beta_;
  mutable std::optional<std::vector<V>> proper_;
};

}  // namespace llfp
