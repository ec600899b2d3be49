#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "llfp/ast/ast.hpp"
#include "llfp/ast/interpretation.hpp"
#include "llfp/lattice/function_registry.hpp"
#include "llfp/solver/store.hpp"

namespace llfp {

/// Partial environment: one slot per X and per Y variable of the current
/// clause. Y slots never hold bottom.
template <typename V>
struct Env {
  static constexpr std::int64_t kNone = -1;

  std::vector<std::int64_t> x;
  std::vector<std::optional<V>> y;

  Env() = default;
  Env(std::size_t num_x, std::size_t num_y) : x(num_x, kNone), y(num_y) {}

  std::optional<AtomId> atom(VarId v) const {
    return x[v] == kNone ? std::nullopt : std::optional<AtomId>(static_cast<AtomId>(x[v]));
  }

  bool operator==(const Env&) const = default;
  bool operator<(const Env& o) const { return x != o.x ? x < o.x : y < o.y; }
};

/// The ground atom denoted by u under env, if any.
template <typename V>
std::optional<AtomId> ground_term(const Term& u, const Env<V>& env) {
  if (u.kind == Term::Kind::constant) return u.id;
  if (u.kind == Term::Kind::var) return env.atom(u.id);
  return std::nullopt;
}

/// unify_U: componentwise match of u against the atoms, binding unbound
/// variables left to right.
template <typename V>
std::optional<Env<V>> unify_terms(const Env<V>& env, std::span<const Term> u, std::span<const AtomId> atoms) {
  Env<V> out = env;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (auto a = ground_term(u[i], out)) {
      if (*a != atoms[i]) return std::nullopt;
    } else if (u[i].is_var()) {
      out.x[u[i].id] = atoms[i];
    } else {
      return std::nullopt;
    }
  }
  return out;
}

struct SolverStats {
  std::size_t growths = 0;
  std::size_t non_growing_adds = 0;
  std::size_t consumer_invocations = 0;
  std::size_t sweep_deliveries = 0;
  std::size_t growth_deliveries = 0;
  std::size_t candidates = 0;
  std::size_t registrations = 0;
  std::size_t skipped_registrations = 0;
  std::vector<ConsumerRecord> consumers;
  std::vector<std::size_t> growths_per_predicate;
  std::vector<std::int64_t> last_modified_stratum;

  /// Every consumer ran at most once per growth of its predicate after its
  /// registration plus once per leaf of its initial sweep.
  bool difference_propagation_holds() const {
    for (const auto& c : consumers) {
      std::size_t after = growths_per_predicate[c.pred] - c.growths_at_registration;
      if (c.growth_deliveries > after) return false;
    }
    return consumer_invocations == sweep_deliveries + growth_deliveries;
  }
};

/// Bottom-up least-model solver. The program must be well formed, ranked
/// and reordered (see validate.hpp).
template <complete_lattice L>
class Solver {
 public:
  using V = typename L::value_type;
  using Cont = std::function<void(const Env<V>&)>;

  Solver(const Program& program, const L& lattice, const FunctionRegistry<L>& functions)
      : program_(&program),
        lattice_(&lattice),
        functions_(&functions),
        store_(lattice, program.predicates),
        infl_(program.predicates.size()) {
    for (const auto& name : program.universe.names()) beta_.push_back(lattice.beta(name));
  }

  /// Loads the facts, then runs cl_1, ..., cl_s under the empty environment.
  const ResultStore<L>& solve() {
    store_.begin_stratum(0);
    for (const auto& f : program_->facts) {
      V v = lattice_->from_literal(f.value);
      if (v == lattice_->bottom()) continue;
      if (auto leaf = store_.add(f.pred, f.args, v)) infl_.deliver(f.pred, f.args, *leaf);
    }
    for (std::size_t i = 0; i < program_->strata.size(); ++i) {
      const auto& s = program_->strata[i];
      store_.begin_stratum(i + 1);
      execute(s.clause, Env<V>(s.num_x, s.num_y));
    }
    store_.begin_stratum(program_->strata.size() + 1);
    return store_;
  }

  const ResultStore<L>& store() const { return store_; }
  ResultStore<L>& mutable_store() { return store_; }
  Interpretation<V> result() const { return store_.to_interpretation(); }

  SolverStats stats() const {
    SolverStats s = stats_;
    s.growths = store_.stats().growths;
    s.non_growing_adds = store_.stats().non_growing_adds;
    s.growths_per_predicate = store_.stats().growths_per_predicate;
    s.last_modified_stratum = store_.stats().last_modified_stratum;
    s.growth_deliveries = infl_.growth_deliveries();
    s.consumers = infl_.records();
    return s;
  }

  /// Lattice value of V' under env; unbound Y reads as top.
  V eval(const LatticeTerm& t, const Env<V>& env) const {
    if (const auto* y = std::get_if<YVar>(&t.node)) {
      const auto& b = env.y[y->id];
      return b ? *b : lattice_->top();
    }
    if (const auto* r = std::get_if<Repr>(&t.node)) {
      auto a = ground_term(r->term, env);
      if (!a) throw InvariantViolation("unbound variable " + r->term.name + " in lattice term");
      return beta_[*a];
    }
    if (const auto* l = std::get_if<Lit>(&t.node)) return literal(*l);
    const auto& f = std::get<FnApp>(t.node);
    std::vector<V> args;
    args.reserve(f.args.size());
    for (const auto& a : f.args) args.push_back(eval(a, env));
    return functions_->apply(f.name, args);
  }

  /// unify_L: the environments extending env under which V matches l.
  void unify_value(const Env<V>& env, const LatticeTerm& v, const V& l, const Cont& next) const {
    if (const auto* y = std::get_if<YVar>(&v.node)) {
      const auto& b = env.y[y->id];
      V bound = b ? lattice_->meet(l, *b) : l;
      if (bound == lattice_->bottom()) return;
      Env<V> out = env;
      out.y[y->id] = bound;
      next(out);
      return;
    }
    if (const auto* r = std::get_if<Repr>(&v.node)) {
      if (auto a = ground_term(r->term, env)) {
        if (lattice_->leq(beta_[*a], l)) next(env);
        return;
      }
      Env<V> out = env;
      for (AtomId a = 0; a < beta_.size(); ++a) {
        if (!lattice_->leq(beta_[a], l)) continue;
        out.x[r->term.id] = a;
        next(out);
      }
      return;
    }
    if (const auto* c = std::get_if<Lit>(&v.node)) {
      if (lattice_->leq(literal(*c), l)) next(env);
      return;
    }
    throw InvariantViolation("function term in a query");
  }

  /// unify: unify_U then unify_L.
  void unify(const Env<V>& env, std::span<const Term> u, const LatticeTerm& v, std::span<const AtomId> atoms,
             const V& l, const Cont& next) const {
    if (auto e = unify_terms(env, u, atoms)) unify_value(*e, v, l, next);
  }

  /// unifiable: the correlated candidates (a; l) for (u; V) under env.
  /// Unbound X variables of u and V range over the universe.
  template <typename F>
  void unifiable(const Env<V>& env, std::span<const Term> u, const LatticeTerm& v, F&& fn) {
    std::vector<VarId> open;
    auto note = [&](const Term& t) {
      if (t.is_var() && !env.atom(t.id) && std::find(open.begin(), open.end(), t.id) == open.end()) {
        open.push_back(t.id);
      }
    };
    for (const auto& t : u) note(t);
    collect_repr_terms(v, note);
    for_each_binding(env, open, [&](const Env<V>& e) {
      Tuple atoms;
      atoms.reserve(u.size());
      for (const auto& t : u) atoms.push_back(*ground_term(t, e));
      ++stats_.candidates;
      fn(atoms, eval(v, e));
    });
  }

  void execute(const Clause& cl, const Env<V>& env) {
    if (const auto* a = std::get_if<Assert>(&cl.node)) {
      unifiable(env, a->args, a->value, [&](const Tuple& atoms, const V& l) {
        if (l == lattice_->bottom()) return;
        if (auto leaf = store_.add(a->pred, atoms, l)) infl_.deliver(a->pred, atoms, *leaf);
      });
    } else if (std::holds_alternative<True>(cl.node)) {
    } else if (const auto* c = std::get_if<ClauseAnd>(&cl.node)) {
      execute(*c->lhs, env);
      execute(*c->rhs, env);
    } else if (const auto* i = std::get_if<Imply>(&cl.node)) {
      const Clause* body = &*i->body;
      check(*i->pre, [this, body](const Env<V>& e) { execute(*body, e); }, env);
    } else {
      const auto& f = std::get<Forall>(cl.node);
      execute(*f.body, cleared(env, f.kind, f.var));
    }
  }

  void check(const Pre& pre, Cont next, const Env<V>& env) {
    if (const auto* q = std::get_if<Query>(&pre.node)) {
      if (q->negated) {
        check_negative(*q, next, env);
      } else {
        check_positive(*q, std::move(next), env);
      }
    } else if (const auto* ap = std::get_if<Apply>(&pre.node)) {
      const auto& b = env.y[ap->y.id];
      V yv = b ? *b : lattice_->top();
      Env<V> out = env;
      out.y[ap->y.id] = yv;
      if (auto a = ground_term(ap->arg, env)) {
        if (lattice_->leq(beta_[*a], yv)) next(out);
        return;
      }
      for (AtomId a = 0; a < beta_.size(); ++a) {
        if (!lattice_->leq(beta_[a], yv)) continue;
        out.x[ap->arg.id] = a;
        next(out);
      }
    } else if (const auto* c = std::get_if<PreAnd>(&pre.node)) {
      const Pre* rhs = &*c->rhs;
      check(*c->lhs, [this, rhs, next](const Env<V>& e) { check(*rhs, next, e); }, env);
    } else if (const auto* o = std::get_if<PreOr>(&pre.node)) {
      auto seen = std::make_shared<std::set<Env<V>>>();
      Cont once = [seen, next](const Env<V>& e) {
        if (seen->insert(e).second) next(e);
      };
      check(*o->lhs, once, env);
      check(*o->rhs, once, env);
    } else {
      const auto& ex = std::get<Exists>(pre.node);
      auto seen = std::make_shared<std::set<Env<V>>>();
      VarKind kind = ex.kind;
      VarId var = ex.var;
      Cont drop = [seen, next, kind, var](const Env<V>& e) {
        Env<V> reduced = cleared(e, kind, var);
        if (seen->insert(reduced).second) next(reduced);
      };
      check(*ex.body, drop, cleared(env, kind, var));
    }
  }

 private:
  static Env<V> cleared(const Env<V>& env, VarKind kind, VarId var) {
    Env<V> out = env;
    if (kind == VarKind::x) {
      out.x[var] = Env<V>::kNone;
    } else {
      out.y[var].reset();
    }
    return out;
  }

  static std::vector<VarId> open_vars(const std::vector<Term>& args, const Env<V>& env) {
    std::vector<VarId> open;
    for (const auto& t : args) {
      if (t.is_var() && !env.atom(t.id) && std::find(open.begin(), open.end(), t.id) == open.end()) {
        open.push_back(t.id);
      }
    }
    return open;
  }

  template <typename F>
  static void collect_repr_terms(const LatticeTerm& t, F& note) {
    if (const auto* r = std::get_if<Repr>(&t.node)) {
      note(r->term);
    } else if (const auto* f = std::get_if<FnApp>(&t.node)) {
      for (const auto& a : f->args) collect_repr_terms(a, note);
    }
  }

  template <typename F>
  void for_each_binding(const Env<V>& env, const std::vector<VarId>& open, F&& fn) const {
    if (open.empty()) {
      fn(env);
      return;
    }
    const std::size_t n = beta_.size();
    if (n == 0) return;
    Env<V> e = env;
    std::vector<std::size_t> odo(open.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < open.size(); ++k) e.x[open[k]] = static_cast<std::int64_t>(odo[k]);
      fn(e);
      std::size_t k = 0;
      for (; k < odo.size(); ++k) {
        if (++odo[k] < n) break;
        odo[k] = 0;
      }
      if (k == odo.size()) break;
    }
  }

  void check_positive(const Query& q, Cont next, const Env<V>& env) {
    if (const auto* lit = std::get_if<Lit>(&q.value.node); lit && literal(*lit) == lattice_->bottom()) {
      // Every leaf, absent ones included, dominates bottom.
      for_each_binding(env, open_vars(q.args, env), [&](const Env<V>& e) {
        ++stats_.candidates;
        next(e);
      });
      return;
    }
    Tuple prefix;
    for (const auto& t : q.args) {
      auto a = ground_term(t, env);
      if (!a) break;
      prefix.push_back(*a);
    }
    const Query* qp = &q;
    auto consumer = [this, qp, next, env](const Tuple& atoms, const V& l) {
      ++stats_.consumer_invocations;
      unify(env, qp->args, qp->value, atoms, l, next);
    };
    auto leaves = store_.snapshot(q.pred, prefix);
    if (store_.is_final(q.pred)) {
      ++stats_.skipped_registrations;
      for (const auto& [t, v] : leaves) {
        ++stats_.candidates;
        unify(env, q.args, q.value, t, v, next);
      }
      return;
    }
    ++stats_.registrations;
    std::size_t index = infl_.add(q.pred, prefix, store_.stats().growths_per_predicate[q.pred], consumer);
    stats_.sweep_deliveries += leaves.size();
    infl_.sweep(index, leaves);
  }

  /// Matches V against the complement of the current leaf at every ground
  /// instance of the arguments; the predicate is final by stratification.
  void check_negative(const Query& q, const Cont& next, const Env<V>& env) {
    for_each_binding(env, open_vars(q.args, env), [&](const Env<V>& e) {
      Tuple atoms;
      for (const auto& t : q.args) atoms.push_back(*ground_term(t, e));
      ++stats_.candidates;
      unify_value(e, q.value, lattice_->complement(store_.get(q.pred, atoms)), next);
    });
  }

  V literal(const Lit& l) const {
    auto it = literals_.find(&l);
    if (it != literals_.end()) return it->second;
    V v = lattice_->from_literal(l.value);
    literals_.emplace(&l, v);
    return v;
  }

  const Program* program_;
  const L* lattice_;
  const FunctionRegistry<L>* functions_;
  std::vector<V> beta_;
  ResultStore<L> store_;
  InflStore<V> infl_;
  SolverStats stats_;
  mutable std::unordered_map<const Lit*, V> literals_;
};

}  // namespace llfp
