#include "llfp/oracle/alfp.hpp"

#include <cstdint>
#include <optional>

namespace llfp {

namespace {

/// Slot values: universe atom ids for both kinds of variables.
struct SetEnv {
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
};

class Evaluator {
 public:
  explicit Evaluator(const Program& p) : program_(p), relations_(p.predicates.size()) {
    for (const auto& a : p.lattice.atoms) carrier_.push_back(*p.universe.find(a));
  }

  std::vector<std::set<Tuple>> run() {
    for (const auto& f : program_.facts) {
      for (auto b : literal_elements(f.value, false)) {
        Tuple t = f.args;
        t.push_back(b);
        relations_[f.pred].insert(t);
      }
    }
    for (const auto& st : program_.strata) {
      bool changed = true;
      while (changed) {
        changed = false;
        SetEnv env{std::vector<std::int64_t>(st.num_x, -1), std::vector<std::int64_t>(st.num_y, -1)};
        auto before = relations_;
        apply(before, env, st.clause, changed);
      }
    }
    return relations_;
  }

  void check(const Clause& c) {
    if (const auto* a = std::get_if<Assert>(&c.node)) {
      check_value(a->value, false);
    } else if (const auto* ca = std::get_if<ClauseAnd>(&c.node)) {
      check(*ca->lhs);
      check(*ca->rhs);
    } else if (const auto* i = std::get_if<Imply>(&c.node)) {
      check(*i->pre);
      check(*i->body);
    } else if (const auto* f = std::get_if<Forall>(&c.node)) {
      check(*f->body);
    }
  }

  void check(const Pre& p) {
    if (const auto* q = std::get_if<Query>(&p.node)) {
      check_value(q->value, true);
    } else if (std::holds_alternative<Apply>(p.node)) {
      throw UnsupportedFragment("Y(u) has no set-based counterpart");
    } else if (const auto* a = std::get_if<PreAnd>(&p.node)) {
      check(*a->lhs);
      check(*a->rhs);
    } else if (const auto* o = std::get_if<PreOr>(&p.node)) {
      check(*o->lhs);
      check(*o->rhs);
    } else {
      check(*std::get<Exists>(p.node).body);
    }
  }

 private:
  void check_value(const LatticeTerm& v, bool in_query) {
    if (std::holds_alternative<FnApp>(v.node)) throw UnsupportedFragment("function terms are not supported");
    if (const auto* l = std::get_if<Lit>(&v.node)) literal_elements(l->value, in_query);
  }

  std::vector<AtomId> literal_elements(const LatticeLiteral& lit, bool in_query) const {
    std::vector<AtomId> out;
    if (std::holds_alternative<LatticeLiteral::Bottom>(lit.form)) return out;
    if (std::holds_alternative<LatticeLiteral::Top>(lit.form)) {
      out.assign(carrier_.begin(), carrier_.end());
    } else if (const auto* s = std::get_if<LatticeLiteral::Set>(&lit.form)) {
      for (const auto& a : s->atoms) out.push_back(*program_.universe.find(a));
    } else {
      throw UnsupportedFragment("range literal on a powerset");
    }
    if (in_query && out.size() > 1) throw UnsupportedFragment("query literal with more than one element");
    return out;
  }

  static AtomId atom(const Term& t, const SetEnv& e) {
    return t.is_var() ? static_cast<AtomId>(e.x[t.id]) : static_cast<AtomId>(t.id);
  }

  /// Element denoted by V, or nullopt for a bottom literal.
  std::optional<AtomId> element(const LatticeTerm& v, const SetEnv& e) const {
    if (const auto* y = std::get_if<YVar>(&v.node)) return static_cast<AtomId>(e.y[y->id]);
    if (const auto* r = std::get_if<Repr>(&v.node)) return atom(r->term, e);
    auto elems = literal_elements(std::get<Lit>(v.node).value, true);
    if (elems.empty()) return std::nullopt;
    return elems.front();
  }

  bool holds(const std::vector<std::set<Tuple>>& rel, const SetEnv& e, const Pre& p) const {
    if (const auto* q = std::get_if<Query>(&p.node)) {
      auto b = element(q->value, e);
      if (!b) return true;
      Tuple t;
      for (const auto& u : q->args) t.push_back(atom(u, e));
      t.push_back(*b);
      return rel[q->pred].contains(t) != q->negated;
    }
    if (const auto* a = std::get_if<PreAnd>(&p.node)) return holds(rel, e, *a->lhs) && holds(rel, e, *a->rhs);
    if (const auto* o = std::get_if<PreOr>(&p.node)) return holds(rel, e, *o->lhs) || holds(rel, e, *o->rhs);
    const auto& ex = std::get<Exists>(p.node);
    SetEnv e2 = e;
    for (auto v : range(ex.kind)) {
      (ex.kind == VarKind::x ? e2.x : e2.y)[ex.var] = v;
      if (holds(rel, e2, *ex.body)) return true;
    }
    return false;
  }

  std::vector<AtomId> range(VarKind kind) const {
    if (kind == VarKind::y) return carrier_;
    std::vector<AtomId> all;
    for (AtomId a = 0; a < program_.universe.size(); ++a) all.push_back(a);
    return all;
  }

  void apply(const std::vector<std::set<Tuple>>& read, const SetEnv& e, const Clause& c, bool& changed) {
    if (const auto* a = std::get_if<Assert>(&c.node)) {
      Tuple base;
      for (const auto& u : a->args) base.push_back(atom(u, e));
      std::vector<AtomId> elems;
      if (const auto* l = std::get_if<Lit>(&a->value.node)) {
        elems = literal_elements(l->value, false);
      } else {
        elems.push_back(*element(a->value, e));
      }
      for (auto b : elems) {
        Tuple t = base;
        t.push_back(b);
        changed = relations_[a->pred].insert(t).second || changed;
      }
    } else if (const auto* ca = std::get_if<ClauseAnd>(&c.node)) {
      apply(read, e, *ca->lhs, changed);
      apply(read, e, *ca->rhs, changed);
    } else if (const auto* i = std::get_if<Imply>(&c.node)) {
      if (holds(read, e, *i->pre)) apply(read, e, *i->body, changed);
    } else if (const auto* f = std::get_if<Forall>(&c.node)) {
      SetEnv e2 = e;
      for (auto v : range(f->kind)) {
        (f->kind == VarKind::x ? e2.x : e2.y)[f->var] = v;
        apply(read, e2, *f->body, changed);
      }
    }
  }

  const Program& program_;
  std::vector<AtomId> carrier_;
  std::vector<std::set<Tuple>> relations_;
};

}  // namespace

bool in_alfp_fragment(const Program& program) {
  if (program.lattice.kind != LatticeKind::powerset) return false;
  try {
    Evaluator ev(program);
    for (const auto& st : program.strata) ev.check(st.clause);
  } catch (const UnsupportedFragment&) {
    return false;
  }
  return true;
}

std::vector<std::set<Tuple>> alfp_evaluate(const Program& program) {
  if (program.lattice.kind != LatticeKind::powerset) throw UnsupportedFragment("set-based reading needs a powerset");
  Evaluator ev(program);
  for (const auto& st : program.strata) ev.check(st.clause);
  return ev.run();
}

std::vector<std::string> alfp_mismatches(const Program& program, const PowersetLattice& lattice,
                                         const Interpretation<BitSet>& rho,
                                         const std::vector<std::set<Tuple>>& relations) {
  std::vector<std::string> out;
  auto show = [&](PredId r, const Tuple& t) {
    std::string s = program.predicates[r].name + "(";
    for (std::size_t i = 0; i + 1 < t.size(); ++i) s += (i ? "," : "") + program.universe.name(t[i]);
    return s + ") element " + program.universe.name(t.back());
  };
  for (PredId r = 0; r < program.predicates.size(); ++r) {
    for (const auto& t : relations[r]) {
      Tuple args(t.begin(), t.end() - 1);
      auto idx = lattice.index_of(program.universe.name(t.back()));
      if (!idx || !value_at(lattice, rho, r, args).test(*idx)) out.push_back("only in set reading: " + show(r, t));
    }
    for (const auto& [args, v] : rho.relations[r]) {
      for (std::size_t i = 0; i < lattice.atoms().size(); ++i) {
        if (!v.test(i)) continue;
        Tuple t = args;
        t.push_back(*program.universe.find(lattice.atoms()[i]));
        if (!relations[r].contains(t)) out.push_back("only in lattice reading: " + show(r, t));
      }
    }
  }
  return out;
}

}  // namespace llfp
