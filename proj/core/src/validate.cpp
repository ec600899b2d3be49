#include "llfp/ast/validate.hpp"

#include <algorithm>
#include <functional>

#include "llfp/ast/parser.hpp"

namespace llfp {

namespace {

std::string join_lines(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "\n";
    out += p;
  }
  return out;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

class WellFormedChecker {
 public:
  WellFormedChecker(const Program& p, bool has_complement) : program_(p), has_complement_(has_complement) {}

  std::vector<std::string> run() {
    for (std::size_t i = 0; i < program_.strata.size(); ++i) {
      path_ = {"clause " + std::to_string(i + 1)};
      clause(program_.strata[i].clause);
    }
    return std::move(problems_);
  }

 private:
  void report(const std::string& what) {
    std::string where;
    for (const auto& p : path_) where += (where.empty() ? "" : " > ") + p;
    problems_.push_back(where + ": " + what);
  }

  void term(const Term& t) {
    if (t.kind == Term::Kind::free) report("free variable " + t.name);
  }

  void lterm(const LatticeTerm& v, bool in_query) {
    std::visit(Overloaded{
                   [&](const YVar& y) {
                     if (y.id == kUnboundVar) report("free variable " + y.name);
                   },
                   [&](const Repr& r) { term(r.term); },
                   [&](const Lit&) {},
                   [&](const FnApp& f) {
                     if (in_query) {
                       report("function term " + f.name + "(...) in a query; only assertions may apply functions");
                     }
                     for (const auto& a : f.args) lterm(a, in_query);
                   },
               },
               v.node);
  }

  void pre(const Pre& p) {
    std::visit(Overloaded{
                   [&](const Query& q) {
                     path_.push_back(print_pre(program_, p));
                     for (const auto& t : q.args) term(t);
                     lterm(q.value, true);
                     if (q.negated && !has_complement_) {
                       report("negative query over a lattice without complement");
                     }
                     path_.pop_back();
                   },
                   [&](const Apply& a) {
                     path_.push_back(print_pre(program_, p));
                     if (a.y.id == kUnboundVar) report("free variable " + a.y.name);
                     term(a.arg);
                     path_.pop_back();
                   },
                   [&](const PreAnd& a) {
                     pre(*a.lhs);
                     pre(*a.rhs);
                   },
                   [&](const PreOr& o) {
                     pre(*o.lhs);
                     pre(*o.rhs);
                   },
                   [&](const Exists& e) {
                     path_.push_back("exists " + e.name);
                     pre(*e.body);
                     path_.pop_back();
                   },
               },
               p.node);
  }

  void clause(const Clause& c) {
    std::visit(Overloaded{
                   [&](const Assert& a) {
                     path_.push_back(print_clause(program_, c));
                     for (const auto& t : a.args) term(t);
                     lterm(a.value, false);
                     path_.pop_back();
                   },
                   [&](const True&) {},
                   [&](const ClauseAnd& a) {
                     clause(*a.lhs);
                     clause(*a.rhs);
                   },
                   [&](const Imply& i) {
                     path_.push_back("precondition");
                     pre(*i.pre);
                     path_.back() = "conclusion";
                     clause(*i.body);
                     path_.pop_back();
                   },
                   [&](const Forall& f) {
                     path_.push_back("forall " + f.name);
                     clause(*f.body);
                     path_.pop_back();
                   },
               },
               c.node);
  }

  const Program& program_;
  bool has_complement_;
  std::vector<std::string> path_;
  std::vector<std::string> problems_;
};

void collect_asserted(const Clause& c, std::set<PredId>& out) {
  std::visit(Overloaded{
                 [&](const Assert& a) { out.insert(a.pred); },
                 [&](const True&) {},
                 [&](const ClauseAnd& a) {
                   collect_asserted(*a.lhs, out);
                   collect_asserted(*a.rhs, out);
                 },
                 [&](const Imply& i) { collect_asserted(*i.body, out); },
                 [&](const Forall& f) { collect_asserted(*f.body, out); },
             },
             c.node);
}

void collect_queries(const Pre& p, std::vector<const Query*>& out) {
  std::visit(Overloaded{
                 [&](const Query& q) { out.push_back(&q); },
                 [&](const Apply&) {},
                 [&](const PreAnd& a) {
                   collect_queries(*a.lhs, out);
                   collect_queries(*a.rhs, out);
                 },
                 [&](const PreOr& o) {
                   collect_queries(*o.lhs, out);
                   collect_queries(*o.rhs, out);
                 },
                 [&](const Exists& e) { collect_queries(*e.body, out); },
             },
             p.node);
}

void collect_queries(const Clause& c, std::vector<const Query*>& out) {
  std::visit(Overloaded{
                 [&](const Assert&) {},
                 [&](const True&) {},
                 [&](const ClauseAnd& a) {
                   collect_queries(*a.lhs, out);
                   collect_queries(*a.rhs, out);
                 },
                 [&](const Imply& i) {
                   collect_queries(*i.pre, out);
                   collect_queries(*i.body, out);
                 },
                 [&](const Forall& f) { collect_queries(*f.body, out); },
             },
             c.node);
}

void add_term(const Term& t, VarSet& out) {
  if (t.is_var()) out.insert({VarKind::x, t.id});
}

void add_lterm(const LatticeTerm& v, VarSet& out) {
  std::visit(Overloaded{
                 [&](const YVar& y) {
                   if (y.id != kUnboundVar) out.insert({VarKind::y, y.id});
                 },
                 [&](const Repr& r) { add_term(r.term, out); },
                 [&](const Lit&) {},
                 [&](const FnApp& f) {
                   for (const auto& a : f.args) add_lterm(a, out);
                 },
             },
             v.node);
}

void collect_y(const Pre& p, std::set<VarId>& defined, std::set<VarId>& applied) {
  std::visit(Overloaded{
                 [&](const Query& q) {
                   if (const auto* y = std::get_if<YVar>(&q.value.node); y && y->id != kUnboundVar) {
                     defined.insert(y->id);
                   }
                 },
                 [&](const Apply& a) {
                   if (a.y.id != kUnboundVar) applied.insert(a.y.id);
                 },
                 [&](const PreAnd& a) {
                   collect_y(*a.lhs, defined, applied);
                   collect_y(*a.rhs, defined, applied);
                 },
                 [&](const PreOr& o) {
                   collect_y(*o.lhs, defined, applied);
                   collect_y(*o.rhs, defined, applied);
                 },
                 [&](const Exists& e) { collect_y(*e.body, defined, applied); },
             },
             p.node);
}

void flatten_and(const Pre& p, std::vector<const Pre*>& out) {
  if (const auto* a = std::get_if<PreAnd>(&p.node)) {
    flatten_and(*a->lhs, out);
    flatten_and(*a->rhs, out);
  } else {
    out.push_back(&p);
  }
}

Pre reorder_pre(const Pre& p);

/// Reorders inside the leaves of a conjunction spine, keeping its shape.
Pre map_leaves(const Pre& p) {
  if (const auto* a = std::get_if<PreAnd>(&p.node)) return {PreAnd{map_leaves(*a->lhs), map_leaves(*a->rhs)}};
  return reorder_pre(p);
}

Pre reorder_pre(const Pre& p) {
  if (const auto* o = std::get_if<PreOr>(&p.node)) return {PreOr{reorder_pre(*o->lhs), reorder_pre(*o->rhs)}};
  if (const auto* e = std::get_if<Exists>(&p.node)) return {Exists{e->kind, e->name, e->var, reorder_pre(*e->body)}};
  if (!std::holds_alternative<PreAnd>(p.node)) return p;

  std::vector<const Pre*> conjuncts;
  flatten_and(p, conjuncts);
  const std::size_t n = conjuncts.size();
  std::vector<std::set<VarId>> defines(n);
  std::vector<std::set<VarId>> applies(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<VarId> app;
    collect_y(*conjuncts[i], defines[i], app);
    for (auto y : app) {
      if (!defines[i].contains(y)) applies[i].insert(y);
    }
  }
  // must_follow[j] lists the conjuncts j has to come after.
  std::vector<std::vector<std::size_t>> must_follow(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      for (auto y : applies[j]) {
        if (defines[i].contains(y)) {
          must_follow[j].push_back(i);
          break;
        }
      }
    }
  }
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (placed[j]) continue;
      bool ready = std::all_of(must_follow[j].begin(), must_follow[j].end(), [&](std::size_t i) { return placed[i]; });
      if (ready) {
        placed[j] = true;
        order.push_back(j);
        break;
      }
    }
  }
  bool identity = true;
  for (std::size_t k = 0; k < n; ++k) identity = identity && order[k] == k;
  if (identity) return map_leaves(p);

  Pre out = reorder_pre(*conjuncts[order[0]]);
  for (std::size_t k = 1; k < n; ++k) out = Pre{PreAnd{std::move(out), reorder_pre(*conjuncts[order[k]])}};
  return out;
}

Clause reorder_clause(const Clause& c) {
  return std::visit(Overloaded{
                        [&](const Assert&) { return c; },
                        [&](const True&) { return c; },
                        [&](const ClauseAnd& a) { return Clause{ClauseAnd{reorder_clause(*a.lhs), reorder_clause(*a.rhs)}}; },
                        [&](const Imply& i) { return Clause{Imply{reorder_pre(*i.pre), reorder_clause(*i.body)}}; },
                        [&](const Forall& f) { return Clause{Forall{f.kind, f.name, f.var, reorder_clause(*f.body)}}; },
                    },
                    c.node);
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

void check_well_formed(const Program& program, bool lattice_has_complement) {
  auto problems = WellFormedChecker(program, lattice_has_complement).run();
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::vector<std::size_t> compute_ranks(Program& program) {
  std::vector<std::size_t> ranks(program.predicates.size(), 0);
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < program.strata.size(); ++i) {
    std::set<PredId> asserted;
    collect_asserted(program.strata[i].clause, asserted);
    for (auto r : asserted) {
      if (ranks[r] != 0) {
        problems.push_back("stratification violation: " + program.predicates[r].name + " is asserted in clause " +
                           std::to_string(ranks[r]) + " and clause " + std::to_string(i + 1));
      } else {
        ranks[r] = i + 1;
      }
    }
  }
  if (problems.empty()) problems = verify_ranks(program, ranks);
  for (const auto& f : program.facts) {
    if (ranks[f.pred] != 0) {
      problems.push_back("fact for " + program.predicates[f.pred].name + ", which is asserted by clause " +
                         std::to_string(ranks[f.pred]) + "; facts may only populate base relations");
    }
  }
  if (!problems.empty()) throw StratificationError(std::move(problems));
  for (std::size_t r = 0; r < ranks.size(); ++r) program.predicates[r].rank = ranks[r];
  return ranks;
}

std::vector<std::string> verify_ranks(const Program& program, const std::vector<std::size_t>& ranks) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < program.strata.size(); ++i) {
    const std::size_t stratum = i + 1;
    std::set<PredId> asserted;
    collect_asserted(program.strata[i].clause, asserted);
    for (auto r : asserted) {
      if (ranks[r] != stratum) {
        problems.push_back("stratification violation: " + program.predicates[r].name + " asserted in clause " +
                           std::to_string(stratum) + " but ranked " + std::to_string(ranks[r]));
      }
    }
    std::vector<const Query*> queries;
    collect_queries(program.strata[i].clause, queries);
    for (const auto* q : queries) {
      const auto& name = program.predicates[q->pred].name;
      if (q->negated && ranks[q->pred] >= stratum) {
        problems.push_back("stratification violation: clause " + std::to_string(stratum) + " negatively queries " +
                           name + " of rank " + std::to_string(ranks[q->pred]));
      } else if (!q->negated && ranks[q->pred] > stratum) {
        problems.push_back("stratification violation: clause " + std::to_string(stratum) + " queries " + name +
                           " of higher rank " + std::to_string(ranks[q->pred]));
      }
    }
  }
  return problems;
}

Program reorder_preconditions(const Program& program) {
  Program out = program;
  for (auto& s : out.strata) s.clause = reorder_clause(s.clause);
  return out;
}

VarSet free_vars(const Pre& pre) {
  VarSet out;
  std::visit(Overloaded{
                 [&](const Query& q) {
                   for (const auto& t : q.args) add_term(t, out);
                   add_lterm(q.value, out);
                 },
                 [&](const Apply& a) {
                   if (a.y.id != kUnboundVar) out.insert({VarKind::y, a.y.id});
                   add_term(a.arg, out);
                 },
                 [&](const PreAnd& a) {
                   out = free_vars(*a.lhs);
                   out.merge(free_vars(*a.rhs));
                 },
                 [&](const PreOr& o) {
                   out = free_vars(*o.lhs);
                   out.merge(free_vars(*o.rhs));
                 },
                 [&](const Exists& e) {
                   out = free_vars(*e.body);
                   out.erase({e.kind, e.var});
                 },
             },
             pre.node);
  return out;
}

VarSet free_vars(const Clause& clause) {
  VarSet out;
  std::visit(Overloaded{
                 [&](const Assert& a) {
                   for (const auto& t : a.args) add_term(t, out);
                   add_lterm(a.value, out);
                 },
                 [&](const True&) {},
                 [&](const ClauseAnd& a) {
                   out = free_vars(*a.lhs);
                   out.merge(free_vars(*a.rhs));
                 },
                 [&](const Imply& i) {
                   out = free_vars(*i.pre);
                   out.merge(free_vars(*i.body));
                 },
                 [&](const Forall& f) {
                   out = free_vars(*f.body);
                   out.erase({f.kind, f.var});
                 },
             },
             clause.node);
  return out;
}

std::set<VarId> defined_y(const Pre& pre) {
  std::set<VarId> defined;
  std::set<VarId> applied;
  collect_y(pre, defined, applied);
  return defined;
}

std::set<VarId> applied_y(const Pre& pre) {
  std::set<VarId> defined;
  std::set<VarId> applied;
  collect_y(pre, defined, applied);
  return applied;
}

}  // namespace llfp
