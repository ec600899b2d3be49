#include "llfp/ast/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "llfp/lattice/interval.hpp"

namespace llfp {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

AtomId Universe::intern(std::string_view name) {
  if (auto id = find(name)) return *id;
  auto id = static_cast<AtomId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<AtomId> Universe::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<PredId> Program::find_predicate(std::string_view name) const {
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].name == name) return static_cast<PredId>(i);
  }
  return std::nullopt;
}

namespace {

const std::set<std::string, std::less<>> kKeywords = {"lattice", "rel",  "fun", "universe", "fact", "clause",
                                                      "forall",  "exists", "bot", "top",      "inf"};

struct Pos {
  std::size_t line = 1;
  std::size_t col = 1;
};

enum class Tok { ident, integer, yvar, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Pos p = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, "", p});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back({Tok::ident, take_word(), p});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) digits += advance();
        out.push_back({Tok::integer, digits, p});
      } else if (c == '\'') {
        advance();
        if (i_ >= src_.size() || !(std::isalpha(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
          throw ParseError(p.line, p.col, "expected a name after '");
        }
        out.push_back({Tok::yvar, "'" + take_word(), p});
      } else if (c == '=' && peek(1) == '>') {
        advance();
        advance();
        out.push_back({Tok::punct, "=>", p});
      } else if (std::string_view("()[]{};,./=&|!-+").find(c) != std::string_view::npos) {
        out.push_back({Tok::punct, std::string(1, advance()), p});
      } else {
        throw ParseError(p.line, p.col, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  char peek(std::size_t k) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    return c;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '/' && peek(1) == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string take_word() {
    std::string w;
    while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) w += advance();
    return w;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Pos pos_;
};

struct RawTerm {
  std::string text;
  bool is_int = false;
  Pos pos;
};

struct RawLTerm {
  enum class Kind { yvar, repr, fn, lit };
  Kind kind = Kind::lit;
  std::string name;
  RawTerm term;
  std::vector<RawLTerm> args;
  LatticeLiteral lit;
  Pos pos;
};

struct RawFormula {
  enum class Kind { atom, apply, one, negation, conj, disj, impl, forall, exists };
  Kind kind = Kind::one;
  Pos pos;
  std::string name;  // predicate, quantified variable or applied Y
  bool y = false;    // quantifier over a Y-variable
  std::vector<RawTerm> terms;
  std::optional<RawLTerm> value;
  std::vector<RawFormula> kids;
};

struct RawFact {
  std::string pred;
  Pos pos;
  std::vector<RawTerm> args;
  LatticeLiteral value;
  Pos value_pos;
};

struct RawDecl {
  std::string name;
  std::size_t arity = 0;
  Pos pos;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    parse_lattice_decl();
    while (!at_end()) {
      if (accept_word("rel")) {
        rels_.push_back(parse_signature());
      } else if (accept_word("fun")) {
        funs_.push_back(parse_signature());
      } else if (accept_word("universe")) {
        do {
          universe_decl_.push_back(parse_term());
        } while (accept(","));
      } else if (accept_word("fact")) {
        facts_.push_back(parse_fact());
      } else if (accept_word("clause")) {
        do {
          strata_.push_back(parse_formula());
        } while (accept(","));
      } else {
        fail(cur(), "expected rel, fun, universe, fact or clause, got '" + cur().text + "'");
      }
    }
    return build();
  }

 private:
  // ---- token helpers ----------------------------------------------------

  const Token& cur() const { return toks_[i_]; }
  const Token& peek_tok(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == Tok::end; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.pos.line, t.pos.col, msg); }
  [[noreturn]] static void fail(Pos p, const std::string& msg) { throw ParseError(p.line, p.col, msg); }

  bool is_punct(std::string_view p) const { return cur().kind == Tok::punct && cur().text == p; }
  bool is_word(std::string_view w) const { return cur().kind == Tok::ident && cur().text == w; }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    ++i_;
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!is_word(w)) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(cur(), "expected '" + std::string(p) + "', got '" + describe(cur()) + "'");
  }
  static std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : t.text; }

  std::string expect_ident(const char* what) {
    if (cur().kind != Tok::ident || kKeywords.contains(cur().text)) {
      fail(cur(), std::string("expected ") + what + ", got '" + describe(cur()) + "'");
    }
    return toks_[i_++].text;
  }

  std::int64_t expect_int(bool allow_negative) {
    bool neg = allow_negative && accept("-");
    if (cur().kind != Tok::integer) fail(cur(), "expected an integer, got '" + describe(cur()) + "'");
    auto v = parse_integer_atom((neg ? "-" : "") + cur().text);
    if (!v) fail(cur(), "integer out of range");
    ++i_;
    return *v;
  }

  // ---- declarations -----------------------------------------------------

  void parse_lattice_decl() {
    if (!accept_word("lattice")) fail(cur(), "a clause file starts with a lattice declaration");
    Pos p = cur().pos;
    if (accept_word("powerset")) {
      decl_.kind = LatticeKind::powerset;
      expect("{");
      if (!is_punct("}")) {
        do {
          RawTerm t = parse_term();
          if (std::find(decl_.atoms.begin(), decl_.atoms.end(), t.text) != decl_.atoms.end()) {
            fail(t.pos, "duplicate powerset atom " + t.text);
          }
          decl_.atoms.push_back(t.text);
        } while (accept(","));
      }
      expect("}");
      if (decl_.atoms.empty()) fail(p, "powerset lattice needs a non-empty universe");
    } else if (accept_word("signs")) {
      decl_.kind = LatticeKind::signs;
    } else if (accept_word("interval")) {
      decl_.kind = LatticeKind::interval;
      if (!accept_word("zmin")) fail(cur(), "expected zmin=<int>");
      expect("=");
      decl_.zmin = expect_int(true);
      if (!accept_word("zmax")) fail(cur(), "expected zmax=<int>");
      expect("=");
      decl_.zmax = expect_int(true);
      if (decl_.zmin > decl_.zmax) fail(p, "interval lattice needs zmin <= zmax");
    } else {
      fail(cur(), "expected powerset, signs or interval");
    }
  }

  RawDecl parse_signature() {
    RawDecl d;
    d.pos = cur().pos;
    d.name = expect_ident("a name");
    expect("/");
    d.arity = static_cast<std::size_t>(expect_int(false));
    return d;
  }

  RawFact parse_fact() {
    RawFact f;
    f.pos = cur().pos;
    f.pred = expect_ident("a predicate name");
    expect("(");
    if (!is_punct(")")) {
      do {
        f.args.push_back(parse_term());
      } while (accept(","));
    }
    expect(")");
    expect("=");
    f.value_pos = cur().pos;
    auto lit = parse_literal();
    if (!lit) fail(f.value_pos, "expected a lattice constant");
    f.value = *lit;
    return f;
  }

  // ---- terms and lattice terms ------------------------------------------

  RawTerm parse_term() {
    RawTerm t;
    t.pos = cur().pos;
    if (is_punct("-") && peek_tok(1).kind == Tok::integer) {
      t.text = std::to_string(expect_int(true));
      t.is_int = true;
    } else if (cur().kind == Tok::integer) {
      t.text = std::to_string(expect_int(false));
      t.is_int = true;
    } else {
      t.text = expect_ident("a term");
    }
    return t;
  }

  ExtInt parse_endpoint() {
    if (accept_word("inf")) return ExtInt::pos_inf();
    if (is_punct("+") && peek_tok(1).kind == Tok::ident && peek_tok(1).text == "inf") {
      i_ += 2;
      return ExtInt::pos_inf();
    }
    if (is_punct("-") && peek_tok(1).kind == Tok::ident && peek_tok(1).text == "inf") {
      i_ += 2;
      return ExtInt::neg_inf();
    }
    return ExtInt(expect_int(true));
  }

  /// bot | top | {atoms} | [lo,hi]; nullopt (nothing consumed) otherwise.
  std::optional<LatticeLiteral> parse_literal() {
    if (accept_word("bot")) return LatticeLiteral{LatticeLiteral::Bottom{}};
    if (accept_word("top")) return LatticeLiteral{LatticeLiteral::Top{}};
    if (accept("{")) {
      LatticeLiteral::Set s;
      if (!is_punct("}")) {
        do {
          s.atoms.push_back(parse_set_atom());
        } while (accept(","));
      }
      expect("}");
      return LatticeLiteral{std::move(s)};
    }
    if (is_punct("[")) {
      std::size_t save = i_;
      ++i_;
      bool range = is_word("inf") || ((is_punct("-") || is_punct("+")) && peek_tok(1).text == "inf");
      if (!range) {
        // [int, ...] is a range, [u] is a representation term.
        std::size_t probe = i_;
        if (is_punct("-")) ++probe;
        range = toks_[probe].kind == Tok::integer && toks_[probe + 1].kind == Tok::punct && toks_[probe + 1].text == ",";
      }
      if (!range) {
        i_ = save;
        return std::nullopt;
      }
      LatticeLiteral::Range r;
      r.lo = parse_endpoint();
      expect(",");
      r.hi = parse_endpoint();
      expect("]");
      return LatticeLiteral{r};
    }
    return std::nullopt;
  }

  std::string parse_set_atom() {
    if (is_punct("-") && peek_tok(1).kind == Tok::integer) return std::to_string(expect_int(true));
    if (accept("-")) return "-";
    if (accept("+")) return "+";
    return parse_term().text;
  }

  RawLTerm parse_lterm(bool allow_fn) {
    RawLTerm v;
    v.pos = cur().pos;
    if (cur().kind == Tok::yvar) {
      v.kind = RawLTerm::Kind::yvar;
      v.name = toks_[i_++].text;
      return v;
    }
    if (auto lit = parse_literal()) {
      v.kind = RawLTerm::Kind::lit;
      v.lit = *lit;
      return v;
    }
    if (accept("[")) {
      v.kind = RawLTerm::Kind::repr;
      v.term = parse_term();
      expect("]");
      return v;
    }
    if (allow_fn && cur().kind == Tok::ident && !kKeywords.contains(cur().text) && peek_tok(1).text == "(") {
      v.kind = RawLTerm::Kind::fn;
      v.name = toks_[i_++].text;
      expect("(");
      if (!is_punct(")")) {
        do {
          v.args.push_back(parse_lterm(true));
        } while (accept(","));
      }
      expect(")");
      return v;
    }
    fail(cur(), "expected a lattice term, got '" + describe(cur()) + "'");
  }

  // ---- formulas ---------------------------------------------------------

  RawFormula parse_formula() {
    if (is_word("forall") || is_word("exists")) return parse_quantifier();
    return parse_impl();
  }

  RawFormula parse_quantifier() {
    RawFormula f;
    f.pos = cur().pos;
    f.kind = is_word("forall") ? RawFormula::Kind::forall : RawFormula::Kind::exists;
    ++i_;
    if (cur().kind == Tok::yvar) {
      f.y = true;
      f.name = toks_[i_++].text;
    } else {
      f.name = expect_ident("a variable");
    }
    expect(".");
    f.kids.push_back(parse_formula());
    return f;
  }

  RawFormula parse_impl() {
    RawFormula lhs = parse_disj();
    if (is_punct("=>")) {
      RawFormula f;
      f.pos = cur().pos;
      ++i_;
      f.kind = RawFormula::Kind::impl;
      f.kids.push_back(std::move(lhs));
      f.kids.push_back(parse_formula());
      return f;
    }
    return lhs;
  }

  RawFormula binary(RawFormula::Kind k, RawFormula l, RawFormula r, Pos p) {
    RawFormula f;
    f.kind = k;
    f.pos = p;
    f.kids.push_back(std::move(l));
    f.kids.push_back(std::move(r));
    return f;
  }

  RawFormula parse_disj() {
    RawFormula lhs = parse_conj();
    while (is_punct("|")) {
      Pos p = cur().pos;
      ++i_;
      lhs = binary(RawFormula::Kind::disj, std::move(lhs), parse_conj(), p);
    }
    return lhs;
  }

  RawFormula parse_conj() {
    RawFormula lhs = parse_unary();
    while (is_punct("&")) {
      Pos p = cur().pos;
      ++i_;
      lhs = binary(RawFormula::Kind::conj, std::move(lhs), parse_unary(), p);
    }
    return lhs;
  }

  RawFormula parse_unary() {
    Pos p = cur().pos;
    if (accept("!")) {
      RawFormula f;
      f.kind = RawFormula::Kind::negation;
      f.pos = p;
      f.kids.push_back(parse_atom());
      return f;
    }
    if (accept("(")) {
      RawFormula f = parse_formula();
      expect(")");
      return f;
    }
    if (is_word("forall") || is_word("exists")) return parse_quantifier();
    if (cur().kind == Tok::integer && cur().text == "1") {
      ++i_;
      RawFormula f;
      f.kind = RawFormula::Kind::one;
      f.pos = p;
      return f;
    }
    if (cur().kind == Tok::yvar) {
      RawFormula f;
      f.kind = RawFormula::Kind::apply;
      f.pos = p;
      f.name = toks_[i_++].text;
      expect("(");
      f.terms.push_back(parse_term());
      expect(")");
      return f;
    }
    return parse_atom();
  }

  RawFormula parse_atom() {
    RawFormula f;
    f.kind = RawFormula::Kind::atom;
    f.pos = cur().pos;
    f.name = expect_ident("a predicate");
    expect("(");
    if (!is_punct(";")) {
      do {
        f.terms.push_back(parse_term());
      } while (accept(","));
    }
    expect(";");
    f.value = parse_lterm(true);
    expect(")");
    return f;
  }

  // ---- resolution -------------------------------------------------------

  struct Binding {
    std::string name;
    VarKind kind;
    VarId id;
  };

  struct StratumScope {
    std::vector<Binding> bindings;
    std::size_t num_x = 0;
    std::size_t num_y = 0;
  };

  void check_atom_known(const std::string& atom, Pos p) const {
    if (decl_.kind == LatticeKind::powerset &&
        std::find(decl_.atoms.begin(), decl_.atoms.end(), atom) == decl_.atoms.end()) {
      fail(p, "unknown atom " + atom + " (not in the powerset universe)");
    }
  }

  void check_literal(const LatticeLiteral& lit, Pos p) const {
    if (const auto* s = std::get_if<LatticeLiteral::Set>(&lit.form)) {
      if (decl_.kind == LatticeKind::interval) fail(p, "set literal used with the interval lattice");
      for (const auto& a : s->atoms) {
        if (decl_.kind == LatticeKind::signs) {
          if (a != "-" && a != "0" && a != "+") fail(p, "unknown sign " + a + " (expected -, 0 or +)");
        } else {
          check_atom_known(a, p);
        }
      }
    } else if (const auto* r = std::get_if<LatticeLiteral::Range>(&lit.form)) {
      if (decl_.kind != LatticeKind::interval) fail(p, "interval literal used with a set lattice");
      if (r->lo > r->hi || r->lo.is_pos_inf() || r->hi.is_neg_inf()) fail(p, "malformed interval " + lit.to_string());
    }
  }

  PredId predicate(const std::string& name, std::size_t arity, Pos p) {
    if (auto id = program_.find_predicate(name)) {
      const auto& pred = program_.predicates[*id];
      if (pred.arity != arity) {
        fail(p, "arity mismatch for " + name + ": declared " + std::to_string(pred.arity) + ", used with " +
                    std::to_string(arity));
      }
      return *id;
    }
    program_.predicates.push_back({name, arity, 0});
    return static_cast<PredId>(program_.predicates.size() - 1);
  }

  Term resolve_term(const RawTerm& t, const StratumScope& scope) {
    if (!t.is_int) {
      for (auto it = scope.bindings.rbegin(); it != scope.bindings.rend(); ++it) {
        if (it->kind == VarKind::x && it->name == t.text) return Term::var(t.text, it->id);
      }
    }
    if (t.is_int) {
      check_atom_known(t.text, t.pos);
      return Term::constant(t.text, program_.universe.intern(t.text));
    }
    if (auto id = program_.universe.find(t.text)) return Term::constant(t.text, *id);
    return Term::free(t.text);
  }

  YVar resolve_y(const std::string& name, const StratumScope& scope) const {
    for (auto it = scope.bindings.rbegin(); it != scope.bindings.rend(); ++it) {
      if (it->kind == VarKind::y && it->name == name) return {name, it->id};
    }
    return {name, kUnboundVar};
  }

  LatticeTerm resolve_lterm(const RawLTerm& v, const StratumScope& scope) {
    switch (v.kind) {
      case RawLTerm::Kind::yvar:
        return {resolve_y(v.name, scope)};
      case RawLTerm::Kind::repr:
        return {Repr{resolve_term(v.term, scope)}};
      case RawLTerm::Kind::lit:
        check_literal(v.lit, v.pos);
        return {Lit{v.lit}};
      case RawLTerm::Kind::fn: {
        auto sigs = builtin_signatures(decl_.kind);
        auto key = std::make_pair(v.name, v.args.size());
        if (std::find(sigs.begin(), sigs.end(), key) == sigs.end()) {
          fail(v.pos, "unknown function symbol " + v.name + "/" + std::to_string(v.args.size()) + " for the " +
                          to_string(decl_.kind) + " lattice");
        }
        FnApp app{v.name, {}};
        for (const auto& a : v.args) app.args.push_back(resolve_lterm(a, scope));
        return {std::move(app)};
      }
    }
    fail(v.pos, "bad lattice term");
  }

  VarId bind(StratumScope& scope, const RawFormula& f) {
    VarKind kind = f.y ? VarKind::y : VarKind::x;
    VarId id = static_cast<VarId>(f.y ? scope.num_y++ : scope.num_x++);
    scope.bindings.push_back({f.name, kind, id});
    return id;
  }

  Pre to_pre(const RawFormula& f, StratumScope& scope) {
    using K = RawFormula::Kind;
    switch (f.kind) {
      case K::atom:
      case K::negation: {
        const RawFormula& a = f.kind == K::atom ? f : f.kids[0];
        Query q;
        q.pred = predicate(a.name, a.terms.size(), a.pos);
        for (const auto& t : a.terms) q.args.push_back(resolve_term(t, scope));
        q.value = resolve_lterm(*a.value, scope);
        q.negated = f.kind == K::negation;
        return {std::move(q)};
      }
      case K::apply:
        return {Apply{resolve_y(f.name, scope), resolve_term(f.terms[0], scope)}};
      case K::conj:
        return {PreAnd{to_pre(f.kids[0], scope), to_pre(f.kids[1], scope)}};
      case K::disj:
        return {PreOr{to_pre(f.kids[0], scope), to_pre(f.kids[1], scope)}};
      case K::exists: {
        VarId id = bind(scope, f);
        Pre body = to_pre(f.kids[0], scope);
        scope.bindings.pop_back();
        return {Exists{f.y ? VarKind::y : VarKind::x, f.name, id, std::move(body)}};
      }
      case K::forall:
        fail(f.pos, "forall is not allowed in a precondition");
      case K::impl:
        fail(f.pos, "implication is not allowed in a precondition");
      case K::one:
        fail(f.pos, "1 is not allowed in a precondition");
    }
    fail(f.pos, "bad precondition");
  }

  Clause to_clause(const RawFormula& f, StratumScope& scope) {
    using K = RawFormula::Kind;
    switch (f.kind) {
      case K::atom: {
        Assert a;
        a.pred = predicate(f.name, f.terms.size(), f.pos);
        for (const auto& t : f.terms) a.args.push_back(resolve_term(t, scope));
        a.value = resolve_lterm(*f.value, scope);
        return {std::move(a)};
      }
      case K::one:
        return {True{}};
      case K::conj:
        return {ClauseAnd{to_clause(f.kids[0], scope), to_clause(f.kids[1], scope)}};
      case K::impl: {
        Pre pre = to_pre(f.kids[0], scope);
        return {Imply{std::move(pre), to_clause(f.kids[1], scope)}};
      }
      case K::forall: {
        VarId id = bind(scope, f);
        Clause body = to_clause(f.kids[0], scope);
        scope.bindings.pop_back();
        return {Forall{f.y ? VarKind::y : VarKind::x, f.name, id, std::move(body)}};
      }
      case K::exists:
        fail(f.pos, "exists is only allowed in preconditions");
      case K::disj:
        fail(f.pos, "disjunction is only allowed in preconditions");
      case K::negation:
        fail(f.pos, "negation is only allowed in preconditions");
      case K::apply:
        fail(f.pos, "Y(u) is only allowed in preconditions");
    }
    fail(f.pos, "bad clause");
  }

  Program build() {
    program_.lattice = decl_;
    for (const auto& a : decl_.atoms) program_.universe.intern(a);
    for (const auto& t : universe_decl_) {
      check_atom_known(t.text, t.pos);
      program_.universe.intern(t.text);
    }
    auto sigs = builtin_signatures(decl_.kind);
    for (const auto& f : funs_) {
      auto key = std::make_pair(f.name, f.arity);
      if (std::find(sigs.begin(), sigs.end(), key) == sigs.end()) {
        fail(f.pos, "unknown function symbol " + f.name + "/" + std::to_string(f.arity) + " for the " +
                        to_string(decl_.kind) + " lattice");
      }
      if (std::find(program_.functions.begin(), program_.functions.end(), key) == program_.functions.end()) {
        program_.functions.push_back(key);
      }
    }
    for (const auto& r : rels_) {
      if (program_.find_predicate(r.name)) {
        predicate(r.name, r.arity, r.pos);
      } else {
        program_.predicates.push_back({r.name, r.arity, 0});
      }
    }
    for (const auto& f : facts_) {
      Fact fact;
      fact.pred = predicate(f.pred, f.args.size(), f.pos);
      for (const auto& t : f.args) {
        check_atom_known(t.text, t.pos);
        fact.args.push_back(program_.universe.intern(t.text));
      }
      check_literal(f.value, f.value_pos);
      fact.value = f.value;
      program_.facts.push_back(std::move(fact));
    }
    for (const auto& raw : strata_) {
      StratumScope scope;
      Clause cl = to_clause(raw, scope);
      program_.strata.push_back({std::move(cl), scope.num_x, scope.num_y});
    }
    return std::move(program_);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;

  LatticeDecl decl_;
  std::vector<RawDecl> rels_;
  std::vector<RawDecl> funs_;
  std::vector<RawTerm> universe_decl_;
  std::vector<RawFact> facts_;
  std::vector<RawFormula> strata_;
  Program program_;
};

// ---- printing -----------------------------------------------------------

// Binding strength: quantifier 0, => 1, | 2, & 3, atoms 4.
constexpr int kQuant = 0;
constexpr int kImpl = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kAtom = 4;

class Printer {
 public:
  explicit Printer(const Program& p) : program_(p) {}

  std::string term(const Term& t) const { return t.name; }

  std::string lterm(const LatticeTerm& v) const {
    struct Visit {
      const Printer& self;
      std::string operator()(const YVar& y) const { return y.name; }
      std::string operator()(const Repr& r) const { return "[" + self.term(r.term) + "]"; }
      std::string operator()(const Lit& l) const { return l.value.to_string(); }
      std::string operator()(const FnApp& f) const {
        std::string out = f.name + "(";
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ",";
          out += self.lterm(f.args[i]);
        }
        return out + ")";
      }
    };
    return std::visit(Visit{*this}, v.node);
  }

  std::string atom(PredId pred, const std::vector<Term>& args, const LatticeTerm& v) const {
    std::string out = program_.predicates[pred].name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += term(args[i]);
    }
    return out + ";" + lterm(v) + ")";
  }

  static std::string wrap(const std::string& s, int level, int need) { return level < need ? "(" + s + ")" : s; }

  static std::string quant_head(bool forall, VarKind kind, const std::string& name) {
    (void)kind;
    return std::string(forall ? "forall " : "exists ") + name + ". ";
  }

  std::pair<std::string, int> pre(const Pre& p) const {
    struct Visit {
      const Printer& self;
      std::pair<std::string, int> operator()(const Query& q) const {
        return {(q.negated ? "!" : "") + self.atom(q.pred, q.args, q.value), kAtom};
      }
      std::pair<std::string, int> operator()(const Apply& a) const {
        return {a.y.name + "(" + self.term(a.arg) + ")", kAtom};
      }
      std::pair<std::string, int> operator()(const PreAnd& a) const {
        return {self.pre_at(*a.lhs, kAnd) + " & " + self.pre_at(*a.rhs, kAtom), kAnd};
      }
      std::pair<std::string, int> operator()(const PreOr& o) const {
        return {self.pre_at(*o.lhs, kOr) + " | " + self.pre_at(*o.rhs, kAnd), kOr};
      }
      std::pair<std::string, int> operator()(const Exists& e) const {
        return {quant_head(false, e.kind, e.name) + self.pre_at(*e.body, kQuant), kQuant};
      }
    };
    return std::visit(Visit{*this}, p.node);
  }

  std::string pre_at(const Pre& p, int need) const {
    auto [s, level] = pre(p);
    return wrap(s, level, need);
  }

  std::pair<std::string, int> clause(const Clause& c) const {
    struct Visit {
      const Printer& self;
      std::pair<std::string, int> operator()(const Assert& a) const {
        return {self.atom(a.pred, a.args, a.value), kAtom};
      }
      std::pair<std::string, int> operator()(const True&) const { return {"1", kAtom}; }
      std::pair<std::string, int> operator()(const ClauseAnd& a) const {
        return {self.clause_at(*a.lhs, kAnd) + " & " + self.clause_at(*a.rhs, kAtom), kAnd};
      }
      std::pair<std::string, int> operator()(const Imply& i) const {
        return {self.pre_at(*i.pre, kOr) + " => " + self.clause_at(*i.body, kQuant), kImpl};
      }
      std::pair<std::string, int> operator()(const Forall& f) const {
        return {quant_head(true, f.kind, f.name) + self.clause_at(*f.body, kQuant), kQuant};
      }
    };
    return std::visit(Visit{*this}, c.node);
  }

  std::string clause_at(const Clause& c, int need) const {
    auto [s, level] = clause(c);
    return wrap(s, level, need);
  }

 private:
  const Program& program_;
};

std::string lattice_decl_text(const LatticeDecl& d) {
  switch (d.kind) {
    case LatticeKind::powerset: {
      std::string out = "lattice powerset {";
      for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        if (i) out += ",";
        out += d.atoms[i];
      }
      return out + "}";
    }
    case LatticeKind::signs:
      return "lattice signs";
    case LatticeKind::interval:
      return "lattice interval zmin=" + std::to_string(d.zmin) + " zmax=" + std::to_string(d.zmax);
  }
  return "";
}

}  // namespace

Program parse_program(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

std::string print_clause(const Program& program, const Clause& clause) {
  return Printer(program).clause_at(clause, kQuant);
}

std::string print_pre(const Program& program, const Pre& pre) { return Printer(program).pre_at(pre, kQuant); }

std::string print_program(const Program& program) {
  std::string out = lattice_decl_text(program.lattice) + "\n";
  if (program.universe.size() > 0) {
    out += "universe ";
    for (std::size_t i = 0; i < program.universe.size(); ++i) {
      if (i) out += ", ";
      out += program.universe.name(static_cast<AtomId>(i));
    }
    out += "\n";
  }
  for (const auto& p : program.predicates) out += "rel " + p.name + "/" + std::to_string(p.arity) + "\n";
  for (const auto& [name, arity] : program.functions) out += "fun " + name + "/" + std::to_string(arity) + "\n";
  for (const auto& f : program.facts) {
    out += "fact " + program.predicates[f.pred].name + "(";
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i) out += ",";
      out += program.universe.name(f.args[i]);
    }
    out += ") = " + f.value.to_string() + "\n";
  }
  for (const auto& s : program.strata) out += "clause " + print_clause(program, s.clause) + "\n";
  return out;
}

}  // namespace llfp
