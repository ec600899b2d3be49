#include "llfp/frontend/program_graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace llfp {

namespace {

const std::set<std::string, std::less<>> kReserved = {"lattice", "rel",    "fun", "universe", "fact", "clause",
                                                      "forall",  "exists", "bot", "top",      "inf",  "zmin",
                                                      "zmax",    "powerset", "signs", "interval"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Tokens of an action: identifiers, integers (with an optional leading
/// minus where an operand is expected), and operator symbols.
class ActionLexer {
 public:
  ActionLexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view sym) {
    skip_space();
    if (text_.substr(pos_, sym.size()) != sym) return false;
    pos_ += sym.size();
    return true;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Operand operand() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto v = parse_integer_atom(text_.substr(start, pos_ - start));
      if (!v) fail("integer literal out of range");
      return Operand{*v, ""};
    }
    pos_ = start;
    std::string w = word();
    if (!is_identifier(w)) fail("bad operand " + w);
    return Operand{std::nullopt, w};
  }

  [[noreturn]] void fail(const std::string& msg) const { throw GraphError(line_, msg); }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

Action parse_action(std::string_view text, std::size_t line) {
  ActionLexer lex(text, line);
  if (lex.accept("skip")) {
    if (!lex.done()) lex.fail("unexpected text after skip");
    return SkipAction{};
  }
  if (lex.accept("test")) {
    TestAction t;
    if (lex.accept("true")) {
      t.constant = true;
    } else if (lex.accept("false")) {
      t.constant = false;
    } else {
      t.lhs = lex.operand();
      for (const char* op : {"<=", ">=", "==", "!=", "<", ">"}) {
        if (lex.accept(op)) {
          t.relop = op;
          break;
        }
      }
      if (t.relop.empty()) lex.fail("expected a comparison operator");
      t.rhs = lex.operand();
    }
    if (!lex.done()) lex.fail("unexpected text after test");
    return t;
  }
  AssignAction a;
  a.target = lex.word();
  if (!lex.accept(":=")) lex.fail("expected ':=', 'test' or 'skip'");
  a.lhs = lex.operand();
  if (!lex.done()) {
    if (lex.accept("+")) {
      a.op = ArithOp::add;
    } else if (lex.accept("-")) {
      a.op = ArithOp::sub;
    } else if (lex.accept("*")) {
      a.op = ArithOp::mul;
    } else {
      lex.fail("expected +, - or *");
    }
    a.rhs = lex.operand();
    if (!lex.done()) lex.fail("assignments are three-address: x := y op z");
  }
  return a;
}

const char* op_symbol(ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return "+";
    case ArithOp::sub:
      return "-";
    case ArithOp::mul:
      return "*";
  }
  return "?";
}

std::string fresh_name(const ProgramGraph& g, std::string base) {
  auto taken = [&](const std::string& n) {
    return std::find(g.states.begin(), g.states.end(), n) != g.states.end() ||
           std::find(g.variables.begin(), g.variables.end(), n) != g.variables.end();
  };
  while (taken(base)) base += "_";
  return base;
}

/// Shared shape of both analyses; only lattice constants and function
/// names differ.
struct ClauseStyle {
  std::string lattice_line;
  std::function<std::string(std::int64_t)> constant;
  std::function<std::string(ArithOp)> function;
};

std::string gen_clauses(const ProgramGraph& g, const ClauseStyle& style) {
  std::string out = style.lattice_line + "\nuniverse ";
  bool first = true;
  for (const auto& s : g.states) {
    out += (first ? "" : ", ") + s;
    first = false;
  }
  for (const auto& v : g.variables) out += ", " + v;
  out += "\nrel A/2\n";

  std::vector<std::string> parts;
  for (const auto& v : g.variables) parts.push_back("A(" + g.initial + "," + v + ";top)");
  const std::string v = fresh_name(g, "v");
  auto propagate = [&](const std::string& qs, const std::string& qt, const std::string& var) {
    return "(forall 'I. A(" + qs + "," + var + ";'I) => A(" + qt + "," + var + ";'I))";
  };
  for (const auto& e : g.edges) {
    const auto& qs = e.source;
    const auto& qt = e.target;
    if (const auto* a = std::get_if<AssignAction>(&e.action)) {
      std::vector<std::string> binders;
      std::vector<std::string> queries;
      auto value_of = [&](const Operand& o) -> std::string {
        if (o.literal) return style.constant(*o.literal);
        std::string y = "'I" + std::to_string(binders.size() + 1);
        binders.push_back(y);
        queries.push_back("A(" + qs + "," + o.var + ";" + y + ")");
        return y;
      };
      std::string value = value_of(a->lhs);
      if (a->op) value = style.function(*a->op) + "(" + value + "," + value_of(a->rhs) + ")";
      if (queries.empty()) {
        // Only reachability of qs matters; any variable witnesses it.
        binders.push_back("'R");
        queries.push_back("A(" + qs + "," + a->target + ";'R)");
      }
      std::string clause = "(";
      for (const auto& b : binders) clause += "forall " + b + ". ";
      for (std::size_t i = 0; i < queries.size(); ++i) clause += (i ? " & " : "") + queries[i];
      clause += " => A(" + qt + "," + a->target + ";" + value + "))";
      parts.push_back(clause);
      for (const auto& other : g.variables) {
        if (other != a->target) parts.push_back(propagate(qs, qt, other));
      }
    } else {
      parts.push_back("(forall " + v + ". forall 'I. A(" + qs + "," + v + ";'I) => A(" + qt + "," + v + ";'I))");
    }
  }
  out += "clause ";
  if (parts.empty()) return out + "1\n";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " &\n  " : "") + parts[i];
  return out + "\n";
}

std::optional<std::int64_t> checked(ArithOp op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case ArithOp::add:
      overflow = __builtin_add_overflow(a, b, &r);
      break;
    case ArithOp::sub:
      overflow = __builtin_sub_overflow(a, b, &r);
      break;
    case ArithOp::mul:
      overflow = __builtin_mul_overflow(a, b, &r);
      break;
  }
  if (overflow) return std::nullopt;
  return r;
}

}  // namespace

GraphError::GraphError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string Operand::to_string() const { return literal ? std::to_string(*literal) : var; }

std::string action_to_string(const Action& action) {
  if (std::holds_alternative<SkipAction>(action)) return "skip";
  if (const auto* t = std::get_if<TestAction>(&action)) {
    if (t->constant) return *t->constant ? "test true" : "test false";
    return "test " + t->lhs.to_string() + " " + t->relop + " " + t->rhs.to_string();
  }
  const auto& a = std::get<AssignAction>(action);
  std::string out = a.target + " := " + a.lhs.to_string();
  if (a.op) out += std::string(" ") + op_symbol(*a.op) + " " + a.rhs.to_string();
  return out;
}

ProgramGraph parse_program_graph(std::string_view text) {
  ProgramGraph g;
  struct PendingEdge {
    std::size_t line;
    GraphEdge edge;
  };
  std::vector<PendingEdge> pending;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto c = line.find('#'); c != std::string_view::npos) line = line.substr(0, c);
    if (auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;

    auto declare = [&](std::vector<std::string>& into, std::string_view rest, const char* what) {
      std::string name(trim(rest));
      if (!is_identifier(name)) throw GraphError(line_no, std::string("bad ") + what + " name '" + name + "'");
      if (kReserved.contains(name)) throw GraphError(line_no, "reserved word '" + name + "' used as a name");
      if (std::find(g.states.begin(), g.states.end(), name) != g.states.end() ||
          std::find(g.variables.begin(), g.variables.end(), name) != g.variables.end()) {
        throw GraphError(line_no, "duplicate name " + name);
      }
      into.push_back(name);
    };

    if (line.starts_with("state ")) {
      declare(g.states, line.substr(6), "state");
    } else if (line.starts_with("var ")) {
      declare(g.variables, line.substr(4), "variable");
    } else if (line.starts_with("initial ")) {
      if (!g.initial.empty()) throw GraphError(line_no, "initial state given twice");
      g.initial = std::string(trim(line.substr(8)));
      if (std::find(g.states.begin(), g.states.end(), g.initial) == g.states.end()) {
        declare(g.states, g.initial, "state");
      }
    } else {
      auto arrow = line.find("->");
      auto colon = line.find(':', arrow == std::string_view::npos ? 0 : arrow);
      if (arrow == std::string_view::npos || colon == std::string_view::npos) {
        throw GraphError(line_no, "expected 'state', 'var', 'initial' or an edge 'qs -> qt : action'");
      }
      GraphEdge e;
      e.source = std::string(trim(line.substr(0, arrow)));
      e.target = std::string(trim(line.substr(arrow + 2, colon - arrow - 2)));
      e.action = parse_action(line.substr(colon + 1), line_no);
      pending.push_back({line_no, std::move(e)});
    }
  }
  if (g.initial.empty()) throw GraphError(line_no, "no initial state");

  auto known_state = [&](const std::string& s) { return std::find(g.states.begin(), g.states.end(), s) != g.states.end(); };
  auto known_var = [&](const std::string& v) {
    return std::find(g.variables.begin(), g.variables.end(), v) != g.variables.end();
  };
  for (auto& [line, e] : pending) {
    if (!known_state(e.source)) throw GraphError(line, "unknown state " + e.source);
    if (!known_state(e.target)) throw GraphError(line, "unknown state " + e.target);
    auto check_operand = [&](const Operand& o) {
      if (!o.literal && !known_var(o.var)) throw GraphError(line, "unknown variable " + o.var);
    };
    if (const auto* a = std::get_if<AssignAction>(&e.action)) {
      if (!known_var(a->target)) throw GraphError(line, "unknown variable " + a->target);
      check_operand(a->lhs);
      if (a->op) check_operand(a->rhs);
    } else if (const auto* t = std::get_if<TestAction>(&e.action); t && !t->constant) {
      check_operand(t->lhs);
      check_operand(t->rhs);
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::vector<std::int64_t> graph_literals(const ProgramGraph& graph) {
  std::vector<std::int64_t> out;
  auto note = [&](const Operand& o) {
    if (o.literal) out.push_back(*o.literal);
  };
  for (const auto& e : graph.edges) {
    if (const auto* a = std::get_if<AssignAction>(&e.action)) {
      note(a->lhs);
      if (a->op) note(a->rhs);
    } else if (const auto* t = std::get_if<TestAction>(&e.action); t && !t->constant) {
      note(t->lhs);
      note(t->rhs);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<std::int64_t, std::int64_t> interval_range(const ProgramGraph& graph, const IntervalOptions& options) {
  std::int64_t lo = -options.bound;
  std::int64_t hi = options.bound;
  for (auto n : graph_literals(graph)) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  if (options.zmin) lo = *options.zmin;
  if (options.zmax) hi = *options.zmax;
  if (lo > hi) throw GraphError(0, "empty integer range: zmin > zmax");
  return {lo, hi};
}

std::string gen_interval_clauses(const ProgramGraph& graph, const IntervalOptions& options) {
  auto [lo, hi] = interval_range(graph, options);
  ClauseStyle style;
  style.lattice_line = "lattice interval zmin=" + std::to_string(lo) + " zmax=" + std::to_string(hi);
  style.constant = [](std::int64_t n) { return "[" + std::to_string(n) + "," + std::to_string(n) + "]"; };
  style.function = [](ArithOp op) {
    return op == ArithOp::add ? "f_add" : op == ArithOp::sub ? "f_sub" : "f_mul";
  };
  return gen_clauses(graph, style);
}

std::string gen_sign_clauses(const ProgramGraph& graph) {
  ClauseStyle style;
  style.lattice_line = "lattice signs";
  style.constant = [](std::int64_t n) { return n < 0 ? "{-}" : n == 0 ? "{0}" : "{+}"; };
  style.function = [](ArithOp op) {
    return op == ArithOp::add ? "s_add" : op == ArithOp::sub ? "s_sub" : "s_mul";
  };
  return gen_clauses(graph, style);
}

SignSet sign_of(const Interval& interval) {
  if (interval.bottom) return SignSet(0);
  std::uint8_t bits = 0;
  if (interval.lo < ExtInt(0)) bits |= SignSet::neg;
  if (interval.lo <= ExtInt(0) && ExtInt(0) <= interval.hi) bits |= SignSet::zero;
  if (interval.hi > ExtInt(0)) bits |= SignSet::pos;
  return SignSet(bits);
}

ConcreteRun run_concrete(const ProgramGraph& graph, Rng& rng, std::size_t max_steps,
                         const std::function<void(const std::string&, const std::map<std::string, std::int64_t>&)>& visit,
                         std::int64_t init_lo, std::int64_t init_hi) {
  std::map<std::string, std::int64_t> values;
  std::uniform_int_distribution<std::int64_t> init(init_lo, init_hi);
  for (const auto& v : graph.variables) values[v] = init(rng);
  std::string state = graph.initial;
  visit(state, values);

  auto read = [&](const Operand& o) { return o.literal ? *o.literal : values.at(o.var); };
  auto holds = [&](const TestAction& t) {
    if (t.constant) return *t.constant;
    std::int64_t a = read(t.lhs);
    std::int64_t b = read(t.rhs);
    if (t.relop == "<") return a < b;
    if (t.relop == "<=") return a <= b;
    if (t.relop == ">") return a > b;
    if (t.relop == ">=") return a >= b;
    if (t.relop == "==") return a == b;
    return a != b;
  };

  ConcreteRun run;
  for (; run.steps < max_steps; ++run.steps) {
    std::vector<const GraphEdge*> enabled;
    for (const auto& e : graph.edges) {
      if (e.source != state) continue;
      if (const auto* t = std::get_if<TestAction>(&e.action); t && !holds(*t)) continue;
      enabled.push_back(&e);
    }
    if (enabled.empty()) {
      run.stuck = true;
      break;
    }
    const GraphEdge& e = *enabled[std::uniform_int_distribution<std::size_t>(0, enabled.size() - 1)(rng)];
    if (const auto* a = std::get_if<AssignAction>(&e.action)) {
      std::optional<std::int64_t> v = read(a->lhs);
      if (a->op) v = checked(*a->op, *v, read(a->rhs));
      if (!v) {
        run.overflow = true;
        break;
      }
      values[a->target] = *v;
    }
    state = e.target;
    visit(state, values);
  }
  return run;
}

}  // namespace llfp
