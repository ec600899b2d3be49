#include "llfp/oracle/generator.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "llfp/driver/driver.hpp"
#include "llfp/oracle/alfp.hpp"

namespace llfp {

namespace {

struct PredSpec {
  std::string name;
  std::size_t arity;
  std::size_t rank;
};

class TextGenerator {
 public:
  TextGenerator(Rng& rng, const GeneratorOptions& options) : rng_(rng), opt_(options) {}

  std::string build() {
    choose_lattice();
    std::string out = lattice_line_ + "\nuniverse ";
    for (std::size_t i = 0; i < universe_.size(); ++i) out += (i ? ", " : "") + universe_[i];
    out += "\n";

    strata_ = 1 + pick(opt_.max_strata);
    const std::size_t npreds = 1 + pick(2);
    const char* names[] = {"R", "S"};
    for (std::size_t k = 0; k < npreds; ++k) {
      std::size_t arity = pick(7);
      arity = arity == 0 ? 0 : arity <= 4 ? 1 : 2;
      preds_.push_back({names[k], arity, pick(strata_ + 1)});
    }
    if (preds_.back().rank == 0 && preds_.front().rank == 0) preds_.back().rank = 1 + pick(strata_);
    for (const auto& p : preds_) out += "rel " + p.name + "/" + std::to_string(p.arity) + "\n";

    for (const auto& p : preds_) {
      if (p.rank != 0) continue;
      for (std::size_t n = pick(3); n > 0; --n) {
        out += "fact " + p.name + "(";
        for (std::size_t i = 0; i < p.arity; ++i) out += (i ? "," : "") + universe_[pick(universe_.size())];
        out += ") = " + literal(false) + "\n";
      }
    }

    out += "clause ";
    for (std::size_t i = 1; i <= strata_; ++i) {
      if (i > 1) out += ",\n  ";
      out += stratum(i);
    }
    return out + "\n";
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  void choose_lattice() {
    std::size_t choice = opt_.alfp_fragment ? pick(2) : pick(4);
    switch (choice) {
      case 0:
        kind_ = LatticeKind::powerset;
        universe_ = {"a", "b"};
        lattice_line_ = "lattice powerset {a,b}";
        break;
      case 1:
        kind_ = LatticeKind::powerset;
        universe_ = {"a", "b", "c"};
        lattice_line_ = "lattice powerset {a,b,c}";
        break;
      case 2:
        kind_ = LatticeKind::signs;
        universe_ = {"0", "1"};
        lattice_line_ = "lattice signs";
        break;
      default:
        kind_ = LatticeKind::interval;
        universe_ = {"0", "a"};
        lattice_line_ = "lattice interval zmin=0 zmax=0";
        break;
    }
  }

  std::string literal(bool in_query) {
    std::vector<std::string> forms;
    switch (kind_) {
      case LatticeKind::powerset:
        for (const auto& a : universe_) forms.push_back("{" + a + "}");
        if (!(in_query && opt_.alfp_fragment)) {
          forms.push_back("{" + universe_[0] + "," + universe_[1] + "}");
          forms.push_back("top");
        }
        forms.push_back("bot");
        break;
      case LatticeKind::signs:
        forms = {"{+}", "{0}", "{-}", "{-,0}", "top", "bot"};
        break;
      case LatticeKind::interval:
        forms = {"[0,0]", "[0,inf]", "[-inf,0]", "top", "bot"};
        break;
    }
    return forms[pick(forms.size())];
  }

  std::string function_name() {
    static const std::vector<std::string> powerset = {"union", "inter"};
    static const std::vector<std::string> signs = {"s_add", "s_sub", "s_mul"};
    static const std::vector<std::string> interval = {"f_add", "f_sub", "f_mul"};
    const auto& names = kind_ == LatticeKind::powerset ? powerset : kind_ == LatticeKind::signs ? signs : interval;
    return names[pick(names.size())];
  }

  /// A term over the clause's x variables and the universe.
  std::string term() {
    if (coin(0.7)) {
      std::string v = xvars_[pick(xvars_.size())];
      used_x_.insert(v);
      return v;
    }
    return universe_[pick(universe_.size())];
  }

  std::string args(std::size_t arity, const std::string& forced = "") {
    std::string out;
    for (std::size_t i = 0; i < arity; ++i) {
      out += (i ? "," : "");
      out += (!forced.empty() && i == 0) ? forced : term();
    }
    return out;
  }

  std::string query_value(bool allow_y) {
    std::size_t c = pick(3);
    if (c == 0 && allow_y) {
      used_y_ = true;
      return "'Y";
    }
    if (c == 1) return "[" + term() + "]";
    return literal(true);
  }

  std::string query(std::size_t stratum, const std::string& forced = "") {
    std::vector<const PredSpec*> pos;
    std::vector<const PredSpec*> neg;
    for (const auto& p : preds_) {
      if (p.rank <= stratum) pos.push_back(&p);
      if (p.rank < stratum && kind_ != LatticeKind::interval) neg.push_back(&p);
    }
    bool negated = !neg.empty() && coin(0.5);
    const PredSpec* p = negated ? neg[pick(neg.size())] : pos[pick(pos.size())];
    if (!forced.empty() && p->arity == 0) forced_missed_ = true;
    return std::string(negated ? "!" : "") + p->name + "(" + args(p->arity, forced) + ";" + query_value(true) + ")";
  }

  std::string precondition_part(std::size_t stratum) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.15) return "(" + query(stratum) + " | " + query(stratum) + ")";
    if (r < 0.3) {
      forced_missed_ = false;
      std::string body = query(stratum, "w");
      if (!forced_missed_) return "(exists w. " + body + ")";
      return body;
    }
    return query(stratum);
  }

  std::string assert_value(int depth) {
    std::size_t c = pick(opt_.alfp_fragment || depth > 1 ? 3 : 4);
    if (c == 0 && y_in_scope_) {
      used_y_ = true;
      return "'Y";
    }
    if (c == 1) return "[" + term() + "]";
    if (c == 3) return function_name() + "(" + assert_value(depth + 1) + "," + assert_value(depth + 1) + ")";
    return literal(false);
  }

  std::string rule(std::size_t stratum) {
    std::vector<const PredSpec*> targets;
    for (const auto& p : preds_) {
      if (p.rank == stratum) targets.push_back(&p);
    }
    const PredSpec* target = targets[pick(targets.size())];
    xvars_ = coin(0.5) ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "z"};
    used_x_.clear();
    used_y_ = false;

    std::string pre;
    bool has_pre = coin(0.85);
    if (has_pre) {
      pre = precondition_part(stratum);
      if (coin(0.5)) pre += " & " + precondition_part(stratum);
      if (!opt_.alfp_fragment && used_y_ && coin(0.3)) pre = "'Y(" + term() + ") & " + pre;
    }
    y_in_scope_ = used_y_ || coin(0.2);
    std::string head = target->name + "(" + args(target->arity) + ";" + assert_value(0) + ")";
    std::string body = has_pre ? "(" + pre + " => " + head + ")" : head;
    if (y_in_scope_ || used_y_) body = "forall 'Y. " + body;
    for (auto it = used_x_.rbegin(); it != used_x_.rend(); ++it) body = "forall " + *it + ". " + body;
    return "(" + body + ")";
  }

  std::string stratum(std::size_t i) {
    bool any = false;
    for (const auto& p : preds_) any = any || p.rank == i;
    if (!any) return "1";
    std::string out = rule(i);
    if (coin(0.5)) out += " & " + rule(i);
    return out;
  }

  Rng& rng_;
  const GeneratorOptions& opt_;
  LatticeKind kind_ = LatticeKind::powerset;
  std::vector<std::string> universe_;
  std::string lattice_line_;
  std::size_t strata_ = 1;
  std::vector<PredSpec> preds_;
  std::vector<std::string> xvars_;
  std::set<std::string> used_x_;
  bool used_y_ = false;
  bool y_in_scope_ = false;
  bool forced_missed_ = false;
};

}  // namespace

std::size_t candidate_space(const Program& program) {
  return with_lattice(program.lattice, [&](const auto& lattice, const auto&) -> std::size_t {
    auto elems = lattice.elements();
    if (!elems) return static_cast<std::size_t>(-1);
    std::size_t product = 1;
    for (const auto& p : program.predicates) {
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < p.arity; ++i) tuples *= program.universe.size();
      for (std::size_t t = 0; t < tuples; ++t) {
        if (product > (static_cast<std::size_t>(-1) / elems->size())) return static_cast<std::size_t>(-1);
        product *= elems->size();
      }
    }
    return product;
  });
}

GeneratedInstance generate_instance(std::uint64_t seed, const GeneratorOptions& options) {
  Rng rng(seed);
  for (std::size_t attempt = 1; attempt <= 10000; ++attempt) {
    TextGenerator gen(rng, options);
    std::string text = gen.build();
    try {
      Program p = load_program(text);
      if (candidate_space(p) > options.max_candidates) continue;
      if (options.alfp_fragment && !in_alfp_fragment(p)) continue;
      return {std::move(text), std::move(p), attempt};
    } catch (const std::exception&) {
      continue;
    }
  }
  throw std::runtime_error("no acceptable instance for seed " + std::to_string(seed));
}

}  // namespace llfp
