#include "llfp/lattice/signs.hpp"

#include <array>

#include "llfp/lattice/interval.hpp"

namespace llfp {

SignSet SignLattice::beta(std::string_view atom) const {
  if (auto n = parse_integer_atom(atom)) return SignSet::of(*n);
  return top();
}

SignSet SignLattice::from_literal(const LatticeLiteral& lit) const {
  if (std::holds_alternative<LatticeLiteral::Bottom>(lit.form)) return bottom();
  if (std::holds_alternative<LatticeLiteral::Top>(lit.form)) return top();
  if (const auto* set = std::get_if<LatticeLiteral::Set>(&lit.form)) {
    std::uint8_t bits = 0;
    for (const auto& a : set->atoms) {
      if (a == "-") {
        bits |= SignSet::neg;
      } else if (a == "0") {
        bits |= SignSet::zero;
      } else if (a == "+") {
        bits |= SignSet::pos;
      } else {
        throw LatticeError("unknown sign " + a + " (expected -, 0 or +)");
      }
    }
    return SignSet(bits);
  }
  throw LatticeError("interval literal " + lit.to_string() + " used with the signs lattice");
}

std::string SignLattice::to_literal(SignSet v) const {
  std::string out = "{";
  auto emit = [&](std::uint8_t bit, const char* text) {
    if (!v.has(bit)) return;
    if (out.size() > 1) out += ",";
    out += text;
  };
  emit(SignSet::neg, "-");
  emit(SignSet::zero, "0");
  emit(SignSet::pos, "+");
  return out + "}";
}

std::optional<std::vector<SignSet>> SignLattice::elements() const {
  std::vector<SignSet> out;
  for (std::uint8_t b = 0; b <= SignSet::all; ++b) out.emplace_back(b);
  return out;
}

SignSet SignLattice::random_element(Rng& rng) const {
  std::uniform_int_distribution<int> d(0, SignSet::all);
  return SignSet(static_cast<std::uint8_t>(d(rng)));
}

namespace {

constexpr std::array<std::uint8_t, 3> kSigns{SignSet::neg, SignSet::zero, SignSet::pos};

int as_int(std::uint8_t s) { return s == SignSet::neg ? -1 : (s == SignSet::zero ? 0 : 1); }

std::uint8_t add_table(std::uint8_t a, std::uint8_t b) {
  int x = as_int(a);
  int y = as_int(b);
  if (x == 0) return b;
  if (y == 0) return a;
  if (x == y) return a;
  return SignSet::all;
}

std::uint8_t mul_table(std::uint8_t a, std::uint8_t b) {
  int p = as_int(a) * as_int(b);
  return p < 0 ? SignSet::neg : (p == 0 ? SignSet::zero : SignSet::pos);
}

std::uint8_t negate(std::uint8_t a) {
  if (a == SignSet::neg) return SignSet::pos;
  if (a == SignSet::pos) return SignSet::neg;
  return a;
}

template <class Table>
SignSet lift(SignSet a, SignSet b, Table table) {
  std::uint8_t out = 0;
  for (auto sa : kSigns) {
    if (!a.has(sa)) continue;
    for (auto sb : kSigns) {
      if (b.has(sb)) out |= table(sa, sb);
    }
  }
  return SignSet(out);
}

}  // namespace

SignSet sign_add(SignSet a, SignSet b) { return lift(a, b, add_table); }

SignSet sign_sub(SignSet a, SignSet b) {
  return lift(a, b, [](std::uint8_t x, std::uint8_t y) { return add_table(x, negate(y)); });
}

SignSet sign_mul(SignSet a, SignSet b) { return lift(a, b, mul_table); }

}  // namespace llfp
