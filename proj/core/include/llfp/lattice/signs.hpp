#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llfp/lattice/lattice.hpp"

namespace llfp {

/// Subset of {-, 0, +}.
class SignSet {
 public:
  static constexpr std::uint8_t neg = 1;
  static constexpr std::uint8_t zero = 2;
  static constexpr std::uint8_t pos = 4;
  static constexpr std::uint8_t all = neg | zero | pos;

  constexpr SignSet() = default;
  constexpr explicit SignSet(std::uint8_t bits) : bits_(bits & all) {}

  static SignSet of(std::int64_t n) { return SignSet(n < 0 ? neg : n == 0 ? zero : pos); }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool has(std::uint8_t sign) const { return (bits_ & sign) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr auto operator<=>(const SignSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// The detection-of-signs lattice: P({-, 0, +}) with beta mapping an integer
/// atom to its sign. Non-integer atoms (states, variable names) map to top.
class SignLattice {
 public:
  using value_type = SignSet;

  std::string name() const { return "signs"; }

  value_type bottom() const { return SignSet(0); }
  value_type top() const { return SignSet(SignSet::all); }
  bool leq(value_type a, value_type b) const { return (a.bits() & ~b.bits()) == 0; }
  value_type join(value_type a, value_type b) const { return SignSet(a.bits() | b.bits()); }
  value_type meet(value_type a, value_type b) const { return SignSet(a.bits() & b.bits()); }
  bool has_complement() const { return true; }
  value_type complement(value_type a) const { return SignSet(~a.bits() & SignSet::all); }
  value_type beta(std::string_view atom) const;

  value_type from_literal(const LatticeLiteral& lit) const;
  std::string to_literal(value_type v) const;

  std::optional<std::vector<value_type>> elements() const;
  value_type random_element(Rng& rng) const;
};

/// Sign transfer functions: the smallest sign set covering every
/// n1 op n2 with sign(n1) in a, sign(n2) in b. Strict in bottom.
SignSet sign_add(SignSet a, SignSet b);
SignSet sign_sub(SignSet a, SignSet b);
SignSet sign_mul(SignSet a, SignSet b);

}  // namespace llfp
