#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace llfp {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer extended with -inf and +inf. Ordering: -inf < every finite < +inf.
class ExtInt {
 public:
  enum class Kind : std::uint8_t { neg_inf = 0, finite = 1, pos_inf = 2 };

  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : kind_(Kind::finite), value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtInt neg_inf() { return ExtInt(Kind::neg_inf); }
  static constexpr ExtInt pos_inf() { return ExtInt(Kind::pos_inf); }

  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr Kind kind() const { return kind_; }
  constexpr std::int64_t value() const { return value_; }

  constexpr auto operator<=>(const ExtInt&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit ExtInt(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  std::int64_t value_ = 0;
};

ExtInt ext_add(ExtInt a, ExtInt b);
ExtInt ext_neg(ExtInt a);
/// 0 * +-inf is 0; finite overflow saturates to the matching infinity.
ExtInt ext_mul(ExtInt a, ExtInt b);

/// Lattice constant as written in clause text, before a lattice resolves it.
struct LatticeLiteral {
  struct Bottom {
    auto operator<=>(const Bottom&) const = default;
  };
  struct Top {
    auto operator<=>(const Top&) const = default;
  };
  struct Set {
    std::vector<std::string> atoms;
    auto operator<=>(const Set&) const = default;
  };
  struct Range {
    ExtInt lo;
    ExtInt hi;
    auto operator<=>(const Range&) const = default;
  };

  std::variant<Bottom, Top, Set, Range> form;

  bool operator==(const LatticeLiteral&) const = default;
  std::string to_string() const;
};

using Rng = std::mt19937_64;

/// Requirements shared by every lattice the solver and oracle are instantiated with.
///
/// `elements()` returns nullopt when the carrier is too large to enumerate;
/// the oracle and exhaustive monotonicity validation need it.
template <typename L>
concept complete_lattice =
    std::totally_ordered<typename L::value_type> && std::copyable<typename L::value_type> &&
    requires(const L& lat, const typename L::value_type& a, const typename L::value_type& b,
             std::string_view atom, const LatticeLiteral& lit, Rng& rng) {
      { lat.name() } -> std::convertible_to<std::string>;
      { lat.bottom() } -> std::same_as<typename L::value_type>;
      { lat.top() } -> std::same_as<typename L::value_type>;
      { lat.leq(a, b) } -> std::same_as<bool>;
      { lat.join(a, b) } -> std::same_as<typename L::value_type>;
      { lat.meet(a, b) } -> std::same_as<typename L::value_type>;
      { lat.has_complement() } -> std::same_as<bool>;
      { lat.complement(a) } -> std::same_as<typename L::value_type>;
      { lat.beta(atom) } -> std::same_as<typename L::value_type>;
      { lat.from_literal(lit) } -> std::same_as<typename L::value_type>;
      { lat.to_literal(a) } -> std::same_as<std::string>;
      { lat.elements() } -> std::same_as<std::optional<std::vector<typename L::value_type>>>;
      { lat.random_element(rng) } -> std::same_as<typename L::value_type>;
    };

}  // namespace llfp
