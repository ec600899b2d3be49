#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llfp/lattice/lattice.hpp"

namespace llfp {

/// Bottom, or [lo, hi] with lo in Z u {-inf}, hi in Z u {+inf}, lo <= hi.
/// Only IntervalLattice::make builds non-bottom values with endpoints in Z'.
struct Interval {
  bool bottom = true;
  ExtInt lo;
  ExtInt hi;

  static Interval empty() { return {}; }
  static Interval unchecked(ExtInt lo, ExtInt hi) { return {false, lo, hi}; }

  auto operator<=>(const Interval&) const = default;
};

enum class ArithOp { add, sub, mul };

namespace interval {

/// +inf for bottom, else lo.
ExtInt inf(const Interval& i);
/// -inf for bottom, else hi.
ExtInt sup(const Interval& i);
/// inf(b) <= inf(a) and sup(a) <= sup(b).
bool leq(const Interval& a, const Interval& b);
Interval join(const Interval& a, const Interval& b);
Interval meet(const Interval& a, const Interval& b);
/// Endpoint arithmetic without snapping; bottom if either side is bottom.
Interval arith_raw(ArithOp op, const Interval& a, const Interval& b);

}  // namespace interval

/// The interval lattice over a finite integer set Z.
class IntervalLattice {
 public:
  using value_type = Interval;

  /// Throws LatticeError if z is empty.
  explicit IntervalLattice(std::vector<std::int64_t> z);
  static IntervalLattice range(std::int64_t zmin, std::int64_t zmax);

  std::string name() const { return "interval"; }
  const std::vector<std::int64_t>& z() const { return z_; }

  /// Snaps outward into Z': lo down to the largest z <= lo (else -inf), hi up
  /// to the smallest z >= hi (else +inf). Bottom when lo > hi.
  Interval make(ExtInt lo, ExtInt hi) const;
  Interval point(std::int64_t n) const { return make(n, n); }

  value_type bottom() const { return Interval::empty(); }
  value_type top() const { return Interval::unchecked(ExtInt::neg_inf(), ExtInt::pos_inf()); }
  bool leq(const value_type& a, const value_type& b) const { return interval::leq(a, b); }
  value_type join(const value_type& a, const value_type& b) const { return interval::join(a, b); }
  value_type meet(const value_type& a, const value_type& b) const { return interval::meet(a, b); }
  bool has_complement() const { return false; }
  /// Always throws: intervals carry no complement.
  value_type complement(const value_type& a) const;
  /// Integer atoms map to their snapped point interval, anything else to top.
  value_type beta(std::string_view atom) const;

  value_type arith(ArithOp op, const Interval& a, const Interval& b) const;

  value_type from_literal(const LatticeLiteral& lit) const;
  std::string to_literal(const value_type& v) const;

  std::optional<std::vector<value_type>> elements() const;
  value_type random_element(Rng& rng) const;

 private:
  std::vector<std::int64_t> z_;
};

/// Parses a decimal integer atom, e.g. "-12". Nullopt for anything else.
std::optional<std::int64_t> parse_integer_atom(std::string_view atom);

}  // namespace llfp
