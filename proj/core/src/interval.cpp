#include "llfp/lattice/interval.hpp"

#include <algorithm>
#include <charconv>

namespace llfp {

namespace interval {

ExtInt inf(const Interval& i) { return i.bottom ? ExtInt::pos_inf() : i.lo; }

ExtInt sup(const Interval& i) { return i.bottom ? ExtInt::neg_inf() : i.hi; }

bool leq(const Interval& a, const Interval& b) { return inf(b) <= inf(a) && sup(a) <= sup(b); }

Interval join(const Interval& a, const Interval& b) {
  if (a.bottom) return b;
  if (b.bottom) return a;
  return Interval::unchecked(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval meet(const Interval& a, const Interval& b) {
  if (a.bottom || b.bottom) return Interval::empty();
  ExtInt lo = std::max(a.lo, b.lo);
  ExtInt hi = std::min(a.hi, b.hi);
  if (lo > hi) return Interval::empty();
  return Interval::unchecked(lo, hi);
}

Interval arith_raw(ArithOp op, const Interval& a, const Interval& b) {
  if (a.bottom || b.bottom) return Interval::empty();
  switch (op) {
    case ArithOp::add:
      return Interval::unchecked(ext_add(a.lo, b.lo), ext_add(a.hi, b.hi));
    case ArithOp::sub:
      return Interval::unchecked(ext_add(a.lo, ext_neg(b.hi)), ext_add(a.hi, ext_neg(b.lo)));
    case ArithOp::mul: {
      const ExtInt p[4] = {ext_mul(a.lo, b.lo), ext_mul(a.lo, b.hi), ext_mul(a.hi, b.lo), ext_mul(a.hi, b.hi)};
      return Interval::unchecked(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
    }
  }
  return Interval::empty();
}

}  // namespace interval

IntervalLattice::IntervalLattice(std::vector<std::int64_t> z) : z_(std::move(z)) {
  if (z_.empty()) throw LatticeError("interval lattice needs a non-empty integer set Z");
  std::sort(z_.begin(), z_.end());
  z_.erase(std::unique(z_.begin(), z_.end()), z_.end());
}

IntervalLattice IntervalLattice::range(std::int64_t zmin, std::int64_t zmax) {
  if (zmin > zmax) throw LatticeError("interval lattice needs zmin <= zmax");
  if (zmax - zmin > 100000) throw LatticeError("interval range too large");
  std::vector<std::int64_t> z;
  for (std::int64_t v = zmin; v <= zmax; ++v) z.push_back(v);
  return IntervalLattice(std::move(z));
}

Interval IntervalLattice::make(ExtInt lo, ExtInt hi) const {
  if (lo > hi || lo.is_pos_inf() || hi.is_neg_inf()) return Interval::empty();
  ExtInt snapped_lo = ExtInt::neg_inf();
  if (lo.is_finite()) {
    auto it = std::upper_bound(z_.begin(), z_.end(), lo.value());
    if (it != z_.begin()) snapped_lo = *std::prev(it);
  }
  ExtInt snapped_hi = ExtInt::pos_inf();
  if (hi.is_finite()) {
    auto it = std::lower_bound(z_.begin(), z_.end(), hi.value());
    if (it != z_.end()) snapped_hi = *it;
  }
  return Interval::unchecked(snapped_lo, snapped_hi);
}

Interval IntervalLattice::complement(const Interval&) const {
  throw LatticeError("the interval lattice has no complement");
}

Interval IntervalLattice::beta(std::string_view atom) const {
  if (auto n = parse_integer_atom(atom)) return point(*n);
  return top();
}

Interval IntervalLattice::arith(ArithOp op, const Interval& a, const Interval& b) const {
  Interval raw = interval::arith_raw(op, a, b);
  if (raw.bottom) return raw;
  return make(raw.lo, raw.hi);
}

Interval IntervalLattice::from_literal(const LatticeLiteral& lit) const {
  if (std::holds_alternative<LatticeLiteral::Bottom>(lit.form)) return bottom();
  if (std::holds_alternative<LatticeLiteral::Top>(lit.form)) return top();
  if (const auto* r = std::get_if<LatticeLiteral::Range>(&lit.form)) {
    if (r->lo > r->hi || r->lo.is_pos_inf() || r->hi.is_neg_inf()) {
      throw LatticeError("malformed interval literal " + lit.to_string());
    }
    return make(r->lo, r->hi);
  }
  throw LatticeError("set literal " + lit.to_string() + " used with the interval lattice");
}

std::string IntervalLattice::to_literal(const Interval& v) const {
  if (v.bottom) return "bot";
  return "[" + v.lo.to_string() + "," + v.hi.to_string() + "]";
}

std::optional<std::vector<Interval>> IntervalLattice::elements() const {
  if (z_.size() > 256) return std::nullopt;
  std::vector<ExtInt> lows{ExtInt::neg_inf()};
  std::vector<ExtInt> highs;
  for (auto v : z_) {
    lows.emplace_back(v);
    highs.emplace_back(v);
  }
  highs.push_back(ExtInt::pos_inf());
  std::vector<Interval> out{Interval::empty()};
  for (auto lo : lows) {
    for (auto hi : highs) {
      if (lo <= hi) out.push_back(Interval::unchecked(lo, hi));
    }
  }
  return out;
}

Interval IntervalLattice::random_element(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> d(0, z_.size() + 1);
  // Index 0 is an infinity, 1..|Z| pick from Z.
  auto endpoint = [&](bool low) -> ExtInt {
    std::size_t k = d(rng);
    if (k == 0 || k > z_.size()) return low ? ExtInt::neg_inf() : ExtInt::pos_inf();
    return ExtInt(z_[k - 1]);
  };
  if (d(rng) == 0) return Interval::empty();
  ExtInt a = endpoint(true);
  ExtInt b = endpoint(false);
  if (a > b) std::swap(a, b);
  if (a.is_pos_inf() || b.is_neg_inf()) return top();
  return Interval::unchecked(a, b);
}

std::optional<std::int64_t> parse_integer_atom(std::string_view atom) {
  if (atom.empty()) return std::nullopt;
  std::int64_t v = 0;
  const char* first = atom.data();
  const char* last = atom.data() + atom.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

}  // namespace llfp
