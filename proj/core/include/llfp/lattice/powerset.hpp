#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "llfp/lattice/lattice.hpp"

namespace llfp {

/// Fixed-width set of small indices.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const { return width_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool none() const;
  std::size_t count() const;

  BitSet operator|(const BitSet& o) const;
  BitSet operator&(const BitSet& o) const;
  BitSet flipped() const;
  bool is_subset_of(const BitSet& o) const;

  auto operator<=>(const BitSet&) const = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// P(U) over a finite, non-empty atom set: subset order, union, intersection,
/// set complement, beta(a) = {a}.
class PowersetLattice {
 public:
  using value_type = BitSet;

  /// Throws LatticeError on an empty or duplicated atom list.
  explicit PowersetLattice(std::vector<std::string> atoms);

  std::string name() const { return "powerset"; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<std::size_t> index_of(std::string_view atom) const;

  value_type bottom() const { return BitSet(atoms_.size()); }
  value_type top() const { return BitSet(atoms_.size()).flipped(); }
  bool leq(const value_type& a, const value_type& b) const { return a.is_subset_of(b); }
  value_type join(const value_type& a, const value_type& b) const { return a | b; }
  value_type meet(const value_type& a, const value_type& b) const { return a & b; }
  bool has_complement() const { return true; }
  value_type complement(const value_type& a) const { return a.flipped(); }
  value_type beta(std::string_view atom) const;

  value_type singleton(std::string_view atom) const { return beta(atom); }
  value_type from_literal(const LatticeLiteral& lit) const;
  std::string to_literal(const value_type& v) const;

  /// All 2^|U| subsets when |U| <= 16.
  std::optional<std::vector<value_type>> elements() const;
  value_type random_element(Rng& rng) const;

 private:
  std::vector<std::string> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace llfp
