#include "llfp/lattice/powerset.hpp"

#include <bit>

namespace llfp {

bool BitSet::none() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

std::size_t BitSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitSet BitSet::operator|(const BitSet& o) const {
  BitSet r(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

BitSet BitSet::operator&(const BitSet& o) const {
  BitSet r(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

BitSet BitSet::flipped() const {
  BitSet r(*this);
  for (auto& w : r.words_) w = ~w;
  if (auto tail = width_ % 64; tail != 0) r.words_.back() &= (std::uint64_t{1} << tail) - 1;
  return r;
}

bool BitSet::is_subset_of(const BitSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

PowersetLattice::PowersetLattice(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw LatticeError("powerset lattice needs a non-empty universe");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!index_.emplace(atoms_[i], i).second) throw LatticeError("duplicate powerset atom " + atoms_[i]);
  }
}

std::optional<std::size_t> PowersetLattice::index_of(std::string_view atom) const {
  auto it = index_.find(std::string(atom));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BitSet PowersetLattice::beta(std::string_view atom) const {
  auto idx = index_of(atom);
  if (!idx) throw LatticeError("unknown atom " + std::string(atom));
  BitSet s(atoms_.size());
  s.set(*idx);
  return s;
}

BitSet PowersetLattice::from_literal(const LatticeLiteral& lit) const {
  if (std::holds_alternative<LatticeLiteral::Bottom>(lit.form)) return bottom();
  if (std::holds_alternative<LatticeLiteral::Top>(lit.form)) return top();
  if (const auto* set = std::get_if<LatticeLiteral::Set>(&lit.form)) {
    BitSet s = bottom();
    for (const auto& a : set->atoms) s = s | beta(a);
    return s;
  }
  throw LatticeError("interval literal " + lit.to_string() + " used with a powerset lattice");
}

std::string PowersetLattice::to_literal(const BitSet& v) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!v.test(i)) continue;
    if (!first) out += ",";
    out += atoms_[i];
    first = false;
  }
  return out + "}";
}

std::optional<std::vector<BitSet>> PowersetLattice::elements() const {
  const std::size_t n = atoms_.size();
  if (n > 16) return std::nullopt;
  std::vector<BitSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BitSet s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s.set(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

BitSet PowersetLattice::random_element(Rng& rng) const {
  BitSet s(atoms_.size());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (coin(rng)) s.set(i);
  }
  return s;
}

}  // namespace llfp
