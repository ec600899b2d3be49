#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "llfp/lattice/lattice.hpp"

namespace llfp {

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive monotonicity validation below this many lattice elements.
inline constexpr std::size_t kExhaustiveMonotonicityBound = 64;
/// Sampled pairs otherwise.
inline constexpr std::size_t kMonotonicitySamples = 1000;

/// Interpretation of function symbols: (name, arity) -> monotone L^k -> L.
template <complete_lattice L>
class FunctionRegistry {
 public:
  using value_type = typename L::value_type;
  using Function = std::function<value_type(std::span<const value_type>)>;

  explicit FunctionRegistry(const L& lattice, std::uint64_t seed = 0x5eed) : lattice_(&lattice), rng_(seed) {}

  /// Validates monotonicity before admitting fn; the registry is unchanged on error.
  void register_function(const std::string& name, std::size_t arity, Function fn) {
    auto key = std::make_pair(name, arity);
    if (frozen_) throw RegistryError("registry is frozen; cannot register " + name);
    if (functions_.contains(key)) {
      throw RegistryError("duplicate function " + name + "/" + std::to_string(arity));
    }
    validate_monotone(name, arity, fn);
    functions_.emplace(std::move(key), std::move(fn));
  }

  bool contains(const std::string& name, std::size_t arity) const {
    return functions_.contains(std::make_pair(name, arity));
  }

  const Function& lookup(const std::string& name, std::size_t arity) const {
    auto it = functions_.find(std::make_pair(name, arity));
    if (it == functions_.end()) {
      throw RegistryError("unknown function " + name + "/" + std::to_string(arity));
    }
    return it->second;
  }

  value_type apply(const std::string& name, std::span<const value_type> args) const {
    return lookup(name, args.size())(args);
  }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::vector<std::pair<std::string, std::size_t>> signatures() const {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& [key, fn] : functions_) out.push_back(key);
    return out;
  }

 private:
  void validate_monotone(const std::string& name, std::size_t arity, const Function& fn) {
    if (arity == 0) return;
    auto elems = lattice_->elements();
    if (elems && elems->size() < kExhaustiveMonotonicityBound) {
      validate_exhaustive(name, arity, fn, *elems);
    } else {
      validate_sampled(name, arity, fn);
    }
  }

  void report(const std::string& name, std::size_t arity, std::size_t position) const {
    throw RegistryError("function " + name + "/" + std::to_string(arity) + " is not monotone in argument " +
                        std::to_string(position + 1));
  }

  void validate_exhaustive(const std::string& name, std::size_t arity, const Function& fn,
                           const std::vector<value_type>& elems) const {
    // Every argument position, every context for the other positions, every l <= l'.
    const std::size_t n = elems.size();
    std::vector<std::size_t> odo(arity, 0);
    std::vector<value_type> lo(arity, elems.front());
    std::vector<value_type> hi(arity, elems.front());
    for (std::size_t pos = 0; pos < arity; ++pos) {
      std::fill(odo.begin(), odo.end(), 0);
      while (true) {
        for (std::size_t k = 0; k < arity; ++k) lo[k] = hi[k] = elems[odo[k]];
        for (const auto& upper : elems) {
          if (!lattice_->leq(lo[pos], upper)) continue;
          hi[pos] = upper;
          if (!lattice_->leq(fn(lo), fn(hi))) report(name, arity, pos);
        }
        // Advance over positions other than pos; odo[pos] is the lower argument.
        std::size_t k = 0;
        for (; k < arity; ++k) {
          if (++odo[k] < n) break;
          odo[k] = 0;
        }
        if (k == arity) break;
      }
    }
  }

  void validate_sampled(const std::string& name, std::size_t arity, const Function& fn) {
    std::vector<value_type> lo(arity, lattice_->bottom());
    std::vector<value_type> hi(arity, lattice_->bottom());
    std::uniform_int_distribution<std::size_t> pick(0, arity - 1);
    for (std::size_t s = 0; s < kMonotonicitySamples; ++s) {
      for (std::size_t k = 0; k < arity; ++k) lo[k] = hi[k] = lattice_->random_element(rng_);
      std::size_t pos = pick(rng_);
      // Joining with a random element yields an upper bound of lo[pos].
      hi[pos] = lattice_->join(lo[pos], lattice_->random_element(rng_));
      if (!lattice_->leq(fn(lo), fn(hi))) report(name, arity, pos);
    }
  }

  const L* lattice_;
  Rng rng_;
  bool frozen_ = false;
  std::map<std::pair<std::string, std::size_t>, Function> functions_;
};

}  // namespace llfp
