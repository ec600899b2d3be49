#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "llfp/ast/ast.hpp"
#include "llfp/ast/interpretation.hpp"
#include "llfp/lattice/lattice.hpp"

namespace llfp {

/// Raised when a run breaks one of its own bookkeeping guarantees, for
/// example a write to a predicate whose stratum already finished.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Radix tree over interned atom ids. Depth equals the arity; a leaf holds
/// the join of every value asserted for its tuple.
template <typename V>
class PrefixTree {
 public:
  const V* find(std::span<const AtomId> tuple) const {
    const Node* n = &root_;
    for (auto a : tuple) {
      auto it = n->children.find(a);
      if (it == n->children.end()) return nullptr;
      n = it->second.get();
    }
    return n->leaf ? &*n->leaf : nullptr;
  }

  /// Returns the leaf slot for tuple, creating empty inner nodes on the way.
  std::optional<V>& slot(std::span<const AtomId> tuple) {
    Node* n = &root_;
    for (auto a : tuple) {
      auto& child = n->children[a];
      if (!child) child = std::make_unique<Node>();
      n = child.get();
    }
    return n->leaf;
  }

  /// Visits the leaves under prefix in lexicographic order.
  template <typename F>
  void for_each(std::span<const AtomId> prefix, F&& fn) const {
    const Node* n = &root_;
    for (auto a : prefix) {
      auto it = n->children.find(a);
      if (it == n->children.end()) return;
      n = it->second.get();
    }
    Tuple path(prefix.begin(), prefix.end());
    visit(*n, path, fn);
  }

  std::size_t size() const { return count(root_); }

 private:
  struct Node {
    std::optional<V> leaf;
    std::map<AtomId, std::unique_ptr<Node>> children;
  };

  template <typename F>
  static void visit(const Node& n, Tuple& path, F& fn) {
    if (n.leaf) fn(static_cast<const Tuple&>(path), *n.leaf);
    for (const auto& [a, child] : n.children) {
      path.push_back(a);
      visit(*child, path, fn);
      path.pop_back();
    }
  }

  static std::size_t count(const Node& n) {
    std::size_t c = n.leaf ? 1 : 0;
    for (const auto& [a, child] : n.children) c += count(*child);
    return c;
  }

  Node root_;
};

struct StoreStats {
  std::size_t growths = 0;
  std::size_t non_growing_adds = 0;
  std::vector<std::size_t> growths_per_predicate;
  /// Stratum during which each predicate last grew; -1 if never.
  std::vector<std::int64_t> last_modified_stratum;
};

/// The relation store rho: one prefix tree per predicate. Writes are only
/// accepted for predicates whose stratum is still open.
template <complete_lattice L>
class ResultStore {
 public:
  using value_type = typename L::value_type;

  ResultStore(const L& lattice, const std::vector<Predicate>& predicates)
      : lattice_(&lattice), predicates_(&predicates), trees_(predicates.size()) {
    stats_.growths_per_predicate.assign(predicates.size(), 0);
    stats_.last_modified_stratum.assign(predicates.size(), -1);
  }

  /// Marks strata below `stratum` as complete.
  void begin_stratum(std::size_t stratum) { stratum_ = stratum; }
  std::size_t current_stratum() const { return stratum_; }
  bool is_final(PredId pred) const { return (*predicates_)[pred].rank < stratum_; }

  const value_type* find(PredId pred, std::span<const AtomId> tuple) const { return trees_[pred].find(tuple); }

  value_type get(PredId pred, std::span<const AtomId> tuple) const {
    const auto* v = find(pred, tuple);
    return v ? *v : lattice_->bottom();
  }

  bool has(PredId pred, std::span<const AtomId> tuple, const value_type& l) const {
    return lattice_->leq(l, get(pred, tuple));
  }

  /// Joins l into the leaf. Returns the new leaf value if it strictly grew.
  std::optional<value_type> add(PredId pred, std::span<const AtomId> tuple, const value_type& l) {
    if (is_final(pred)) {
      throw InvariantViolation("write to " + (*predicates_)[pred].name + " of rank " +
                               std::to_string((*predicates_)[pred].rank) + " during stratum " +
                               std::to_string(stratum_));
    }
    if (has(pred, tuple, l)) {
      ++stats_.non_growing_adds;
      return std::nullopt;
    }
    auto& leaf = trees_[pred].slot(tuple);
    leaf = leaf ? lattice_->join(*leaf, l) : l;
    ++stats_.growths;
    ++stats_.growths_per_predicate[pred];
    stats_.last_modified_stratum[pred] = static_cast<std::int64_t>(stratum_);
    return *leaf;
  }

  /// Snapshot of the leaves of pred under prefix.
  std::vector<std::pair<Tuple, value_type>> snapshot(PredId pred, std::span<const AtomId> prefix = {}) const {
    std::vector<std::pair<Tuple, value_type>> out;
    trees_[pred].for_each(prefix, [&](const Tuple& t, const value_type& v) { out.emplace_back(t, v); });
    return out;
  }

  Interpretation<value_type> to_interpretation() const {
    Interpretation<value_type> rho(trees_.size());
    for (std::size_t r = 0; r < trees_.size(); ++r) {
      trees_[r].for_each({}, [&](const Tuple& t, const value_type& v) { rho.relations[r].emplace(t, v); });
    }
    return rho;
  }

  /// Test hook: overwrites a leaf without any checks.
  void poke(PredId pred, std::span<const AtomId> tuple, const value_type& v) { trees_[pred].slot(tuple) = v; }

  const StoreStats& stats() const { return stats_; }
  const L& lattice() const { return *lattice_; }

 private:
  const L* lattice_;
  const std::vector<Predicate>* predicates_;
  std::vector<PrefixTree<value_type>> trees_;
  std::size_t stratum_ = 0;
  StoreStats stats_;
};

struct ConsumerRecord {
  PredId pred = 0;
  Tuple prefix;
  std::size_t growths_at_registration = 0;
  std::size_t sweep_size = 0;
  std::size_t growth_deliveries = 0;
};

/// Suspended query continuations, keyed by predicate and filtered by the
/// ground prefix of the query arguments known at registration.
template <typename V>
class InflStore {
 public:
  using Callback = std::function<void(const Tuple&, const V&)>;

  explicit InflStore(std::size_t num_predicates) : per_pred_(num_predicates) {}

  /// Returns the index of the new consumer.
  std::size_t add(PredId pred, Tuple prefix, std::size_t growths_now, Callback fn) {
    consumers_.push_back(Entry{ConsumerRecord{pred, std::move(prefix), growths_now, 0, 0}, std::move(fn)});
    per_pred_[pred].push_back(consumers_.size() - 1);
    return consumers_.size() - 1;
  }

  /// Delivers to the consumers of pred registered so far whose prefix
  /// matches. Consumers registered meanwhile did their own sweep.
  void deliver(PredId pred, const Tuple& tuple, const V& value) {
    const std::size_t n = per_pred_[pred].size();
    for (std::size_t k = 0; k < n; ++k) {
      auto& entry = consumers_[per_pred_[pred][k]];
      if (!matches(entry.record.prefix, tuple)) continue;
      ++entry.record.growth_deliveries;
      ++deliveries_;
      entry.fn(tuple, value);
    }
  }

  void sweep(std::size_t index, const std::vector<std::pair<Tuple, V>>& leaves) {
    auto& entry = consumers_[index];
    entry.record.sweep_size = leaves.size();
    for (const auto& [t, v] : leaves) consumers_[index].fn(t, v);
  }

  std::size_t size() const { return consumers_.size(); }
  std::size_t growth_deliveries() const { return deliveries_; }
  std::vector<ConsumerRecord> records() const {
    std::vector<ConsumerRecord> out;
    for (const auto& e : consumers_) out.push_back(e.record);
    return out;
  }

 private:
  struct Entry {
    ConsumerRecord record;
    Callback fn;
  };

  static bool matches(const Tuple& prefix, const Tuple& tuple) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] != tuple[i]) return false;
    }
    return true;
  }

  // A deque keeps entries in place while a running consumer registers more.
  std::deque<Entry> consumers_;
  std::vector<std::vector<std::size_t>> per_pred_;
  std::size_t deliveries_ = 0;
};

}  // namespace llfp
