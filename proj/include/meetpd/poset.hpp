#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace meetpd {

using Bitset = boost::dynamic_bitset<>;

/// A finite partially ordered set over element indices 0..n-1.
///
/// The order is stored as reachability bitsets in both directions, so
/// `leq` is a single bit test. Instances are immutable once built.
class Poset {
 public:
  /// Builds from labelled elements and cover edges (lower, upper).
  /// Throws DuplicateElement, UnknownElement or CycleError.
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& cover_edges);

  /// Builds from an order predicate on indices. The predicate is validated
  /// for reflexivity, antisymmetry and transitivity.
  static Poset from_relation(std::vector<std::string> labels,
                             const std::function<bool(std::size_t, std::size_t)>& leq);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool leq(std::size_t x, std::size_t y) const { return up_[x].test(y); }
  bool less(std::size_t x, std::size_t y) const { return x != y && up_[x].test(y); }

  /// {y : x <= y}
  const Bitset& upset(std::size_t x) const { return up_[x]; }
  /// {y : y <= x}
  const Bitset& downset(std::size_t x) const { return down_[x]; }

  std::optional<std::size_t> least() const { return least_; }

  /// A fixed linear extension of the whole poset (stable w.r.t. index order).
  const std::vector<std::size_t>& linear_order() const { return topo_; }

  /// Elements z with x <= z <= y, in linear-extension order.
  std::vector<std::size_t> interval(std::size_t x, std::size_t y) const;

  /// Cover relations (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.up_ == b.up_;
  }

 private:
  Poset(std::vector<std::string> labels, std::vector<Bitset> up);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::vector<std::size_t> topo_;
  std::optional<std::size_t> least_;
};

/// Stable topological order of `count` items under `leq`: among the items
/// whose predecessors are all placed, the one earliest in input order goes
/// next. An input that is already a linear extension is returned unchanged.
std::vector<std::size_t> stable_linear_extension(
    std::size_t count, const std::function<bool(std::size_t, std::size_t)>& leq);

/// A finite poset in which every pair has a greatest lower bound.
class MeetSemilattice {
 public:
  /// Throws NotASemilattice naming the first pair without a meet.
  explicit MeetSemilattice(Poset poset);

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  std::size_t meet(std::size_t x, std::size_t y) const { return meet_[x * poset_.size() + y]; }

 private:
  Poset poset_;
  std::vector<std::size_t> meet_;
};

/// Product poset with componentwise order. Element (i, j) gets index
/// i * |Q| + j, i.e. lexicographic order; labels are "(a,b)".
Poset product_poset(const Poset& p, const Poset& q);

/// Product of explicit semilattices with componentwise meet; elements are
/// enumerated lexicographically (last component fastest).
MeetSemilattice product_semilattice(const std::vector<std::shared_ptr<const MeetSemilattice>>& factors);

}  // namespace meetpd
