#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "meetpd/lattice_family.hpp"
#include "meetpd/poset.hpp"

namespace meetpd {

/// Reorders `members` into the stable linear extension (ties keep input order).
std::vector<Point> linear_extension(const LatticeFamily& family, const std::vector<Point>& members);

/// A finite, nonempty, duplicate-free subset of a lattice family, kept in
/// linear-extension order (x_i <= x_j implies i <= j).
class ElementSubset {
 public:
  /// Validates membership and reorders into a stable linear extension.
  /// Throws InvalidSubset for empty or duplicate input.
  ElementSubset(LatticeFamily family, std::vector<Point> members);

  /// The covering set S_m of the family.
  static ElementSubset covering(const LatticeFamily& family, int m);

  const LatticeFamily& family() const { return family_; }
  const std::vector<Point>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Point& operator[](std::size_t i) const { return members_[i]; }

  std::optional<std::size_t> index_of(const Point& x) const;

  bool meet_closed() const { return meet_closed_; }
  bool lower_closed() const { return lower_closed_; }

  /// leq restricted to members, by position.
  bool leq(std::size_t i, std::size_t j) const { return order_.leq(i, j); }

  /// The subset as a finite poset over positions 0..size-1 (labels from the family).
  const Poset& poset() const { return order_; }

 private:
  LatticeFamily family_;
  std::vector<Point> members_;
  std::unordered_map<Point, std::size_t, PointHash> index_;
  Poset order_;
  bool meet_closed_ = false;
  bool lower_closed_ = false;
};

bool is_meet_closed(const ElementSubset& s);
bool is_lower_closed(const ElementSubset& s);

/// Smallest meet closed superset.
ElementSubset meet_closure(const ElementSubset& s);
/// Smallest lower closed superset: every z below some member.
ElementSubset lower_closure(const ElementSubset& s);

/// S_1 x ... x S_d in the product family, lexicographically enumerated.
ElementSubset cartesian_product(const std::vector<ElementSubset>& factors);

}  // namespace meetpd
