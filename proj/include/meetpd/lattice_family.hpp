#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "meetpd/poset.hpp"

namespace meetpd {

/// A lattice element: one coordinate per atomic factor of the family.
/// Divisor and MIN coordinates hold the positive integer itself; explicit
/// coordinates hold the element index of the underlying semilattice.
using Point = std::vector<std::int64_t>;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ p.size();
    for (std::int64_t v : p) h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

enum class FamilyKind { explicit_finite, divisor, min, product };

/// A (possibly infinite) meet semilattice described implicitly.
///
/// Every family is a product of one-coordinate atoms: divisor(d) is d
/// divisor atoms, min(d) is d MIN atoms, an explicit family is one atom
/// over a finite semilattice. Infinite atoms are never materialized; finite
/// pieces are produced on demand from a bound m.
class LatticeFamily {
 public:
  static LatticeFamily explicit_finite(std::shared_ptr<const MeetSemilattice> lattice);
  static LatticeFamily divisor(int d);
  static LatticeFamily min(int d);
  static LatticeFamily product(const std::vector<LatticeFamily>& families);

  FamilyKind kind() const { return kind_; }
  int arity() const { return static_cast<int>(atoms_.size()); }
  std::string name() const;

  bool contains(const Point& x) const;
  bool leq(const Point& x, const Point& y) const;
  Point meet(const Point& x, const Point& y) const;
  std::optional<Point> bottom() const;

  /// All z <= x, in a linear-extension order (lexicographic over atoms).
  std::vector<Point> lower_set(const Point& x) const;

  /// Covering set S_m: {1..m} per implicit atom and the full element set per
  /// explicit atom, lexicographically ordered. Always lower closed.
  std::vector<Point> covering_set(int m) const;

  /// Elements of the atom's covering set at bound m (as single coordinates).
  std::vector<std::int64_t> atom_covering(std::size_t atom, int m) const;

  /// Sub-family consisting of atoms [first, first + count).
  LatticeFamily slice(std::size_t first, std::size_t count) const;

  std::string label(const Point& x) const;

  /// Parses the output of `label`.
  Point parse_label(const std::string& text) const;

  friend bool operator==(const LatticeFamily& a, const LatticeFamily& b);

 private:
  enum class AtomKind { explicit_finite, divisor, min };
  struct Atom {
    AtomKind kind;
    std::shared_ptr<const MeetSemilattice> lattice;
    friend bool operator==(const Atom& a, const Atom& b) {
      return a.kind == b.kind && a.lattice == b.lattice;
    }
  };

  LatticeFamily(FamilyKind kind, std::vector<Atom> atoms) : kind_(kind), atoms_(std::move(atoms)) {}

  void check_point(const Point& x) const;
  std::vector<std::int64_t> atom_lower_set(const Atom& atom, std::int64_t v) const;

  FamilyKind kind_;
  std::vector<Atom> atoms_;
};

}  // namespace meetpd
