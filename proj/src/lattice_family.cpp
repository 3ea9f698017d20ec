#include "meetpd/lattice_family.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "meetpd/errors.hpp"

namespace meetpd {

namespace {

// Odometer over per-coordinate value lists, last coordinate fastest.
std::vector<Point> cartesian(const std::vector<std::vector<std::int64_t>>& axes) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  std::vector<Point> out;
  out.reserve(total);
  if (total == 0) return out;
  std::vector<std::size_t> digit(axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Point p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k][digit[k]];
    out.push_back(std::move(p));
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++digit[k] < axes[k].size()) break;
      digit[k] = 0;
    }
  }
  return out;
}

}  // namespace

LatticeFamily LatticeFamily::explicit_finite(std::shared_ptr<const MeetSemilattice> lattice) {
  if (!lattice) throw Error("null semilattice");
  return LatticeFamily(FamilyKind::explicit_finite, {Atom{AtomKind::explicit_finite, std::move(lattice)}});
}

LatticeFamily LatticeFamily::divisor(int d) {
  if (d < 1) throw DimensionMismatch("divisor family needs d >= 1");
  return LatticeFamily(FamilyKind::divisor, std::vector<Atom>(d, Atom{AtomKind::divisor, nullptr}));
}

LatticeFamily LatticeFamily::min(int d) {
  if (d < 1) throw DimensionMismatch("min family needs d >= 1");
  return LatticeFamily(FamilyKind::min, std::vector<Atom>(d, Atom{AtomKind::min, nullptr}));
}

LatticeFamily LatticeFamily::product(const std::vector<LatticeFamily>& families) {
  if (families.empty()) throw DimensionMismatch("product of zero families");
  if (families.size() == 1) return families.front();
  std::vector<Atom> atoms;
  for (const auto& f : families) atoms.insert(atoms.end(), f.atoms_.begin(), f.atoms_.end());
  return LatticeFamily(FamilyKind::product, std::move(atoms));
}

std::string LatticeFamily::name() const {
  switch (kind_) {
    case FamilyKind::divisor: return "divisor d=" + std::to_string(arity());
    case FamilyKind::min: return "min d=" + std::to_string(arity());
    case FamilyKind::explicit_finite: return "explicit n=" + std::to_string(atoms_[0].lattice->size());
    case FamilyKind::product: break;
  }
  std::string out = "product(";
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (k) out += ",";
    switch (atoms_[k].kind) {
      case AtomKind::divisor: out += "divisor"; break;
      case AtomKind::min: out += "min"; break;
      case AtomKind::explicit_finite: out += "explicit"; break;
    }
  }
  return out + ")";
}

bool LatticeFamily::contains(const Point& x) const {
  if (x.size() != atoms_.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (atoms_[k].kind == AtomKind::explicit_finite) {
      if (x[k] < 0 || static_cast<std::size_t>(x[k]) >= atoms_[k].lattice->size()) return false;
    } else if (x[k] < 1) {
      return false;
    }
  }
  return true;
}

void LatticeFamily::check_point(const Point& x) const {
  if (x.size() != atoms_.size())
    throw DimensionMismatch("point of arity " + std::to_string(x.size()) + " in family of arity " +
                            std::to_string(atoms_.size()));
  if (!contains(x)) throw UnknownElement("point " + label(x) + " is not in " + name());
}

bool LatticeFamily::leq(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  for (std::size_t k = 0; k < x.size(); ++k) {
    switch (atoms_[k].kind) {
      case AtomKind::divisor:
        if (y[k] % x[k] != 0) return false;
        break;
      case AtomKind::min:
        if (x[k] > y[k]) return false;
        break;
      case AtomKind::explicit_finite:
        if (!atoms_[k].lattice->poset().leq(x[k], y[k])) return false;
        break;
    }
  }
  return true;
}

Point LatticeFamily::meet(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  Point out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    switch (atoms_[k].kind) {
      case AtomKind::divisor: out[k] = std::gcd(x[k], y[k]); break;
      case AtomKind::min: out[k] = std::min(x[k], y[k]); break;
      case AtomKind::explicit_finite:
        out[k] = static_cast<std::int64_t>(atoms_[k].lattice->meet(x[k], y[k]));
        break;
    }
  }
  return out;
}

std::optional<Point> LatticeFamily::bottom() const {
  Point out(atoms_.size());
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].kind == AtomKind::explicit_finite) {
      const auto least = atoms_[k].lattice->poset().least();
      if (!least) return std::nullopt;
      out[k] = static_cast<std::int64_t>(*least);
    } else {
      out[k] = 1;
    }
  }
  return out;
}

std::vector<std::int64_t> LatticeFamily::atom_lower_set(const Atom& atom, std::int64_t v) const {
  std::vector<std::int64_t> out;
  switch (atom.kind) {
    case AtomKind::divisor:
      for (std::int64_t k = 1; k * k <= v; ++k)
        if (v % k == 0) {
          out.push_back(k);
          if (k * k != v) out.push_back(v / k);
        }
      std::sort(out.begin(), out.end());
      break;
    case AtomKind::min:
      for (std::int64_t k = 1; k <= v; ++k) out.push_back(k);
      break;
    case AtomKind::explicit_finite: {
      const Poset& p = atom.lattice->poset();
      for (std::size_t z : p.linear_order())
        if (p.leq(z, static_cast<std::size_t>(v))) out.push_back(static_cast<std::int64_t>(z));
      break;
    }
  }
  return out;
}

std::vector<Point> LatticeFamily::lower_set(const Point& x) const {
  check_point(x);
  std::vector<std::vector<std::int64_t>> axes;
  for (std::size_t k = 0; k < atoms_.size(); ++k) axes.push_back(atom_lower_set(atoms_[k], x[k]));
  return cartesian(axes);
}

std::vector<std::int64_t> LatticeFamily::atom_covering(std::size_t atom, int m) const {
  if (m < 1) throw DimensionMismatch("covering bound must be >= 1");
  std::vector<std::int64_t> axis;
  if (atoms_.at(atom).kind == AtomKind::explicit_finite) {
    for (std::size_t z : atoms_[atom].lattice->poset().linear_order()) axis.push_back(static_cast<std::int64_t>(z));
  } else {
    for (std::int64_t v = 1; v <= m; ++v) axis.push_back(v);
  }
  return axis;
}

std::vector<Point> LatticeFamily::covering_set(int m) const {
  std::vector<std::vector<std::int64_t>> axes;
  for (std::size_t k = 0; k < atoms_.size(); ++k) axes.push_back(atom_covering(k, m));
  return cartesian(axes);
}

LatticeFamily LatticeFamily::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > atoms_.size()) throw DimensionMismatch("family slice out of range");
  std::vector<Atom> atoms(atoms_.begin() + static_cast<std::ptrdiff_t>(first),
                          atoms_.begin() + static_cast<std::ptrdiff_t>(first + count));
  const bool uniform = std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.kind == atoms[0].kind; });
  FamilyKind kind = FamilyKind::product;
  if (uniform && atoms[0].kind == AtomKind::divisor) kind = FamilyKind::divisor;
  if (uniform && atoms[0].kind == AtomKind::min) kind = FamilyKind::min;
  if (atoms.size() == 1 && atoms[0].kind == AtomKind::explicit_finite) kind = FamilyKind::explicit_finite;
  return LatticeFamily(kind, std::move(atoms));
}

std::string LatticeFamily::label(const Point& x) const {
  auto coord = [&](std::size_t k) -> std::string {
    if (k < atoms_.size() && atoms_[k].kind == AtomKind::explicit_finite && x[k] >= 0 &&
        static_cast<std::size_t>(x[k]) < atoms_[k].lattice->size())
      return atoms_[k].lattice->poset().label(static_cast<std::size_t>(x[k]));
    return std::to_string(x[k]);
  };
  if (x.size() == 1) return coord(0);
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) out += ",";
    out += coord(k);
  }
  return out + ")";
}

Point LatticeFamily::parse_label(const std::string& text) const {
  std::string body = text;
  if (atoms_.size() > 1) {
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
      throw ParseError("expected a parenthesised tuple, got '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != atoms_.size())
    throw DimensionMismatch("label '" + text + "' does not have arity " + std::to_string(atoms_.size()));
  Point p(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (atoms_[k].kind == AtomKind::explicit_finite) {
      const auto idx = atoms_[k].lattice->poset().index_of(parts[k]);
      if (!idx) throw UnknownElement("unknown element '" + parts[k] + "'");
      p[k] = static_cast<std::int64_t>(*idx);
    } else {
      try {
        std::size_t used = 0;
        p[k] = std::stoll(parts[k], &used);
        if (used != parts[k].size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError("expected a positive integer, got '" + parts[k] + "'");
      }
    }
  }
  check_point(p);
  return p;
}

bool operator==(const LatticeFamily& a, const LatticeFamily& b) { return a.atoms_ == b.atoms_; }

}  // namespace meetpd
