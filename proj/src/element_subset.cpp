#include "meetpd/element_subset.hpp"

#include <unordered_set>

#include "meetpd/errors.hpp"

namespace meetpd {

namespace {

std::vector<std::string> labels_of(const LatticeFamily& family, const std::vector<Point>& members) {
  std::vector<std::string> labels;
  labels.reserve(members.size());
  for (const auto& m : members) labels.push_back(family.label(m));
  return labels;
}

}  // namespace

std::vector<Point> linear_extension(const LatticeFamily& family, const std::vector<Point>& members) {
  const auto order = stable_linear_extension(
      members.size(), [&](std::size_t a, std::size_t b) { return family.leq(members[a], members[b]); });
  std::vector<Point> out;
  out.reserve(members.size());
  for (std::size_t i : order) out.push_back(members[i]);
  return out;
}

ElementSubset::ElementSubset(LatticeFamily family, std::vector<Point> members)
    : family_(std::move(family)),
      members_([&] {
        if (members.empty()) throw InvalidSubset("element subset must be nonempty");
        std::unordered_set<Point, PointHash> seen;
        for (const auto& m : members) {
          if (!family_.contains(m)) throw UnknownElement("point " + family_.label(m) + " is not in " + family_.name());
          if (!seen.insert(m).second) throw InvalidSubset("duplicate member " + family_.label(m));
        }
        return linear_extension(family_, members);
      }()),
      order_(Poset::from_relation(labels_of(family_, members_), [this](std::size_t a, std::size_t b) {
        return family_.leq(members_[a], members_[b]);
      })) {
  for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i], i);

  meet_closed_ = true;
  for (std::size_t i = 0; i < members_.size() && meet_closed_; ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (!index_.count(family_.meet(members_[i], members_[j]))) {
        meet_closed_ = false;
        break;
      }

  lower_closed_ = meet_closed_;
  for (std::size_t i = 0; i < members_.size() && lower_closed_; ++i)
    for (const auto& z : family_.lower_set(members_[i]))
      if (!index_.count(z)) {
        lower_closed_ = false;
        break;
      }
}

ElementSubset ElementSubset::covering(const LatticeFamily& family, int m) {
  return ElementSubset(family, family.covering_set(m));
}

std::optional<std::size_t> ElementSubset::index_of(const Point& x) const {
  const auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool is_meet_closed(const ElementSubset& s) { return s.meet_closed(); }
bool is_lower_closed(const ElementSubset& s) { return s.lower_closed(); }

ElementSubset meet_closure(const ElementSubset& s) {
  if (s.meet_closed()) return s;
  const LatticeFamily& family = s.family();
  std::vector<Point> members = s.members();
  std::unordered_set<Point, PointHash> seen(members.begin(), members.end());
  // Each pass meets every new element with every element; stops at a fixpoint.
  std::size_t processed = 0;
  while (processed < members.size()) {
    const std::size_t end = members.size();
    for (std::size_t i = processed; i < end; ++i)
      for (std::size_t j = 0; j < end; ++j) {
        Point m = family.meet(members[i], members[j]);
        if (seen.insert(m).second) members.push_back(std::move(m));
      }
    processed = end;
  }
  return ElementSubset(family, std::move(members));
}

ElementSubset lower_closure(const ElementSubset& s) {
  if (s.lower_closed()) return s;
  const LatticeFamily& family = s.family();
  std::vector<Point> members = s.members();
  std::unordered_set<Point, PointHash> seen(members.begin(), members.end());
  for (const auto& x : s.members())
    for (auto& z : family.lower_set(x))
      if (seen.insert(z).second) members.push_back(std::move(z));
  return ElementSubset(family, std::move(members));
}

ElementSubset cartesian_product(const std::vector<ElementSubset>& factors) {
  if (factors.empty()) throw DimensionMismatch("cartesian product of zero subsets");
  if (factors.size() == 1) return factors.front();
  std::vector<LatticeFamily> families;
  std::size_t total = 1;
  for (const auto& f : factors) {
    families.push_back(f.family());
    total *= f.size();
  }
  std::vector<Point> members;
  members.reserve(total);
  std::vector<std::size_t> digit(factors.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Point p;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const Point& part = factors[k][digit[k]];
      p.insert(p.end(), part.begin(), part.end());
    }
    members.push_back(std::move(p));
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++digit[k] < factors[k].size()) break;
      digit[k] = 0;
    }
  }
  return ElementSubset(LatticeFamily::product(families), std::move(members));
}

}  // namespace meetpd
