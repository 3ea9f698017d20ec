#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "meetpd/element_subset.hpp"
#include "meetpd/poset.hpp"
#include "meetpd/rational.hpp"

namespace meetpd {

/// A rational-valued function on the pairs x <= y of a finite poset.
/// Pairs outside the order relation are implicitly zero and cannot be set.
class IncidenceFunction {
 public:
  explicit IncidenceFunction(std::shared_ptr<const Poset> poset);

  const std::shared_ptr<const Poset>& poset() const { return poset_; }
  std::size_t size() const { return poset_->size(); }

  /// Zero when x is not below y.
  const Rational& operator()(std::size_t x, std::size_t y) const { return values_[x * size() + y]; }

  /// Throws NotInRelation when x is not below y.
  void set(std::size_t x, std::size_t y, Rational value);

  friend bool operator==(const IncidenceFunction& a, const IncidenceFunction& b) {
    return *a.poset_ == *b.poset_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const Poset> poset_;
  std::vector<Rational> values_;
};

/// (f * g)(x, y) = sum over x <= z <= y of f(x, z) g(z, y).
IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g);

IncidenceFunction zeta(std::shared_ptr<const Poset> poset);
IncidenceFunction delta(std::shared_ptr<const Poset> poset);

/// Convolution inverse of zeta: mu(x, x) = 1 and
/// mu(x, y) = -sum_{x <= z < y} mu(x, z) for x < y.
IncidenceFunction mobius(std::shared_ptr<const Poset> poset);

/// Moebius function of P x Q as the pointwise product mu_P(x1, y1) mu_Q(x2, y2).
/// `product` must be the lexicographic product poset of the two posets
/// (as built by product_poset); PosetMismatch otherwise.
IncidenceFunction mobius_product(const IncidenceFunction& mu_p, const IncidenceFunction& mu_q,
                                 std::shared_ptr<const Poset> product);
IncidenceFunction mobius_product(const IncidenceFunction& mu_p, const IncidenceFunction& mu_q);

/// Moebius function of a meet closed subset, by inverting zeta restricted
/// to the subset. Indices are positions within `s`. Throws NotMeetClosed.
IncidenceFunction mobius_of_subset(const ElementSubset& s);

/// Given values f(x) on the poset (indexed by element), returns g with
/// g(0, x) = (f_r * mu)(0, x) where f_r(0, x) = f(x). Only the row of the
/// least element is populated. Throws NoLeastElement.
IncidenceFunction mobius_invert(const IncidenceFunction& fr, const IncidenceFunction& mu);
IncidenceFunction mobius_invert(const IncidenceFunction& fr);

/// The restricted incidence function f_r(0, x) = values[x].
IncidenceFunction restricted(std::shared_ptr<const Poset> poset, const std::vector<Rational>& values);

}  // namespace meetpd
