#include "meetpd/incidence.hpp"

#include "meetpd/errors.hpp"

namespace meetpd {

IncidenceFunction::IncidenceFunction(std::shared_ptr<const Poset> poset)
    : poset_(std::move(poset)), values_(poset_->size() * poset_->size(), Rational(0)) {}

void IncidenceFunction::set(std::size_t x, std::size_t y, Rational value) {
  if (!poset_->leq(x, y))
    throw NotInRelation("incidence value at ('" + poset_->label(x) + "','" + poset_->label(y) +
                        "') outside the order relation");
  values_[x * size() + y] = std::move(value);
}

namespace {

void require_same_poset(const IncidenceFunction& f, const IncidenceFunction& g) {
  if (f.poset() != g.poset() && !(*f.poset() == *g.poset()))
    throw PosetMismatch("incidence functions live on different posets");
}

}  // namespace

IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g) {
  require_same_poset(f, g);
  const Poset& p = *f.poset();
  IncidenceFunction out(f.poset());
  for (std::size_t x = 0; x < p.size(); ++x) {
    const Bitset& up = p.upset(x);
    for (std::size_t y = up.find_first(); y != Bitset::npos; y = up.find_next(y)) {
      Rational sum = 0;
      const Bitset between = up & p.downset(y);
      for (std::size_t z = between.find_first(); z != Bitset::npos; z = between.find_next(z))
        sum += f(x, z) * g(z, y);
      out.set(x, y, std::move(sum));
    }
  }
  return out;
}

IncidenceFunction zeta(std::shared_ptr<const Poset> poset) {
  IncidenceFunction out(poset);
  for (std::size_t x = 0; x < poset->size(); ++x) {
    const Bitset& up = poset->upset(x);
    for (std::size_t y = up.find_first(); y != Bitset::npos; y = up.find_next(y)) out.set(x, y, 1);
  }
  return out;
}

IncidenceFunction delta(std::shared_ptr<const Poset> poset) {
  IncidenceFunction out(poset);
  for (std::size_t x = 0; x < poset->size(); ++x) out.set(x, x, 1);
  return out;
}

IncidenceFunction mobius(std::shared_ptr<const Poset> poset) {
  const Poset& p = *poset;
  IncidenceFunction mu(poset);
  const auto& order = p.linear_order();
  for (std::size_t x = 0; x < p.size(); ++x) {
    // Walk the up-set of x in linear order so every mu(x, z) with z < y is ready.
    std::vector<std::size_t> above;
    for (std::size_t y : order)
      if (p.leq(x, y)) above.push_back(y);
    for (std::size_t y : above) {
      if (y == x) {
        mu.set(x, x, 1);
        continue;
      }
      Rational sum = 0;
      const Bitset between = p.upset(x) & p.downset(y);
      for (std::size_t z = between.find_first(); z != Bitset::npos; z = between.find_next(z))
        if (z != y) sum += mu(x, z);
      mu.set(x, y, -sum);
    }
  }
  return mu;
}

IncidenceFunction mobius_product(const IncidenceFunction& mu_p, const IncidenceFunction& mu_q,
                                 std::shared_ptr<const Poset> product) {
  const Poset& p = *mu_p.poset();
  const Poset& q = *mu_q.poset();
  const std::size_t nq = q.size();
  if (product->size() != p.size() * nq)
    throw PosetMismatch("declared product poset has the wrong number of elements");
  for (std::size_t a = 0; a < product->size(); ++a)
    for (std::size_t b = 0; b < product->size(); ++b)
      if (product->leq(a, b) != (p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq)))
        throw PosetMismatch("declared product poset is not the componentwise order");

  IncidenceFunction out(product);
  for (std::size_t a = 0; a < product->size(); ++a) {
    const Bitset& up = product->upset(a);
    for (std::size_t b = up.find_first(); b != Bitset::npos; b = up.find_next(b))
      out.set(a, b, mu_p(a / nq, b / nq) * mu_q(a % nq, b % nq));
  }
  return out;
}

IncidenceFunction mobius_product(const IncidenceFunction& mu_p, const IncidenceFunction& mu_q) {
  return mobius_product(mu_p, mu_q, std::make_shared<const Poset>(product_poset(*mu_p.poset(), *mu_q.poset())));
}

IncidenceFunction mobius_of_subset(const ElementSubset& s) {
  if (!s.meet_closed()) throw NotMeetClosed("Moebius function of a subset requires it to be meet closed");
  return mobius(std::make_shared<const Poset>(s.poset()));
}

IncidenceFunction restricted(std::shared_ptr<const Poset> poset, const std::vector<Rational>& values) {
  if (values.size() != poset->size()) throw DimensionMismatch("value vector length differs from poset size");
  const auto least = poset->least();
  if (!least) throw NoLeastElement("restricted incidence function needs a least element");
  IncidenceFunction out(poset);
  for (std::size_t x = 0; x < poset->size(); ++x) out.set(*least, x, values[x]);
  return out;
}

IncidenceFunction mobius_invert(const IncidenceFunction& fr, const IncidenceFunction& mu) {
  require_same_poset(fr, mu);
  const Poset& p = *fr.poset();
  const auto least = p.least();
  if (!least) throw NoLeastElement("Moebius inversion needs a least element");
  IncidenceFunction out(fr.poset());
  for (std::size_t x = 0; x < p.size(); ++x) {
    Rational sum = 0;
    const Bitset& down = p.downset(x);
    for (std::size_t z = down.find_first(); z != Bitset::npos; z = down.find_next(z))
      sum += fr(*least, z) * mu(z, x);
    out.set(*least, x, std::move(sum));
  }
  return out;
}

IncidenceFunction mobius_invert(const IncidenceFunction& fr) {
  if (!fr.poset()->least()) throw NoLeastElement("Moebius inversion needs a least element");
  return mobius_invert(fr, mobius(fr.poset()));
}

}  // namespace meetpd
