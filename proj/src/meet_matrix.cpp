#include "meetpd/meet_matrix.hpp"

#include <functional>

#include "meetpd/errors.hpp"
#include "meetpd/incidence.hpp"

namespace meetpd {

MeetMatrix meet_matrix(const ElementSubset& s, const LatticeFunction& f) {
  const LatticeFamily& family = s.family();
  if (f.arity() != family.arity())
    throw DimensionMismatch("function arity " + std::to_string(f.arity()) + " differs from family arity " +
                            std::to_string(family.arity()));
  const std::size_t n = s.size();
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      a(i, j) = f(family.meet(s[i], s[j]));
      a(j, i) = a(i, j);
    }
  return MeetMatrix{s, std::move(a)};
}

OrderMap::OrderMap(std::vector<std::size_t> dims) : dims_(std::move(dims)), strides_(dims_.size()), size_(1) {
  for (std::size_t k = dims_.size(); k-- > 0;) {
    strides_[k] = size_;
    size_ *= dims_[k];
  }
}

std::size_t OrderMap::flat(const std::vector<std::size_t>& multi) const {
  if (multi.size() != dims_.size()) throw DimensionMismatch("multi-index has the wrong arity");
  std::size_t out = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] >= dims_[k]) throw DimensionMismatch("multi-index out of range");
    out += multi[k] * strides_[k];
  }
  return out;
}

std::vector<std::size_t> OrderMap::multi(std::size_t flat) const {
  if (flat >= size_) throw DimensionMismatch("flat index out of range");
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    out[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return out;
}

ElementSubset Decomposition::indexed_set() const { return cartesian_product(subsets); }

ZetaMatrix zeta_matrix(const ElementSubset& s) {
  ZetaMatrix e(s.size(), s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (s.leq(j, i)) e(i, j) = 1;
  return e;
}

Decomposition ldl_lower_closed(const ElementSubset& s, const LatticeFunction& f) {
  if (!s.lower_closed()) throw NotLowerClosed("LDL^T of a meet matrix requires a lower closed set");
  if (f.arity() != s.family().arity()) throw DimensionMismatch("function arity differs from family arity");

  auto poset = std::make_shared<const Poset>(s.poset());
  if (!poset->least()) throw NoLeastElement("lower closed set has no least element");
  std::vector<Rational> values;
  values.reserve(s.size());
  for (const auto& x : s.members()) values.push_back(f(x));
  const IncidenceFunction inverted = mobius_invert(restricted(poset, values));

  std::vector<Rational> diag(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) diag[i] = inverted(*poset->least(), i);
  return Decomposition{{s}, {zeta_matrix(s)}, std::move(diag), OrderMap({s.size()})};
}

namespace {

void require_meet_closed(const std::vector<ElementSubset>& subsets) {
  for (std::size_t k = 0; k < subsets.size(); ++k)
    if (!subsets[k].meet_closed())
      throw NotMeetClosed("factor " + std::to_string(k + 1) + " of the Kronecker decomposition is not meet closed");
}

void require_product_arity(const std::vector<ElementSubset>& subsets, const LatticeFunction& f) {
  int arity = 0;
  for (const auto& s : subsets) arity += s.family().arity();
  if (arity != f.arity())
    throw DimensionMismatch("function arity " + std::to_string(f.arity()) + " differs from product arity " +
                            std::to_string(arity));
}

Point concat(const Point& a, const Point& b) {
  Point out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Decomposition kron_decompose(const ElementSubset& s, const ElementSubset& t, const LatticeFunction& f) {
  const std::vector<ElementSubset> subsets{s, t};
  require_meet_closed(subsets);
  require_product_arity(subsets, f);

  const IncidenceFunction mu_s = mobius_of_subset(s);
  const IncidenceFunction mu_t = mobius_of_subset(t);
  const std::size_t n = s.size();
  const std::size_t m = t.size();

  std::vector<Rational> diag(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational c = 0;
      for (std::size_t k = 0; k <= i; ++k) {
        if (!s.leq(k, i) || mu_s(k, i) == 0) continue;
        for (std::size_t l = 0; l <= j; ++l) {
          if (!t.leq(l, j) || mu_t(l, j) == 0) continue;
          c += f(concat(s[k], t[l])) * mu_s(k, i) * mu_t(l, j);
        }
      }
      diag[i * m + j] = std::move(c);
    }
  return Decomposition{subsets, {zeta_matrix(s), zeta_matrix(t)}, std::move(diag), OrderMap({n, m})};
}

Decomposition kron_decompose_d(const std::vector<ElementSubset>& subsets, const LatticeFunction& f) {
  if (subsets.empty()) throw DimensionMismatch("Kronecker decomposition needs at least one factor");
  require_meet_closed(subsets);
  require_product_arity(subsets, f);

  std::vector<std::size_t> dims;
  for (const auto& s : subsets) dims.push_back(s.size());
  OrderMap order(dims);
  const ElementSubset grid = cartesian_product(subsets);

  std::vector<Rational> values(order.size());
  for (std::size_t flat = 0; flat < order.size(); ++flat) values[flat] = f(grid[flat]);

  // Moebius transform along each axis: the product Moebius function of
  // S_1 x ... x S_d factorizes, so the d-fold sum separates into d passes.
  for (std::size_t axis = 0; axis < subsets.size(); ++axis) {
    const IncidenceFunction mu = mobius_of_subset(subsets[axis]);
    const std::size_t n = dims[axis];
    const std::size_t stride = order.stride(axis);
    std::vector<Rational> next(order.size());
    for (std::size_t flat = 0; flat < order.size(); ++flat) {
      const std::size_t i = (flat / stride) % n;
      const std::size_t base = flat - i * stride;
      Rational sum = 0;
      for (std::size_t k = 0; k <= i; ++k) {
        const Rational& w = mu(k, i);
        if (w != 0) sum += values[base + k * stride] * w;
      }
      next[flat] = std::move(sum);
    }
    values = std::move(next);
  }

  std::vector<ZetaMatrix> factors;
  for (const auto& s : subsets) factors.push_back(zeta_matrix(s));
  return Decomposition{subsets, std::move(factors), std::move(values), std::move(order)};
}

MeetMatrix reconstruct(const Decomposition& d) {
  const OrderMap& order = d.order_map;
  const std::size_t axes = d.factors.size();
  const std::size_t total = order.size();

  // common[axis][i * n + j] lists the k with E(i, k) = E(j, k) = 1.
  std::vector<std::vector<std::vector<std::size_t>>> common(axes);
  for (std::size_t axis = 0; axis < axes; ++axis) {
    const ZetaMatrix& e = d.factors[axis];
    const std::size_t n = e.rows();
    common[axis].resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (e(i, k) && e(j, k)) common[axis][i * n + j].push_back(k);
  }

  RationalMatrix a(total, total);
  std::vector<const std::vector<std::size_t>*> lists(axes);
  for (std::size_t p = 0; p < total; ++p) {
    const auto ip = order.multi(p);
    for (std::size_t q = p; q < total; ++q) {
      const auto iq = order.multi(q);
      for (std::size_t axis = 0; axis < axes; ++axis)
        lists[axis] = &common[axis][ip[axis] * order.dims()[axis] + iq[axis]];

      Rational sum = 0;
      std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t axis, std::size_t offset) {
        if (axis == axes) {
          sum += d.diag[offset];
          return;
        }
        for (std::size_t k : *lists[axis]) walk(axis + 1, offset + k * order.stride(axis));
      };
      walk(0, 0);
      a(p, q) = sum;
      a(q, p) = std::move(sum);
    }
  }
  return MeetMatrix{d.indexed_set(), std::move(a)};
}

RankCollapse rank_collapse(const ElementSubset& s, const LatticeFunction& f) {
  const auto& composition = f.meet_composition();
  if (!composition) throw NotDiagonalForm("rank collapse needs f supplied as g(x_1 ^ ... ^ x_d)");
  if (!(composition->base == s.family()))
    throw NotDiagonalForm("f is meet-composed over a different family than S");
  if (!s.meet_closed()) throw NotMeetClosed("rank collapse needs a meet closed S");

  const std::size_t d = static_cast<std::size_t>(composition->copies);
  const std::size_t n = s.size();
  ElementSubset full = cartesian_product(std::vector<ElementSubset>(d, s));
  MeetMatrix full_matrix = meet_matrix(full, f);
  MeetMatrix principal = meet_matrix(s, *composition->g);

  std::size_t diagonal_step = 0;
  for (std::size_t k = 0, p = 1; k < d; ++k, p *= n) diagonal_step += p;
  std::vector<std::size_t> diagonal_rows(n);
  for (std::size_t i = 0; i < n; ++i) diagonal_rows[i] = i * diagonal_step;

  const OrderMap order(std::vector<std::size_t>(d, n));
  const LatticeFamily& base = s.family();
  std::vector<std::size_t> representative(full.size());
  bool rows_ok = true;
  for (std::size_t row = 0; row < full.size(); ++row) {
    const auto multi = order.multi(row);
    Point w = s[multi[0]];
    for (std::size_t k = 1; k < d; ++k) w = base.meet(w, s[multi[k]]);
    const auto idx = s.index_of(w);
    if (!idx) throw NotMeetClosed("meet of a row's coordinates left S");
    representative[row] = diagonal_rows[*idx];
    for (std::size_t col = 0; col < full.size() && rows_ok; ++col)
      rows_ok = full_matrix.entries(row, col) == full_matrix.entries(representative[row], col);
  }

  const bool principal_ok = principal_submatrix(full_matrix.entries, diagonal_rows) == principal.entries;
  return RankCollapse{std::move(full),          std::move(full_matrix), std::move(diagonal_rows),
                      std::move(representative), std::move(principal),   rows_ok,
                      principal_ok};
}

}  // namespace meetpd
