#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "meetpd/element_subset.hpp"
#include "meetpd/lattice_function.hpp"
#include "meetpd/rational.hpp"

namespace meetpd {

/// The meet matrix (S)_f with A(i, j) = f(x_i ^ x_j).
struct MeetMatrix {
  ElementSubset subset;
  RationalMatrix entries;

  std::size_t size() const { return entries.rows(); }
};

MeetMatrix meet_matrix(const ElementSubset& s, const LatticeFunction& f);

/// Bijection between multi-indices over dims n_1 x ... x n_d and flat
/// indices in lexicographic order (last axis fastest).
class OrderMap {
 public:
  explicit OrderMap(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return size_; }
  std::size_t flat(const std::vector<std::size_t>& multi) const;
  std::vector<std::size_t> multi(std::size_t flat) const;
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t size_;
};

using ZetaMatrix = DenseMatrix<std::uint8_t>;

/// (E1 (x) ... (x) Ed) diag(lambda) (E1 (x) ... (x) Ed)^T with each E_k the
/// zeta matrix of S_k: E_k(i, j) = 1 iff x_j <= x_i.
struct Decomposition {
  std::vector<ElementSubset> subsets;
  std::vector<ZetaMatrix> factors;
  std::vector<Rational> diag;
  OrderMap order_map;

  /// S_1 x ... x S_d in the flat order.
  ElementSubset indexed_set() const;
};

ZetaMatrix zeta_matrix(const ElementSubset& s);

/// E D E^T for a lower closed S, with d_i = (f_r * mu_P)(0, x_i).
/// Throws NotLowerClosed.
Decomposition ldl_lower_closed(const ElementSubset& s, const LatticeFunction& f);

/// Kronecker decomposition of (S x T)_f for meet closed S and T, where f
/// lives on the product family. Lambda(i, j) = sum_{x_k <= x_i, y_l <= y_j}
/// f(x_k, y_l) mu_S(x_k, x_i) mu_T(y_l, y_j). Throws NotMeetClosed.
Decomposition kron_decompose(const ElementSubset& s, const ElementSubset& t, const LatticeFunction& f);

/// d-factor version; Lambda is obtained by applying the restricted Moebius
/// transform of each S_k along its own axis.
Decomposition kron_decompose_d(const std::vector<ElementSubset>& subsets, const LatticeFunction& f);

/// Rebuilds the meet matrix from the structured factors without forming
/// the Kronecker product.
MeetMatrix reconstruct(const Decomposition& d);

/// Factors of the rank-collapse argument for f(x_1..x_d) = g(x_1 ^ ... ^ x_d)
/// on the full grid S^d.
struct RankCollapse {
  ElementSubset full;
  MeetMatrix full_matrix;
  std::vector<std::size_t> diagonal_rows;   // flat index of (i, i, ..., i)
  std::vector<std::size_t> representative;  // per row: the diagonal row it equals
  MeetMatrix principal;                     // (S)_g
  bool rows_verified = false;               // every row equals its representative
  bool principal_verified = false;          // full_matrix on diagonal_rows == (S)_g
};

/// Throws NotDiagonalForm unless f was built by meet_composed over s's family.
RankCollapse rank_collapse(const ElementSubset& s, const LatticeFunction& f);

}  // namespace meetpd
