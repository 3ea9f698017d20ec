#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "meetpd/errors.hpp"

namespace meetpd {

using Rational = mpq_class;
using Integer = mpz_class;

/// Formats as `p/q`, or `p` when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`.
Rational parse_rational(std::string_view text);

/// Integer power with a possibly negative exponent; 0^negative is an error.
Rational rational_pow(const Rational& base, long exponent);

/// Row-major dense matrix with value semantics.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix principal_submatrix(const RationalMatrix& a, const std::vector<std::size_t>& index);

/// x^T A x, exact.
Rational quadratic_form(const RationalMatrix& a, const std::vector<Rational>& x);

/// Max-row-sum norm in double precision.
double infinity_norm(const RationalMatrix& a);

}  // namespace meetpd
