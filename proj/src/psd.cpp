#include "meetpd/psd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "meetpd/errors.hpp"

namespace meetpd {

Inertia inertia_of_diagonal(const std::vector<Rational>& diag) {
  Inertia out;
  for (const auto& v : diag) {
    const int s = sgn(v);
    if (s > 0) ++out.positive;
    else if (s < 0) ++out.negative;
    else ++out.zero;
  }
  return out;
}

Inertia exact_inertia(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw DimensionMismatch("inertia needs a symmetric matrix");
  const std::size_t n = a.rows();

  // Positive scaling by the common denominator preserves inertia.
  Integer scale = 1;
  for (const auto& v : a.data()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
  DenseMatrix<Integer> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = a(i, j) * Rational(scale);
      m(i, j) = scaled.get_num();
    }

  Inertia out;
  Integer prev = 1;
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (m(i, i) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (m(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t x = k; x < n; ++x) m(pi, x) += m(pj, x);
      for (std::size_t x = k; x < n; ++x) m(x, pi) += m(x, pj);
      pivot = pi;
    }
    if (pivot != k) {
      for (std::size_t x = k; x < n; ++x) std::swap(m(k, x), m(pivot, x));
      for (std::size_t x = k; x < n; ++x) std::swap(m(x, k), m(x, pivot));
    }

    const Integer p = m(k, k);
    if (sgn(p) * sgn(prev) > 0) ++out.positive;
    else ++out.negative;

    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Integer v = p * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
        m(j, i) = std::move(v);
      }
    prev = p;
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

ExactPsdResult exact_psd(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw DimensionMismatch("PSD test needs a symmetric matrix");
  const std::size_t n = a.rows();
  RationalMatrix s = a;
  RationalMatrix l(n, n, Rational(0));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  ExactPsdResult result;

  // v^T A v = w^T S w for v = P^T L^{-T} [0; w], with w living on the
  // trailing (not yet pivoted) indices k..n-1.
  auto lift = [&](std::size_t k, const std::vector<Rational>& w) {
    std::vector<Rational> top(k, Rational(0));
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = k; r < n; ++r)
        if (w[r - k] != 0) top[c] += l(r, c) * w[r - k];
    for (std::size_t c = k; c-- > 0;)
      for (std::size_t r = c + 1; r < k; ++r) top[c] -= l(r, c) * top[r];
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < k; ++i) v[perm[i]] = -top[i];
    for (std::size_t i = k; i < n; ++i) v[perm[i]] = w[i - k];
    return v;
  };

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k; i < n; ++i)
      if (s(i, i) < 0) {
        std::vector<Rational> w(n - k, Rational(0));
        w[i - k] = 1;
        result.witness = lift(k, w);
        result.witness_value = s(i, i);
        return result;
      }

    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (s(i, i) > 0) {
        pivot = i;
        break;
      }

    if (pivot == n) {
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (i != j && s(i, j) != 0) {
            // Diagonal is zero here: (t e_i + e_j)^T S (t e_i + e_j) = 2 t s_ij + s_jj.
            const Rational t = -(s(j, j) + 1) / (2 * s(i, j));
            std::vector<Rational> w(n - k, Rational(0));
            w[i - k] = t;
            w[j - k] = 1;
            result.witness = lift(k, w);
            result.witness_value = 2 * t * s(i, j) + s(j, j);
            return result;
          }
      result.psd = true;
      result.rank = k;
      return result;
    }

    if (pivot != k) {
      for (std::size_t x = 0; x < n; ++x) std::swap(s(k, x), s(pivot, x));
      for (std::size_t x = 0; x < n; ++x) std::swap(s(x, k), s(x, pivot));
      for (std::size_t c = 0; c < k; ++c) std::swap(l(k, c), l(pivot, c));
      std::swap(perm[k], perm[pivot]);
    }

    const Rational p = s(k, k);
    l(k, k) = 1;
    for (std::size_t i = k + 1; i < n; ++i) l(i, k) = s(i, k) / p;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (l(i, k) == 0) continue;
      for (std::size_t j = i; j < n; ++j) {
        s(i, j) -= l(i, k) * s(k, j);
        if (j != i) s(j, i) = s(i, j);
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      s(i, k) = 0;
      s(k, i) = 0;
    }
  }
  result.psd = true;
  result.rank = n;
  return result;
}

namespace {

Eigen::MatrixXd to_double(const RationalMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return out;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const RationalMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_double(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

PsdReport psd_oracle(const RationalMatrix& m, double tol) {
  if (tol < 0) throw Error("PSD tolerance must be nonnegative");
  if (!m.is_symmetric()) throw DimensionMismatch("PSD oracle needs a symmetric matrix");
  PsdReport report;
  report.threshold = -tol * std::max(1.0, infinity_norm(m));

  bool float_ok = false;
  Eigen::VectorXd min_vector;
  if (m.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_double(m));
    if (solver.info() == Eigen::Success) {
      float_ok = true;
      report.min_eigenvalue = solver.eigenvalues()(0);
      min_vector = solver.eigenvectors().col(0);
    }
  } else {
    float_ok = true;
  }

  if (m.rows() <= kExactPsdLimit) {
    ExactPsdResult exact = exact_psd(m);
    report.exact = true;
    report.psd = exact.psd;
    report.witness = std::move(exact.witness);
    report.witness_value = exact.witness_value;
    return report;
  }

  if (!float_ok) throw NumericalFailure("eigensolver failed on a " + std::to_string(m.rows()) + "x" +
                                        std::to_string(m.rows()) + " matrix beyond the exact-path limit");
  report.psd = report.min_eigenvalue >= report.threshold;
  if (!report.psd) {
    // Doubles convert to rationals exactly; keep the eigenvector only if it
    // is an exact certificate.
    std::vector<Rational> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = Rational(min_vector(static_cast<Eigen::Index>(i)));
    Rational value = quadratic_form(m, v);
    if (value < 0) {
      report.witness = std::move(v);
      report.witness_value = std::move(value);
    }
  }
  return report;
}

}  // namespace meetpd
