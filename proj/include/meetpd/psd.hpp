#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "meetpd/meet_matrix.hpp"
#include "meetpd/rational.hpp"

namespace meetpd {

/// Counts of positive, negative and zero eigenvalues.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

Inertia inertia_of_diagonal(const std::vector<Rational>& diag);

/// Exact inertia of a symmetric rational matrix by fraction-free symmetric
/// elimination. A zero diagonal with a nonzero row is handled by the
/// congruence row_i += row_j, which makes the new diagonal 2 a_ij.
Inertia exact_inertia(const RationalMatrix& a);

struct ExactPsdResult {
  bool psd = false;
  std::size_t rank = 0;
  /// For a negative result: v with v^T A v = witness_value < 0.
  std::optional<std::vector<Rational>> witness;
  Rational witness_value;
};

/// Rational LDL^T with symmetric diagonal pivoting. Zero pivots are skipped
/// only when the remaining Schur complement is entirely zero.
ExactPsdResult exact_psd(const RationalMatrix& a);

struct PsdReport {
  bool psd = false;
  /// True when the verdict comes from the exact path.
  bool exact = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  std::optional<std::vector<Rational>> witness;
  Rational witness_value;
};

inline constexpr double kDefaultPsdTolerance = 1e-9;
inline constexpr std::size_t kExactPsdLimit = 64;

/// Eigenvalue oracle: PSD iff lambda_min >= -tol * max(1, ||M||_inf).
/// Matrices up to kExactPsdLimit rows are also decided exactly, and the
/// exact answer wins. Throws NumericalFailure if the eigensolver fails and
/// the exact path is not available.
PsdReport psd_oracle(const RationalMatrix& m, double tol = kDefaultPsdTolerance);
inline PsdReport psd_oracle(const MeetMatrix& m, double tol = kDefaultPsdTolerance) {
  return psd_oracle(m.entries, tol);
}

/// Eigenvalues in ascending order (double precision).
std::vector<double> symmetric_eigenvalues(const RationalMatrix& m);

}  // namespace meetpd
