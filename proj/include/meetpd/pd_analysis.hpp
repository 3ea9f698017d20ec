#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meetpd/element_subset.hpp"
#include "meetpd/lattice_function.hpp"
#include "meetpd/meet_matrix.hpp"
#include "meetpd/psd.hpp"

namespace meetpd {

enum class Verdict { positive_definite_on_tested_covering, not_positive_definite };

std::string to_string(Verdict v);

struct Witness {
  enum class Kind { element, vector };
  Kind kind = Kind::element;
  /// Kind::element: a point whose inverted value (f_r * mu)(0, x) is negative.
  Point element;
  std::string element_label;
  /// Kind::vector: a subset S and v with v^T (S)_f v < 0.
  std::vector<Point> subset;
  std::vector<std::string> subset_labels;
  std::vector<Rational> vector;
  /// The replayed negative number.
  Rational value;
};

struct PDVerdict {
  Verdict verdict = Verdict::positive_definite_on_tested_covering;
  std::optional<Witness> witness;
  /// Covering index m that was examined.
  int tested_bound = 0;
  /// Positive definiteness holds by construction, not only up to tested_bound.
  bool certificate = false;

  bool positive() const { return verdict == Verdict::positive_definite_on_tested_covering; }
};

/// (f_r * mu_S)(0, x_i) for every member of a lower closed S, in S's order.
std::vector<Rational> inverted_values(const ElementSubset& s, const LatticeFunction& f);

/// The vector v_j = mu_S(x_j, x_i), for which v^T (S)_f v equals the
/// inverted value at x_i.
std::vector<Rational> element_witness_vector(const ElementSubset& s, std::size_t i);

/// Diagonal criterion on the lower closed covering set S_bound: negative on
/// the first member (in linear-extension order) with a negative inverted
/// value. Throws NoLeastElement.
PDVerdict pd_criterion(const LatticeFunction& f, const LatticeFamily& family, int bound);

/// Replays a witness against f and reports the recomputed value.
Rational replay_witness(const Witness& w, const LatticeFunction& f, const LatticeFamily& family);

struct CoveringCheck {
  int m = 0;
  bool criterion_positive = false;
  bool oracle_psd = false;
  bool oracle_exact = false;
  double min_eigenvalue = 0.0;
  bool agree() const { return criterion_positive == oracle_psd; }
};

struct CoveringEquivalenceReport {
  std::vector<CoveringCheck> checks;
  bool all_agree() const;
};

/// Runs the criterion and the eigenvalue oracle on (S_m)_f for m = 1..bound.
/// Explicit families have a single covering set, so only m = 1 is checked.
CoveringEquivalenceReport check_covering_equivalence(const LatticeFunction& f, const LatticeFamily& family,
                                                     int bound, double tol = kDefaultPsdTolerance);

struct MonotonicityReport {
  bool nonnegative = true;
  bool monotone = true;
  std::optional<Point> negative_element;
  /// (x, y) with x <= y and f(x) > f(y).
  std::optional<std::pair<Point, Point>> violation;
  bool ok() const { return nonnegative && monotone; }
};

MonotonicityReport check_monotonicity(const LatticeFunction& f, const ElementSubset& s);

/// Positive definiteness preserving combinators. The certificate flag of the
/// result is the conjunction of the inputs' flags.
LatticeFunction scale(const LatticeFunction& f, const Rational& a);
LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction pointwise_mul(const LatticeFunction& f, const LatticeFunction& g);

/// True iff (S x T)_f = (S)_g (x) (T)_h for f(a, b) = g(a) h(b).
bool factorable_identity(const LatticeFunction& g, const LatticeFunction& h, const ElementSubset& s,
                         const ElementSubset& t);

struct FactorableResult {
  PDVerdict verdict;
  LatticeFunction product;
  bool identity_holds = false;
};

/// Certifies f(a, b) = g(a) h(b) on the product family. Throws
/// ComponentNotCertified unless g and h both pass pd_criterion at `bound`.
FactorableResult factorable_pd(const LatticeFunction& g, const LatticeFamily& g_family, const LatticeFunction& h,
                               const LatticeFamily& h_family, int bound);

}  // namespace meetpd
