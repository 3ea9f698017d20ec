#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meetpd/lattice_function.hpp"
#include "meetpd/pd_analysis.hpp"
#include "meetpd/rational.hpp"

namespace meetpd {

/// Prime factorization as (prime, exponent) pairs in increasing order.
/// Uses a smallest-prime-factor sieve that grows to the largest n requested.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// The arithmetic Moebius function.
int mobius_arith(std::int64_t n);

/// Componentwise gcd of two tuples. Throws ArityMismatch.
Point gcd_d(const Point& x, const Point& y);

/// A function Z_+^d -> Q, optionally known to factor as g_1(i_1)...g_d(i_d).
class ArithmeticFunction {
 public:
  ArithmeticFunction(int arity, LatticeFunction::Evaluator evaluator, std::string name);
  explicit ArithmeticFunction(LatticeFunction f);

  /// f(i_1..i_d) = g_1(i_1) ... g_d(i_d) for univariate g_k.
  static ArithmeticFunction factored(const std::vector<ArithmeticFunction>& parts);

  Rational operator()(const Point& x) const;
  int arity() const { return f_.arity(); }
  const std::string& name() const { return f_.description(); }

  const std::optional<std::vector<LatticeFunction>>& factors() const { return factors_; }

  ArithmeticFunction renamed(std::string name) const;
  ArithmeticFunction certify(bool flag = true) const;

  /// The same function viewed on the d-fold divisor lattice.
  const LatticeFunction& lattice_function() const { return f_; }

 private:
  LatticeFunction f_;
  std::optional<std::vector<LatticeFunction>> factors_;
};

/// (f *_d g)(i) = sum over k_j | i_j of f(k) g(i / k).
Rational dirichlet_convolve_d(const ArithmeticFunction& f, const ArithmeticFunction& g, const Point& point);
ArithmeticFunction dirichlet_convolve_d(const ArithmeticFunction& f, const ArithmeticFunction& g);

ArithmeticFunction zeta_d(int d);
ArithmeticFunction delta_d(int d);
ArithmeticFunction mu_d(int d);
/// gcd(i_1, ..., i_d)^alpha; carries its meet composition over the divisor lattice.
ArithmeticFunction gcd_pow(int d, long alpha);
/// lcm(i_1, ..., i_d)^alpha.
ArithmeticFunction lcm_pow(int d, long alpha);
/// tau(i_1) ... tau(i_d), the number of points below i in the divisor lattice.
ArithmeticFunction divisor_count(int d);
/// Bivariate Ramanujan sum C(m, n).
ArithmeticFunction ramanujan_sum();
/// g(i_1 ^ ... ^ i_d) for univariate g, meets taken in the divisor lattice.
ArithmeticFunction meet_composed_arith(const ArithmeticFunction& g, int d);

/// Resolves `name[:param]`, for example `gcd_pow:1`, `mu_d`,
/// `meet_composed:lcm_pow:-1`. Throws UnknownBuiltin.
ArithmeticFunction builtin(const std::string& spec, int d);

/// C(m, n) = sum_{e | gcd(m, n)} e mu(n / e).
Integer ramanujan_C(std::int64_t m, std::int64_t n);

/// (mu *_1 mu)(n) by direct convolution.
Integer mu_star_mu(std::int64_t n);

/// Evaluates (f *_d mu_d) on {1..m}^d in lexicographic order; negative
/// verdict at the first negative point.
PDVerdict pd_check_grid(const ArithmeticFunction& f, int m);

enum class SignClass { nonnegative, nonpositive, zero, mixed };
std::string to_string(SignClass c);

struct FactoredCheck {
  PDVerdict verdict;
  /// s_k(j) = (g_k *_1 mu)(j) for j = 1..m.
  std::vector<std::vector<Rational>> inverted;
  std::vector<SignClass> classes;
  /// Indices k (0-based) whose inverted values are all <= 0 and not all zero.
  std::vector<std::size_t> nonpositive_set;
  std::vector<std::size_t> mixed;
};

/// Sign-pattern test for f = g_1 (x) ... (x) g_d on {1..m}^d. Identically
/// zero coordinates go to the complement of the nonpositive set, and make
/// f vanish on the grid.
FactoredCheck pd_check_factored(const std::vector<ArithmeticFunction>& g, int m);

}  // namespace meetpd
