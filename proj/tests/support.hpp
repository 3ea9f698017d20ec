#pragma once

// Test-only oracles and generators. The oracles here are deliberately naive
// (explicit zeta matrices, Gauss-Jordan inversion, Faddeev-LeVerrier) and do
// not share code paths with the library routines they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "meetpd/element_subset.hpp"
#include "meetpd/lattice_function.hpp"
#include "meetpd/rational.hpp"

namespace meetpd::testing {

/// Gauss-Jordan inverse; throws if singular.
inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw std::runtime_error("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= factor * m(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

/// Coefficients c_0..c_n of det(lambda I - A) = sum c_k lambda^k.
inline std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix m(n, n, Rational(0));
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix am = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = am;
    const RationalMatrix next = multiply(a, m);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += next(i, i);
    c[n - k] = -trace / Rational(static_cast<long>(k));
  }
  return c;
}

/// zeta matrix Z(i, j) = [x_i <= x_j] on a member list, straight from the family.
inline RationalMatrix brute_zeta(const LatticeFamily& family, const std::vector<Point>& xs) {
  RationalMatrix z(xs.size(), xs.size(), Rational(0));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (family.leq(xs[i], xs[j])) z(i, j) = 1;
  return z;
}

/// Moebius matrix as the inverse of the zeta matrix.
inline RationalMatrix brute_mobius(const LatticeFamily& family, const std::vector<Point>& xs) {
  return inverse(brute_zeta(family, xs));
}

/// A(i, j) = f(x_i ^ x_j), written out without the library's meet_matrix.
inline RationalMatrix brute_meet_matrix(const LatticeFamily& family, const std::vector<Point>& xs,
                                        const LatticeFunction& f) {
  RationalMatrix a(xs.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) a(i, j) = f(family.meet(xs[i], xs[j]));
  return a;
}

/// Deterministic pseudo-random rational function: values depend only on
/// (seed, point), numerators in [lo, hi], denominators in {1, 2, 3}.
inline LatticeFunction random_function(int arity, std::uint64_t seed, int lo = -3, int hi = 6) {
  return LatticeFunction(
      arity,
      [seed, lo, hi](const Point& x) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(PointHash{}(x)), static_cast<std::uint32_t>(x.size())};
        std::mt19937 rng(seq);
        std::uniform_int_distribution<int> num(lo, hi);
        std::uniform_int_distribution<int> den(1, 3);
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
      },
      "random#" + std::to_string(seed));
}

/// Random poset on n elements from a random DAG over index order.
inline Poset random_poset(std::mt19937& rng, std::size_t n, double p) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(labels[i], labels[j]);
  // Shuffle labels so the element order is not already a linear extension.
  std::vector<std::string> shuffled = labels;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  return Poset::from_covers(shuffled, edges);
}

/// Random meet semilattice: subsets of a small universe closed under
/// intersection, ordered by inclusion. Always contains a least element.
inline std::shared_ptr<const MeetSemilattice> random_semilattice(std::mt19937& rng, std::size_t generators,
                                                                 unsigned universe_bits = 5) {
  std::uniform_int_distribution<unsigned> mask(0, (1u << universe_bits) - 1);
  std::vector<unsigned> sets;
  for (std::size_t i = 0; i < generators; ++i) sets.push_back(mask(rng));
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = sets.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const unsigned m = sets[i] & sets[j];
        if (std::find(sets.begin(), sets.end(), m) == sets.end()) {
          sets.push_back(m);
          grew = true;
        }
      }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::shuffle(sets.begin(), sets.end(), rng);
  std::vector<std::string> labels;
  for (unsigned s : sets) labels.push_back("s" + std::to_string(s));
  return std::make_shared<const MeetSemilattice>(Poset::from_relation(
      labels, [&](std::size_t a, std::size_t b) { return (sets[a] & ~sets[b]) == 0; }));
}

/// Random meet closed subset of {1..bound}^arity in the family: a random
/// sample closed under meets.
inline ElementSubset random_meet_closed(std::mt19937& rng, const LatticeFamily& family, int bound,
                                        std::size_t samples) {
  const auto pool = family.covering_set(bound);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Point> chosen;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point& p = pool[pick(rng)];
    if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
  }
  return meet_closure(ElementSubset(family, chosen));
}

}  // namespace meetpd::testing
