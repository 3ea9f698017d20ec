#include <random>

#include "doctest.h"
#include "meetpd/arithmetic.hpp"
#include "meetpd/errors.hpp"
#include "meetpd/meet_matrix.hpp"
#include "meetpd/psd.hpp"
#include "support.hpp"

using namespace meetpd;

namespace {

RationalMatrix from_ints(std::size_t n, std::initializer_list<long> values) {
  RationalMatrix m(n, n);
  std::size_t k = 0;
  for (long v : values) m(k / n, k % n) = v, ++k;
  return m;
}

std::vector<Point> pts(std::initializer_list<std::int64_t> xs) {
  std::vector<Point> out;
  for (auto x : xs) out.push_back({x});
  return out;
}

}  // namespace

TEST_CASE("LCM matrix on {1,2}^2") {
  const auto fam = LatticeFamily::divisor(2);
  const MeetMatrix m = meet_matrix(ElementSubset::covering(fam, 2), lcm_pow(2, 1).lattice_function());
  CHECK(m.entries == from_ints(4, {1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 2, 2, 1, 2, 2, 2}));
  const auto c = testing::characteristic_polynomial(m.entries);
  CHECK(c == std::vector<Rational>{-1, 1, 6, -7, 1});
  const auto ev = symmetric_eigenvalues(m.entries);
  CHECK(ev[0] == doctest::Approx(-0.3954).epsilon(1e-3));
  CHECK(ev[3] == doctest::Approx(5.972).epsilon(1e-3));
  CHECK_FALSE(psd_oracle(m).psd);
  CHECK(exact_inertia(m.entries) == Inertia{3, 1, 0});
}

TEST_CASE("GCD matrix on D4 and its LDL pivots") {
  const auto fam = LatticeFamily::divisor(1);
  const auto f = gcd_pow(1, 1).lattice_function();
  const MeetMatrix m = meet_matrix(ElementSubset::covering(fam, 4), f);
  CHECK(m.entries == from_ints(4, {1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 3, 1, 1, 2, 1, 4}));
  const Decomposition d = ldl_lower_closed(ElementSubset::covering(fam, 4), f);
  CHECK(d.diag == std::vector<Rational>{1, 1, 2, 2});
  CHECK(reconstruct(d).entries == m.entries);
  CHECK_THROWS_AS(ldl_lower_closed(ElementSubset(fam, pts({2, 4})), f), NotLowerClosed);
}

TEST_CASE("Euler phi as Lambda for gcd on {1..12}") {
  const auto fam = LatticeFamily::divisor(1);
  const Decomposition d = kron_decompose_d({ElementSubset::covering(fam, 12)}, gcd_pow(1, 1).lattice_function());
  CHECK(d.diag == std::vector<Rational>{1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4});
}

TEST_CASE("m = 1 gives the single value") {
  const auto fam = LatticeFamily::divisor(2);
  const auto f = lcm_pow(2, 1).lattice_function();
  const auto s1 = ElementSubset::covering(fam.slice(0, 1), 1);
  const auto s2 = ElementSubset::covering(fam.slice(1, 1), 1);
  const Decomposition d = kron_decompose(s1, s2, f);
  CHECK(d.diag == std::vector<Rational>{1});
}

TEST_CASE("two-factor and d-factor decompositions agree") {
  std::mt19937 rng(31);
  const auto fam = LatticeFamily::divisor(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_meet_closed(rng, fam.slice(0, 1), 10, 3);
    const auto t = testing::random_meet_closed(rng, fam.slice(1, 1), 10, 3);
    const auto f = testing::random_function(2, trial);
    const Decomposition a = kron_decompose(s, t, f);
    const Decomposition b = kron_decompose_d({s, t}, f);
    CHECK(a.diag == b.diag);
    CHECK(reconstruct(a).entries == meet_matrix(a.indexed_set(), f).entries);
  }
}

TEST_CASE("Lambda for the product x1 x2 x3 on {1,2}^3 is all ones") {
  const auto fam = LatticeFamily::divisor(3);
  const auto f = LatticeFunction(3, [](const Point& x) { return Rational(x[0] * x[1] * x[2]); }, "x1x2x3");
  std::vector<ElementSubset> subsets;
  for (int k = 0; k < 3; ++k) subsets.push_back(ElementSubset::covering(fam.slice(k, 1), 2));
  const Decomposition d = kron_decompose_d(subsets, f);
  CHECK(d.diag == std::vector<Rational>(8, Rational(1)));
  CHECK(d.order_map.flat({1, 0, 1}) == 5);
  CHECK(d.order_map.multi(6) == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("lambda for g = (1,3,2) on D4 through the inverted values") {
  const auto fam = LatticeFamily::divisor(1);
  const auto g = table_function(1, {{{1}, 1}, {{2}, 3}, {{4}, 2}});
  const auto d = ldl_lower_closed(ElementSubset(fam, pts({1, 2, 4})), g);
  CHECK(d.diag == std::vector<Rational>{1, 2, -1});
}

TEST_CASE("decomposition errors") {
  const auto fam = LatticeFamily::divisor(2);
  const auto f = gcd_pow(2, 1).lattice_function();
  const auto bad = ElementSubset(fam.slice(0, 1), pts({4, 6}));
  const auto ok = ElementSubset::covering(fam.slice(1, 1), 2);
  CHECK_THROWS_AS(kron_decompose(bad, ok, f), NotMeetClosed);
  CHECK_THROWS_AS(kron_decompose_d({ok}, f), DimensionMismatch);
}

TEST_CASE("reconstruction and signature on random meet closed products") {
  std::mt19937 rng(404);
  const std::vector<LatticeFamily> atoms = {LatticeFamily::divisor(1), LatticeFamily::min(1)};
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<ElementSubset> subsets;
    std::vector<LatticeFamily> parts;
    for (int k = 0; k < d; ++k) {
      parts.push_back(atoms[(trial + k) % 2]);
      subsets.push_back(testing::random_meet_closed(rng, parts.back(), 9, d == 3 ? 2 : 3));
    }
    const auto f = testing::random_function(d, 1000 + trial);
    const Decomposition dec = kron_decompose_d(subsets, f);
    const MeetMatrix direct = meet_matrix(dec.indexed_set(), f);
    CHECK(reconstruct(dec).entries == direct.entries);
    CHECK(inertia_of_diagonal(dec.diag) == exact_inertia(direct.entries));
    // Lambda against the brute-force (E^-1) A (E^-T).
    RationalMatrix e(direct.size(), direct.size(), Rational(0));
    const auto set = dec.indexed_set();
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = 0; j < set.size(); ++j)
        if (set.family().leq(set[j], set[i])) e(i, j) = 1;
    const auto einv = testing::inverse(e);
    const auto lambda = multiply(multiply(einv, direct.entries), transpose(einv));
    for (std::size_t i = 0; i < set.size(); ++i) CHECK(lambda(i, i) == dec.diag[i]);
  }
}

TEST_CASE("rank collapse for gcd on the full grid") {
  const auto base = LatticeFamily::divisor(1);
  const auto s = ElementSubset::covering(base, 3);
  const auto f = gcd_pow(2, 1).lattice_function();
  const RankCollapse rc = rank_collapse(s, f);
  CHECK(rc.rows_verified);
  CHECK(rc.principal_verified);
  CHECK(rc.diagonal_rows == std::vector<std::size_t>{0, 4, 8});
  CHECK(exact_psd(rc.full_matrix.entries).rank == 3);
  CHECK(rc.principal.entries == from_ints(3, {1, 1, 1, 1, 2, 1, 1, 1, 3}));
  CHECK_THROWS_AS(rank_collapse(s, lcm_pow(2, 1).lattice_function()), NotDiagonalForm);
}

TEST_CASE("exact PSD witness is a negative direction") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> v(-4, 4);
  int negatives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    RationalMatrix b(n, 2, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = v(rng);
    RationalMatrix a = multiply(b, transpose(b));  // PSD, rank <= 2
    if (trial % 2) a(0, 0) -= v(rng) * v(rng) + 1;  // usually breaks it
    const auto r = exact_psd(a);
    const auto inertia = exact_inertia(a);
    CHECK(r.psd == (inertia.negative == 0));
    if (r.psd) {
      CHECK(r.rank == inertia.positive);
    } else {
      ++negatives;
      REQUIRE(r.witness.has_value());
      CHECK(quadratic_form(a, *r.witness) == r.witness_value);
      CHECK(r.witness_value < 0);
    }
    CHECK(psd_oracle(a).psd == r.psd);
  }
  CHECK(negatives > 10);
}

TEST_CASE("zero diagonal with off-diagonal entry is indefinite") {
  const RationalMatrix a = from_ints(2, {0, 1, 1, 0});
  CHECK(exact_inertia(a) == Inertia{1, 1, 0});
  const auto r = exact_psd(a);
  CHECK_FALSE(r.psd);
  CHECK(quadratic_form(a, *r.witness) < 0);
}

TEST_CASE("Faddeev-LeVerrier oracle against exact inertia on random symmetric matrices") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = v(rng);
    const auto c = testing::characteristic_polynomial(a);
    const auto in = exact_inertia(a);
    // Number of zero eigenvalues = multiplicity of the root 0.
    std::size_t zeros = 0;
    while (zeros < c.size() && c[zeros] == 0) ++zeros;
    CHECK(in.zero == zeros);
    // det = product of eigenvalues: sign agrees with the negative count.
    if (zeros == 0) CHECK((c[0] * (n % 2 ? -1 : 1) > 0) == (in.negative % 2 == 0));
  }
}
