// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check is exact unless it names a tolerance.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "meetpd/arithmetic.hpp"
#include "meetpd/meet_matrix.hpp"
#include "meetpd/pd_analysis.hpp"
#include "meetpd/psd.hpp"
#include "support.hpp"

using namespace meetpd;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool run_criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = out.ok && in_time;
  std::ostringstream line;
  line << "criterion " << id << " [" << title << "]: " << (pass ? "PASS" : "FAIL") << " (" << secs << " s, limit "
       << limit_seconds << " s)";
  if (!out.ok) line << " - " << out.detail;
  if (out.ok && !out.note.empty()) line << " - " << out.note;
  if (!in_time) line << " - over time limit";
  std::cout << line.str() << std::endl;
  return pass;
}

// f(x) = sum_{z <= x} g(z) with g allowed to be slightly negative, so that
// verdicts land on both sides of the boundary.
LatticeFunction near_boundary(const LatticeFamily& fam, std::uint64_t seed) {
  const auto g = testing::random_function(fam.arity(), seed, -1, 6);
  return LatticeFunction(
      fam.arity(),
      [fam, g](const Point& x) {
        Rational s = 0;
        for (const Point& z : fam.lower_set(x)) s += g(z);
        return s;
      },
      "near_boundary");
}

Outcome lcm_counterexample() {
  Outcome o;
  const auto fam = LatticeFamily::divisor(2);
  const auto mm = meet_matrix(ElementSubset::covering(fam, 2), lcm_pow(2, 1).lattice_function());
  const auto c = testing::characteristic_polynomial(mm.entries);
  o.require(c == std::vector<Rational>{-1, 1, 6, -7, 1}, "characteristic polynomial differs");
  // (l - 1)(l^3 - 6 l^2 + 1) expanded.
  const std::vector<Rational> a = {-1, 1}, b = {1, 0, -6, 1};
  std::vector<Rational> prod(5, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  o.require(prod == c, "factorization does not match");
  const auto report = psd_oracle(mm);
  o.require(!report.psd, "oracle reports PSD");
  o.require(exact_inertia(mm.entries).negative == 1, "expected exactly one negative eigenvalue");
  return o;
}

Outcome gcd_positive_definite() {
  Outcome o;
  const auto fam = LatticeFamily::divisor(1);
  const auto id = gcd_pow(1, 1).lattice_function();
  for (int m = 1; m <= 64 && o.ok; ++m) {
    const auto b = meet_matrix(ElementSubset::covering(fam, m), id);
    const auto r = exact_psd(b.entries);
    o.require(r.psd && r.rank == static_cast<std::size_t>(m), "Smith matrix not PD at m=" + std::to_string(m));
  }
  const auto f = gcd_pow(2, 1).lattice_function();
  for (int m = 1; m <= 8 && o.ok; ++m) {
    const auto s = ElementSubset::covering(fam, m);
    const RankCollapse rc = rank_collapse(s, f);
    const auto full = exact_psd(rc.full_matrix.entries);
    o.require(full.psd, "full grid not PSD at m=" + std::to_string(m));
    o.require(full.rank == static_cast<std::size_t>(m), "full grid rank differs from m");
    o.require(rc.rows_verified && rc.principal_verified, "rank collapse not verified");
    o.require(rc.principal.entries == meet_matrix(s, id).entries, "principal submatrix differs from B");
    o.require(principal_submatrix(rc.full_matrix.entries, rc.diagonal_rows) == rc.principal.entries,
              "diagonal rows do not give B");
  }
  return o;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(MEETPD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome ramanujan_non_pd() {
  Outcome o;
  const auto c = ramanujan_sum();
  const auto mu = mu_d(2);
  for (std::int64_t p : {2, 3, 5, 7})
    o.require(dirichlet_convolve_d(c, mu, {1, p}) == -2, "(C * mu)(1, p) != -2 for p=" + std::to_string(p));
  for (std::int64_t m = 1; m <= 24; ++m)
    for (std::int64_t n = 1; n <= 24; ++n) {
      const Rational got = dirichlet_convolve_d(c, mu, {m, n});
      const Rational want = n % m ? Rational(0) : Rational(Integer(m) * mu_star_mu(n / m));
      o.require(got == want, "identity fails at (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  const CliRun r = run_cli("check --fn ramanujan_C --m 6");
  o.require(r.code == 1, "cmd_check exit code " + std::to_string(r.code));
  if (r.code == 1) {
    const auto doc = nlohmann::json::parse(r.out);
    const Point x = doc["witness"]["point"].get<Point>();
    const Rational value = parse_rational(doc["witness"]["value"].get<std::string>());
    o.require(value < 0, "witness value not negative");
    o.require(dirichlet_convolve_d(c, mu, x) == value, "witness does not replay");
  }
  return o;
}

Outcome mu_star_mu_table() {
  Outcome o;
  for (std::int64_t p : {2, 3, 5}) {
    o.require(mu_star_mu(1) == 1, "(mu*mu)(1)");
    o.require(mu_star_mu(p) == -2, "(mu*mu)(p)");
    o.require(mu_star_mu(p * p) == 1, "(mu*mu)(p^2)");
    o.require(mu_star_mu(p * p * p) == 0, "(mu*mu)(p^3)");
    o.require(mu_star_mu(p * p * p * p) == 0, "(mu*mu)(p^4)");
  }
  for (std::int64_t a = 1; a <= 200; ++a)
    for (std::int64_t b = 1; a * b <= 200; ++b)
      if (std::gcd(a, b) == 1)
        o.require(mu_star_mu(a * b) == mu_star_mu(a) * mu_star_mu(b),
                  "multiplicativity fails at " + std::to_string(a) + "*" + std::to_string(b));
  return o;
}

Outcome decomposition_soundness() {
  Outcome o;
  std::mt19937 rng(20261019);
  std::size_t max_size = 0, sum_size = 0, indefinite = 0;
  for (int trial = 0; trial < 200 && o.ok; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<ElementSubset> subsets;
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) {
      const int kind = static_cast<int>(rng() % 3);
      const std::size_t room = std::max<std::size_t>(1, 256 / total);
      const std::size_t samples = 1 + rng() % std::min<std::size_t>(room, d == 1 ? 120 : (d == 2 ? 14 : 5));
      LatticeFamily atom = kind == 0   ? LatticeFamily::divisor(1)
                           : kind == 1 ? LatticeFamily::min(1)
                                       : LatticeFamily::explicit_finite(testing::random_semilattice(rng, 3));
      ElementSubset s = testing::random_meet_closed(rng, atom, d == 1 ? 256 : 24, samples);
      // Shrink until the product stays within 256.
      while (total * s.size() > 256) {
        std::vector<Point> fewer(s.members().begin(), s.members().begin() + s.size() / 2);
        s = meet_closure(ElementSubset(atom, fewer));
      }
      total *= s.size();
      subsets.push_back(s);
    }
    max_size = std::max(max_size, total);
    sum_size += total;
    const auto f = testing::random_function(d, 5000 + trial);
    const Decomposition dec = kron_decompose_d(subsets, f);
    const MeetMatrix direct = meet_matrix(dec.indexed_set(), f);
    o.require(reconstruct(dec).entries == direct.entries, "nonzero residual in trial " + std::to_string(trial));
    const Inertia in = exact_inertia(direct.entries);
    o.require(inertia_of_diagonal(dec.diag) == in, "signature mismatch in trial " + std::to_string(trial));
    if (in.negative > 0) ++indefinite;
  }
  o.require(max_size > 64, "instances too small to be meaningful");
  o.note = "200 instances, mean size " + std::to_string(sum_size / 200) + ", max " + std::to_string(max_size) +
           ", " + std::to_string(indefinite) + " indefinite";
  return o;
}

Outcome criterion_oracle_equivalence() {
  Outcome o;
  std::mt19937 rng(606);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 100 && o.ok; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 8);
    const LatticeFamily fam = trial % 2 ? LatticeFamily::min(d) : LatticeFamily::divisor(d);
    const LatticeFunction f = trial % 3 == 0 ? testing::random_function(d, 9000 + trial, -1, 8)
                                             : near_boundary(fam, 9000 + trial);
    const PDVerdict v = pd_criterion(f, fam, m);
    const PsdReport r = psd_oracle(meet_matrix(ElementSubset::covering(fam, m), f));
    o.require(v.positive() == r.psd, "disagreement in trial " + std::to_string(trial));
    if (v.positive()) {
      ++positives;
    } else {
      ++negatives;
      o.require(v.witness && replay_witness(*v.witness, f, fam) < 0, "witness does not replay negative");
    }
  }
  o.require(positives > 0 && negatives > 0, "only one verdict occurred");
  o.note = std::to_string(positives) + " positive, " + std::to_string(negatives) + " negative, all agree";
  return o;
}

Outcome separable_criterion() {
  Outcome o;
  const int m = 12;
  const auto fam = LatticeFamily::divisor(2);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 50 && o.ok; ++trial) {
    std::vector<ArithmeticFunction> parts;
    for (int k = 0; k < 2; ++k) {
      const int mode = (trial / 2 + k * trial) % 4;
      const LatticeFunction base =
          mode == 0   ? summatory_function(LatticeFamily::divisor(1), testing::random_function(1, 31 * trial + k, 0, 3))
          : mode == 1 ? testing::random_function(1, 31 * trial + k, -3, 4)
          : mode == 2 ? LatticeFunction(1, [g = summatory_function(LatticeFamily::divisor(1),
                                                                   testing::random_function(1, 31 * trial + k, 0, 3))](
                                               const Point& x) { return -g(x); },
                                        "negated")
                      : gcd_pow(1, 1).lattice_function();
      parts.push_back(ArithmeticFunction(base));
    }
    const ArithmeticFunction f = ArithmeticFunction::factored(parts);
    const FactoredCheck fc = pd_check_factored(parts, m);
    const PDVerdict grid = pd_check_grid(f, m);
    o.require(fc.verdict.positive() == grid.positive(), "verdicts differ in trial " + std::to_string(trial));
    (grid.positive() ? positives : negatives)++;
    const auto inv = dirichlet_convolve_d(f, mu_d(2));
    for (const Point& x : fam.covering_set(m))
      o.require(inv(x) == fc.inverted[0][x[0] - 1] * fc.inverted[1][x[1] - 1],
                "separability identity fails in trial " + std::to_string(trial));
  }
  o.require(positives > 0 && negatives > 0, "only one verdict occurred");
  o.note = std::to_string(positives) + " positive, " + std::to_string(negatives) + " negative";
  return o;
}

Outcome closure_and_monotonicity() {
  Outcome o;
  for (int trial = 0; trial < 50 && o.ok; ++trial) {
    const LatticeFamily fam = trial % 2 ? LatticeFamily::min(2) : LatticeFamily::divisor(2);
    const auto f = summatory_function(fam, testing::random_function(2, 300 + trial, 0, 5));
    const auto g = summatory_function(fam, testing::random_function(2, 400 + trial, 0, 5));
    o.require(f.certified(), "summatory function not certified");
    const Rational a(1 + trial % 4, 1 + trial % 3);
    for (const auto& h : {scale(f, a), add(f, g), pointwise_mul(f, g)}) {
      o.require(h.certified(), "combinator dropped the certificate");
      o.require(pd_criterion(h, fam, 6).positive(), "combinator output fails the criterion");
    }
    o.require(check_monotonicity(f, ElementSubset::covering(fam, 10)).ok(), "monotonicity fails");
  }
  const auto one = constant_function(2, 1);
  const auto div = summatory_function(LatticeFamily::divisor(2), one);
  const auto mn = summatory_function(LatticeFamily::min(2), one);
  o.require(check_monotonicity(div, ElementSubset::covering(LatticeFamily::divisor(2), 10)).ok(), "divisor grid");
  o.require(check_monotonicity(mn, ElementSubset::covering(LatticeFamily::min(2), 10)).ok(), "min grid");
  o.require(div({2, 3}) == 4, "divisor grid value at (2,3)");
  o.require(mn({2, 3}) == 6, "min grid value at (2,3)");
  return o;
}

}  // namespace

int main() {
  bool all = true;
  all &= run_criterion(1, "LCM counterexample", 1, lcm_counterexample);
  all &= run_criterion(2, "GCD positive definiteness", 30, gcd_positive_definite);
  all &= run_criterion(3, "Ramanujan non-PD", 5, ramanujan_non_pd);
  all &= run_criterion(4, "mu*mu table", 1, mu_star_mu_table);
  all &= run_criterion(5, "decomposition soundness", 60, decomposition_soundness);
  all &= run_criterion(6, "criterion/oracle equivalence", 60, criterion_oracle_equivalence);
  all &= run_criterion(7, "separable criterion", 10, separable_criterion);
  all &= run_criterion(8, "closure and monotonicity", 10, closure_and_monotonicity);
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
