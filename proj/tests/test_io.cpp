#include <sstream>

#include "doctest.h"
#include "meetpd/arithmetic.hpp"
#include "meetpd/errors.hpp"
#include "meetpd/io.hpp"
#include "support.hpp"

using namespace meetpd;

TEST_CASE("Hasse format") {
  std::istringstream in(
      "# diamond\n"
      "elem 0\nelem a\nelem b\nelem 1\n"
      "edge 0 a\nedge 0 b\nedge a 1\nedge b 1\n");
  const auto fam = parse_hasse(in);
  CHECK(fam.kind() == FamilyKind::explicit_finite);
  CHECK(fam.covering_set(1).size() == 4);
  CHECK(fam.label(fam.meet(fam.parse_label("a"), fam.parse_label("b"))) == "0");

  std::istringstream implicit("family min d=3\n");
  const auto m3 = parse_hasse(implicit);
  CHECK(m3.kind() == FamilyKind::min);
  CHECK(m3.arity() == 3);

  std::istringstream mixed("family divisor d=1\nelem x\n");
  CHECK_THROWS_AS(parse_hasse(mixed), ParseError);
  std::istringstream junk("vertex a\n");
  CHECK_THROWS_AS(parse_hasse(junk), ParseError);
  std::istringstream bowtie("elem a\nelem b\nelem c\nelem d\nedge c a\nedge c b\nedge d a\nedge d b\n");
  CHECK_THROWS_AS(parse_hasse(bowtie), NotASemilattice);
  std::istringstream cyc("elem a\nelem b\nedge a b\nedge b a\n");
  CHECK_THROWS_AS(parse_hasse(cyc), CycleError);
  CHECK_THROWS_AS(load_hasse("/nonexistent/file"), ParseError);
}

TEST_CASE("matrix JSON carries schema, labels and exact entries") {
  const auto fam = LatticeFamily::divisor(2);
  const auto s = ElementSubset::covering(fam, 2);
  const auto mm = meet_matrix(s, lcm_pow(2, -1).lattice_function());
  const auto doc = matrix_to_json(mm, OrderMap({2, 2}));
  CHECK(doc["schema"] == kSchemaVersion);
  CHECK(doc["size"] == 4);
  CHECK(doc["labels"][1] == "(1,2)");
  CHECK(doc["entries"][1][1] == "1/2");
  CHECK(doc["order_map"]["dims"] == nlohmann::json::array({2, 2}));
  CHECK(matrix_to_csv(mm).substr(0, 8) == "1,1,1,1\n");

  // Re-ingesting the diagonal gives back f on the covering set.
  const auto table = value_table_from_matrix_json(doc, fam);
  CHECK(table.size() == 4);
  CHECK(table.at({2, 2}) == Rational(1, 2));
}

TEST_CASE("value tables") {
  const auto fam = LatticeFamily::divisor(2);
  std::istringstream in("i1,i2,value\n# comment\n1,1,1\n1,2,-3/4\n2,1,0.5\n");
  const auto t = read_value_table(in, fam);
  CHECK(t.at({1, 2}) == Rational(-3, 4));
  CHECK(t.at({2, 1}) == Rational(1, 2));
  std::istringstream bad("1,1\n");
  CHECK_THROWS_AS(read_value_table(bad, fam), ParseError);
  const auto f = table_function(2, t);
  CHECK_THROWS_AS(f({2, 2}), EvaluationError);

  const auto s = ElementSubset::covering(fam, 2);
  const std::string csv = function_table_csv(s, gcd_pow(2, 1).lattice_function());
  std::istringstream back(csv);
  const auto t2 = read_value_table(back, fam);
  CHECK(t2.size() == 4);
  CHECK(t2.at({2, 2}) == 2);
}

TEST_CASE("verdict and decomposition JSON") {
  const auto v = pd_check_grid(ramanujan_sum(), 6);
  const auto doc = verdict_to_json(v);
  CHECK(doc["verdict"] == "not_positive_definite");
  CHECK(doc["witness"]["element"] == "(1,2)");
  CHECK(doc["witness"]["value"] == "-2");
  CHECK(doc["tested_bound"] == 6);

  const auto fam = LatticeFamily::divisor(1);
  const auto d = kron_decompose_d({ElementSubset::covering(fam, 4)}, gcd_pow(1, 1).lattice_function());
  const auto dj = decomposition_to_json(d, 0);
  CHECK(dj["lambda"] == nlohmann::json::array({"1", "1", "2", "2"}));
  CHECK(dj["reconstruction_residual"] == "0");
  CHECK(dj["schema"] == kSchemaVersion);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(rational_pow(2, -3) == Rational(1, 8));
}
