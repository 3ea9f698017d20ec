#include "meetpd/rational.hpp"

#include <cmath>
#include <string>

namespace meetpd {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw ParseError("malformed rational '" + s + "'");
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed rational '" + s + "'");
    if (digits.front() == '+') digits.erase(0, 1);
    Integer num;
    if (num.set_str(digits, 10) != 0) throw ParseError("malformed rational '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) {
    if (exponent < 0) throw EvaluationError("zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  RationalMatrix out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

RationalMatrix principal_submatrix(const RationalMatrix& a, const std::vector<std::size_t>& index) {
  RationalMatrix out(index.size(), index.size());
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j) out(i, j) = a(index[i], index[j]);
  return out;
}

Rational quadratic_form(const RationalMatrix& a, const std::vector<Rational>& x) {
  if (a.rows() != x.size() || a.cols() != x.size())
    throw DimensionMismatch("quadratic form vector length mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) row += a(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

double infinity_norm(const RationalMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::fabs(a(i, j).get_d());
    best = std::max(best, row);
  }
  return best;
}

}  // namespace meetpd
