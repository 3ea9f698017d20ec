#include "meetpd/arithmetic.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "meetpd/errors.hpp"

namespace meetpd {

namespace {

constexpr std::int64_t kSieveCap = 1 << 22;

class SmallestPrimeFactorSieve {
 public:
  std::int64_t spf(std::int64_t n) {
    std::lock_guard lock(mutex_);
    if (n >= static_cast<std::int64_t>(table_.size())) grow(n);
    return table_[static_cast<std::size_t>(n)];
  }

 private:
  void grow(std::int64_t n) {
    std::size_t size = std::max<std::size_t>(1024, table_.size());
    while (static_cast<std::int64_t>(size) <= n) size *= 2;
    table_.assign(size, 0);
    for (std::size_t i = 2; i < size; ++i)
      if (table_[i] == 0)
        for (std::size_t j = i; j < size; j += i)
          if (table_[j] == 0) table_[j] = static_cast<std::int64_t>(i);
  }

  std::mutex mutex_;
  std::vector<std::int64_t> table_;
};

SmallestPrimeFactorSieve& sieve() {
  static SmallestPrimeFactorSieve instance;
  return instance;
}

std::string tuple_label(const Point& x) {
  if (x.size() == 1) return std::to_string(x[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + std::to_string(x[k]);
  return out + ")";
}

void require_positive(const Point& x) {
  for (auto v : x)
    if (v < 1) throw ArityMismatch("arithmetic functions take positive integer tuples, got " + tuple_label(x));
}

}  // namespace

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw Error("factorize needs n >= 1");
  std::vector<std::pair<std::int64_t, int>> out;
  auto push = [&](std::int64_t p) {
    if (!out.empty() && out.back().first == p) ++out.back().second;
    else out.emplace_back(p, 1);
  };
  if (n < kSieveCap) {
    while (n > 1) {
      const std::int64_t p = sieve().spf(n);
      push(p);
      n /= p;
    }
    return out;
  }
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  if (n > 1) push(n);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t count = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius_arith(std::int64_t n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

Point gcd_d(const Point& x, const Point& y) {
  if (x.size() != y.size())
    throw ArityMismatch("gcd of tuples of arity " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  require_positive(x);
  require_positive(y);
  Point out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = std::gcd(x[k], y[k]);
  return out;
}

ArithmeticFunction::ArithmeticFunction(int arity, LatticeFunction::Evaluator evaluator, std::string name)
    : f_(arity, std::move(evaluator), std::move(name)) {}

ArithmeticFunction::ArithmeticFunction(LatticeFunction f) : f_(std::move(f)) {}

ArithmeticFunction ArithmeticFunction::factored(const std::vector<ArithmeticFunction>& parts) {
  std::vector<LatticeFunction> factors;
  for (const auto& p : parts) {
    if (p.arity() != 1) throw ArityMismatch("factored form needs univariate parts");
    factors.push_back(p.f_);
  }
  ArithmeticFunction out(separable_function(factors));
  out.factors_ = std::move(factors);
  return out;
}

Rational ArithmeticFunction::operator()(const Point& x) const {
  if (static_cast<int>(x.size()) != arity())
    throw ArityMismatch("'" + name() + "' has arity " + std::to_string(arity()) + ", got " + tuple_label(x));
  require_positive(x);
  return f_(x);
}

Rational dirichlet_convolve_d(const ArithmeticFunction& f, const ArithmeticFunction& g, const Point& point) {
  if (f.arity() != g.arity() || static_cast<int>(point.size()) != f.arity())
    throw ArityMismatch("Dirichlet convolution of mismatched arities");
  require_positive(point);
  std::vector<std::vector<std::int64_t>> axes;
  for (auto v : point) axes.push_back(divisors(v));

  Rational sum = 0;
  std::vector<std::size_t> digit(axes.size(), 0);
  Point k(point.size()), rest(point.size());
  while (true) {
    for (std::size_t a = 0; a < axes.size(); ++a) {
      k[a] = axes[a][digit[a]];
      rest[a] = point[a] / k[a];
    }
    sum += f(k) * g(rest);
    std::size_t a = axes.size();
    while (a-- > 0) {
      if (++digit[a] < axes[a].size()) break;
      digit[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return sum;
}

ArithmeticFunction dirichlet_convolve_d(const ArithmeticFunction& f, const ArithmeticFunction& g) {
  if (f.arity() != g.arity()) throw ArityMismatch("Dirichlet convolution of mismatched arities");
  return ArithmeticFunction(
      f.arity(), [f, g](const Point& x) { return dirichlet_convolve_d(f, g, x); },
      "(" + f.name() + ")*(" + g.name() + ")");
}

ArithmeticFunction ArithmeticFunction::renamed(std::string name) const {
  ArithmeticFunction out = *this;
  out.f_ = f_.renamed(std::move(name));
  return out;
}

ArithmeticFunction ArithmeticFunction::certify(bool flag) const {
  ArithmeticFunction out = *this;
  out.f_ = f_.certify(flag);
  return out;
}

namespace {

ArithmeticFunction univariate(LatticeFunction::Evaluator e, std::string name) {
  return ArithmeticFunction(1, std::move(e), std::move(name));
}

ArithmeticFunction replicate(const ArithmeticFunction& g, int d, std::string name) {
  if (d < 1) throw ArityMismatch("arity must be >= 1");
  return ArithmeticFunction::factored(std::vector<ArithmeticFunction>(static_cast<std::size_t>(d), g))
      .renamed(std::move(name));
}

ArithmeticFunction power_function(long alpha) {
  return univariate([alpha](const Point& x) { return rational_pow(Rational(x[0]), alpha); },
                    "n^" + std::to_string(alpha));
}

Rational tau(std::int64_t n) {
  long count = 1;
  for (const auto& [p, e] : factorize(n)) count *= e + 1;
  return Rational(count);
}

}  // namespace

ArithmeticFunction zeta_d(int d) {
  // (zeta_d *_d mu_d) = delta_d >= 0, so zeta_d is positive definite outright.
  return replicate(univariate([](const Point&) { return Rational(1); }, "zeta"), d, "zeta_d").certify();
}

ArithmeticFunction delta_d(int d) {
  return replicate(univariate([](const Point& x) { return Rational(x[0] == 1 ? 1 : 0); }, "delta"), d, "delta_d");
}

ArithmeticFunction mu_d(int d) {
  return replicate(univariate([](const Point& x) { return Rational(mobius_arith(x[0])); }, "mu"), d, "mu_d");
}

ArithmeticFunction divisor_count(int d) {
  // tau = zeta * zeta, the zeta-sum of g = 1 >= 0.
  return replicate(univariate([](const Point& x) { return tau(x[0]); }, "tau"), d, "divisor_count").certify();
}

ArithmeticFunction meet_composed_arith(const ArithmeticFunction& g, int d) {
  if (g.arity() != 1) throw ArityMismatch("meet composition needs a univariate g");
  const LatticeFunction f = meet_composed(LatticeFamily::divisor(1), g.lattice_function(), d);
  return ArithmeticFunction(f.renamed("meet_composed(" + g.name() + ")"));
}

ArithmeticFunction gcd_pow(int d, long alpha) {
  return meet_composed_arith(power_function(alpha), d).renamed("gcd_pow:" + std::to_string(alpha));
}

ArithmeticFunction lcm_pow(int d, long alpha) {
  if (d < 1) throw ArityMismatch("arity must be >= 1");
  return ArithmeticFunction(
      d,
      [alpha](const Point& x) {
        Integer l = 1;
        for (auto v : x) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(v));
        return rational_pow(Rational(l), alpha);
      },
      "lcm_pow:" + std::to_string(alpha));
}

Integer ramanujan_C(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw ArityMismatch("Ramanujan sum needs positive arguments");
  Integer sum = 0;
  for (std::int64_t e : divisors(std::gcd(m, n))) sum += Integer(e) * mobius_arith(n / e);
  return sum;
}

ArithmeticFunction ramanujan_sum() {
  return ArithmeticFunction(2, [](const Point& x) { return Rational(ramanujan_C(x[0], x[1])); }, "ramanujan_C");
}

Integer mu_star_mu(std::int64_t n) {
  const Rational v = dirichlet_convolve_d(mu_d(1), mu_d(1), Point{n});
  return v.get_num();
}

namespace {

long parse_exponent(const std::string& text, const std::string& spec) {
  if (text.empty()) throw UnknownBuiltin("'" + spec + "' needs an exponent, e.g. gcd_pow:1");
  Rational alpha;
  try {
    alpha = parse_rational(text);
  } catch (const ParseError&) {
    throw UnknownBuiltin("bad exponent in '" + spec + "'");
  }
  if (alpha.get_den() != 1 || !alpha.get_num().fits_slong_p())
    throw UnknownBuiltin("only integer exponents are supported, got '" + text + "'");
  return alpha.get_num().get_si();
}

}  // namespace

ArithmeticFunction builtin(const std::string& spec, int d) {
  if (d < 1) throw ArityMismatch("arity must be >= 1");
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto no_param = [&] {
    if (!param.empty()) throw UnknownBuiltin("'" + name + "' takes no parameter");
  };

  if (name == "gcd_pow") return gcd_pow(d, parse_exponent(param, spec));
  if (name == "lcm_pow") return lcm_pow(d, parse_exponent(param, spec));
  if (name == "zeta_d") return no_param(), zeta_d(d);
  if (name == "delta_d") return no_param(), delta_d(d);
  if (name == "mu_d") return no_param(), mu_d(d);
  if (name == "divisor_count") return no_param(), divisor_count(d);
  if (name == "ramanujan_C") {
    no_param();
    if (d != 2) throw ArityMismatch("ramanujan_C is bivariate; use d=2");
    return ramanujan_sum();
  }
  if (name == "meet_composed") {
    if (param.empty()) throw UnknownBuiltin("meet_composed needs an inner function, e.g. meet_composed:gcd_pow:1");
    return meet_composed_arith(builtin(param, 1), d);
  }
  throw UnknownBuiltin("unknown builtin function '" + name + "'");
}

PDVerdict pd_check_grid(const ArithmeticFunction& f, int m) {
  if (m < 1) throw DimensionMismatch("grid bound must be >= 1");
  const LatticeFamily family = LatticeFamily::divisor(f.arity());
  const ArithmeticFunction mu = mu_d(f.arity());
  PDVerdict verdict;
  verdict.tested_bound = m;
  for (const auto& x : family.covering_set(m)) {
    Rational value = dirichlet_convolve_d(f, mu, x);
    if (value < 0) {
      Witness w;
      w.kind = Witness::Kind::element;
      w.element = x;
      w.element_label = tuple_label(x);
      w.value = std::move(value);
      verdict.verdict = Verdict::not_positive_definite;
      verdict.witness = std::move(w);
      return verdict;
    }
  }
  verdict.certificate = f.lattice_function().certified();
  return verdict;
}

std::string to_string(SignClass c) {
  switch (c) {
    case SignClass::nonnegative: return "nonnegative";
    case SignClass::nonpositive: return "nonpositive";
    case SignClass::zero: return "zero";
    case SignClass::mixed: return "mixed";
  }
  return "?";
}

FactoredCheck pd_check_factored(const std::vector<ArithmeticFunction>& g, int m) {
  if (g.empty()) throw ArityMismatch("need at least one factor");
  if (m < 1) throw DimensionMismatch("grid bound must be >= 1");
  const ArithmeticFunction mu = mu_d(1);
  FactoredCheck out;
  out.verdict.tested_bound = m;

  bool any_zero = false;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k].arity() != 1) throw ArityMismatch("factors must be univariate");
    std::vector<Rational> s(static_cast<std::size_t>(m));
    bool has_pos = false, has_neg = false;
    for (int j = 1; j <= m; ++j) {
      s[static_cast<std::size_t>(j - 1)] = dirichlet_convolve_d(g[k], mu, Point{j});
      has_pos |= s[static_cast<std::size_t>(j - 1)] > 0;
      has_neg |= s[static_cast<std::size_t>(j - 1)] < 0;
    }
    SignClass c = has_pos ? (has_neg ? SignClass::mixed : SignClass::nonnegative)
                          : (has_neg ? SignClass::nonpositive : SignClass::zero);
    if (c == SignClass::nonpositive) out.nonpositive_set.push_back(k);
    if (c == SignClass::mixed) out.mixed.push_back(k);
    any_zero |= c == SignClass::zero;
    out.classes.push_back(c);
    out.inverted.push_back(std::move(s));
  }

  // A vanishing coordinate makes every inverted value of the product zero.
  if (any_zero || (out.mixed.empty() && out.nonpositive_set.size() % 2 == 0)) return out;

  // Pick a nonzero value per coordinate, then fix the sign: flip a mixed
  // coordinate if there is one, otherwise the odd nonpositive count already
  // makes the product negative.
  std::vector<std::size_t> pick(g.size());
  int sign = 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& s = out.inverted[k];
    pick[k] = static_cast<std::size_t>(std::find_if(s.begin(), s.end(), [](const Rational& v) { return v != 0; }) -
                                       s.begin());
    sign *= sgn(s[pick[k]]);
  }
  if (sign > 0) {
    const std::size_t k = out.mixed.front();
    const auto& s = out.inverted[k];
    const int want = -sgn(s[pick[k]]);
    pick[k] = static_cast<std::size_t>(
        std::find_if(s.begin(), s.end(), [&](const Rational& v) { return sgn(v) == want; }) - s.begin());
  }
  Witness w;
  w.kind = Witness::Kind::element;
  w.value = 1;
  for (std::size_t k = 0; k < g.size(); ++k) {
    w.element.push_back(static_cast<std::int64_t>(pick[k] + 1));
    w.value *= out.inverted[k][pick[k]];
  }
  w.element_label = tuple_label(w.element);
  out.verdict.verdict = Verdict::not_positive_definite;
  out.verdict.witness = std::move(w);
  return out;
}

}  // namespace meetpd
