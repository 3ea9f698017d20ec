#include "meetpd/pd_analysis.hpp"

#include "meetpd/errors.hpp"
#include "meetpd/incidence.hpp"

namespace meetpd {

std::string to_string(Verdict v) {
  return v == Verdict::positive_definite_on_tested_covering ? "positive_definite_on_tested_covering"
                                                            : "not_positive_definite";
}

std::vector<Rational> inverted_values(const ElementSubset& s, const LatticeFunction& f) {
  if (!s.lower_closed()) throw NotLowerClosed("the diagonal criterion needs a lower closed covering set");
  auto poset = std::make_shared<const Poset>(s.poset());
  const auto least = poset->least();
  if (!least) throw NoLeastElement("the diagonal criterion needs a least element");
  std::vector<Rational> values;
  values.reserve(s.size());
  for (const auto& x : s.members()) values.push_back(f(x));
  const IncidenceFunction g = mobius_invert(restricted(poset, values));
  std::vector<Rational> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = g(*least, i);
  return out;
}

std::vector<Rational> element_witness_vector(const ElementSubset& s, std::size_t i) {
  const IncidenceFunction mu = mobius_of_subset(s);
  std::vector<Rational> v(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) v[j] = mu(j, i);
  return v;
}

PDVerdict pd_criterion(const LatticeFunction& f, const LatticeFamily& family, int bound) {
  if (!family.bottom()) throw NoLeastElement(family.name() + " has no least element");
  const ElementSubset s = ElementSubset::covering(family, bound);
  const auto values = inverted_values(s, f);

  PDVerdict verdict;
  verdict.tested_bound = bound;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (values[i] < 0) {
      Witness w;
      w.kind = Witness::Kind::element;
      w.element = s[i];
      w.element_label = family.label(s[i]);
      w.value = values[i];
      verdict.verdict = Verdict::not_positive_definite;
      verdict.witness = std::move(w);
      return verdict;
    }
  verdict.certificate = f.certified();
  return verdict;
}

Rational replay_witness(const Witness& w, const LatticeFunction& f, const LatticeFamily& family) {
  if (w.kind == Witness::Kind::element) {
    const ElementSubset below(family, family.lower_set(w.element));
    const auto idx = below.index_of(w.element);
    return inverted_values(below, f)[*idx];
  }
  // A witness subset is kept in its recorded order; rebuild the matrix directly.
  const std::size_t n = w.subset.size();
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = f(family.meet(w.subset[i], w.subset[j]));
  return quadratic_form(a, w.vector);
}

bool CoveringEquivalenceReport::all_agree() const {
  for (const auto& c : checks)
    if (!c.agree()) return false;
  return true;
}

CoveringEquivalenceReport check_covering_equivalence(const LatticeFunction& f, const LatticeFamily& family,
                                                     int bound, double tol) {
  if (bound < 1) throw DimensionMismatch("covering bound must be >= 1");
  const int last = family.kind() == FamilyKind::explicit_finite ? 1 : bound;
  CoveringEquivalenceReport report;
  for (int m = 1; m <= last; ++m) {
    CoveringCheck c;
    c.m = m;
    c.criterion_positive = pd_criterion(f, family, m).positive();
    const PsdReport oracle = psd_oracle(meet_matrix(ElementSubset::covering(family, m), f), tol);
    c.oracle_psd = oracle.psd;
    c.oracle_exact = oracle.exact;
    c.min_eigenvalue = oracle.min_eigenvalue;
    report.checks.push_back(c);
  }
  return report;
}

MonotonicityReport check_monotonicity(const LatticeFunction& f, const ElementSubset& s) {
  MonotonicityReport report;
  std::vector<Rational> values;
  values.reserve(s.size());
  for (const auto& x : s.members()) values.push_back(f(x));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (values[i] < 0) {
      report.nonnegative = false;
      report.negative_element = s[i];
      break;
    }
  for (std::size_t i = 0; i < s.size() && report.monotone; ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s.leq(i, j) && values[i] > values[j]) {
        report.monotone = false;
        report.violation = std::make_pair(s[i], s[j]);
        break;
      }
  return report;
}

namespace {

void require_same_arity(const LatticeFunction& f, const LatticeFunction& g) {
  if (f.arity() != g.arity()) throw DimensionMismatch("combined functions must share an arity");
}

}  // namespace

LatticeFunction scale(const LatticeFunction& f, const Rational& a) {
  if (a < 0) throw NegativeScalar("scaling by " + to_string(a) + " does not preserve positive definiteness");
  LatticeFunction out(f.arity(), [f, a](const Point& x) -> Rational { return a == 0 ? Rational(0) : a * f(x); },
                      to_string(a) + "*(" + f.description() + ")");
  return out.certify(f.certified());
}

LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_arity(f, g);
  LatticeFunction out(f.arity(), [f, g](const Point& x) { return Rational(f(x) + g(x)); },
                      "(" + f.description() + ")+(" + g.description() + ")");
  return out.certify(f.certified() && g.certified());
}

LatticeFunction pointwise_mul(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_arity(f, g);
  LatticeFunction out(f.arity(), [f, g](const Point& x) { return Rational(f(x) * g(x)); },
                      "(" + f.description() + ")*(" + g.description() + ")");
  return out.certify(f.certified() && g.certified());
}

bool factorable_identity(const LatticeFunction& g, const LatticeFunction& h, const ElementSubset& s,
                         const ElementSubset& t) {
  const LatticeFunction f = separable_function({g, h});
  const MeetMatrix product = meet_matrix(cartesian_product({s, t}), f);
  return product.entries == kronecker(meet_matrix(s, g).entries, meet_matrix(t, h).entries);
}

FactorableResult factorable_pd(const LatticeFunction& g, const LatticeFamily& g_family, const LatticeFunction& h,
                               const LatticeFamily& h_family, int bound) {
  const PDVerdict vg = pd_criterion(g, g_family, bound);
  if (!vg.positive())
    throw ComponentNotCertified("first factor '" + g.description() + "' fails the criterion at " +
                                vg.witness->element_label);
  const PDVerdict vh = pd_criterion(h, h_family, bound);
  if (!vh.positive())
    throw ComponentNotCertified("second factor '" + h.description() + "' fails the criterion at " +
                                vh.witness->element_label);

  FactorableResult result{PDVerdict{}, separable_function({g, h}), false};
  result.identity_holds = factorable_identity(g, h, ElementSubset::covering(g_family, bound),
                                              ElementSubset::covering(h_family, bound));
  result.verdict.tested_bound = bound;
  result.verdict.certificate = g.certified() && h.certified();
  result.product = result.product.certify(result.verdict.certificate);
  return result;
}

}  // namespace meetpd
