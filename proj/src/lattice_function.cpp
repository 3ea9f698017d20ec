#include "meetpd/lattice_function.hpp"

#include "meetpd/errors.hpp"

namespace meetpd {

LatticeFunction::LatticeFunction(int arity, Evaluator evaluator, std::string description)
    : arity_(arity),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      cache_(std::make_shared<Cache>()),
      description_(std::move(description)) {
  if (arity < 1) throw DimensionMismatch("lattice function arity must be >= 1");
}

Rational LatticeFunction::operator()(const Point& x) const {
  if (static_cast<int>(x.size()) != arity_)
    throw DimensionMismatch("function '" + description_ + "' of arity " + std::to_string(arity_) +
                            " evaluated at a point of arity " + std::to_string(x.size()));
  {
    std::lock_guard lock(cache_->mutex);
    const auto it = cache_->values.find(x);
    if (it != cache_->values.end()) return it->second;
  }
  // Evaluate outside the lock: evaluators may call other memoized functions.
  Rational value = (*evaluator_)(x);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(x, value);
  return value;
}

LatticeFunction LatticeFunction::certify(bool flag) const {
  LatticeFunction out = *this;
  out.certified_ = flag;
  return out;
}

LatticeFunction LatticeFunction::renamed(std::string description) const {
  LatticeFunction out = *this;
  out.description_ = std::move(description);
  return out;
}

LatticeFunction LatticeFunction::with_composition(MeetComposition c) const {
  LatticeFunction out = *this;
  out.composition_ = std::move(c);
  return out;
}

LatticeFunction constant_function(int arity, Rational value) {
  const std::string text = to_string(value);
  return LatticeFunction(arity, [value](const Point&) { return value; }, "constant " + text);
}

LatticeFunction table_function(int arity, std::unordered_map<Point, Rational, PointHash> table,
                               std::string description) {
  auto shared = std::make_shared<const std::unordered_map<Point, Rational, PointHash>>(std::move(table));
  return LatticeFunction(
      arity,
      [shared](const Point& x) -> Rational {
        const auto it = shared->find(x);
        if (it == shared->end()) {
          std::string label;
          for (auto v : x) label += (label.empty() ? "" : ",") + std::to_string(v);
          throw EvaluationError("value table has no entry for (" + label + ")");
        }
        return it->second;
      },
      std::move(description));
}

LatticeFunction summatory_function(const LatticeFamily& family, const LatticeFunction& g) {
  if (g.arity() != family.arity()) throw DimensionMismatch("g must have the family's arity");
  LatticeFunction f(
      family.arity(),
      [family, g](const Point& x) {
        Rational sum = 0;
        for (const auto& z : family.lower_set(x)) {
          Rational gz = g(z);
          if (gz < 0)
            throw EvaluationError("summatory construction needs g >= 0, but g" + family.label(z) + " = " +
                                  to_string(gz));
          sum += gz;
        }
        return sum;
      },
      "zeta-sum of " + g.description());
  return f.certify();
}

LatticeFunction meet_composed(const LatticeFamily& base, const LatticeFunction& g, int copies) {
  if (copies < 1) throw DimensionMismatch("meet composition needs at least one copy");
  if (g.arity() != base.arity()) throw DimensionMismatch("g must have the base family's arity");
  const std::size_t width = static_cast<std::size_t>(base.arity());
  LatticeFunction f(
      base.arity() * copies,
      [base, g, width](const Point& x) {
        Point acc(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(width));
        for (std::size_t start = width; start < x.size(); start += width) {
          Point part(x.begin() + static_cast<std::ptrdiff_t>(start),
                     x.begin() + static_cast<std::ptrdiff_t>(start + width));
          acc = base.meet(acc, part);
        }
        return g(acc);
      },
      "meet_composed(" + g.description() + ")");
  return f.with_composition(MeetComposition{base, std::make_shared<const LatticeFunction>(g), copies});
}

LatticeFunction separable_function(const std::vector<LatticeFunction>& parts) {
  if (parts.empty()) throw DimensionMismatch("separable function needs at least one factor");
  int arity = 0;
  std::string description;
  for (const auto& p : parts) {
    arity += p.arity();
    description += (description.empty() ? "" : " (x) ") + p.description();
  }
  return LatticeFunction(
      arity,
      [parts](const Point& x) {
        Rational product = 1;
        std::size_t start = 0;
        for (const auto& p : parts) {
          const auto width = static_cast<std::size_t>(p.arity());
          product *= p(Point(x.begin() + static_cast<std::ptrdiff_t>(start),
                             x.begin() + static_cast<std::ptrdiff_t>(start + width)));
          start += width;
        }
        return product;
      },
      description);
}

}  // namespace meetpd
