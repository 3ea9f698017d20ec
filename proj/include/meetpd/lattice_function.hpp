#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "meetpd/lattice_family.hpp"
#include "meetpd/rational.hpp"

namespace meetpd {

class LatticeFunction;

/// f(x_1, ..., x_d) = g(x_1 ^ ... ^ x_d) with every x_i in `base`.
struct MeetComposition {
  LatticeFamily base;
  std::shared_ptr<const LatticeFunction> g;
  int copies;
};

/// A real (exact rational) valued function on the points of a lattice family.
///
/// Evaluation is memoized; the cache is shared between copies and guarded
/// by a mutex, so a function may be evaluated from several threads.
class LatticeFunction {
 public:
  using Evaluator = std::function<Rational(const Point&)>;

  LatticeFunction(int arity, Evaluator evaluator, std::string description);

  Rational operator()(const Point& x) const;

  int arity() const { return arity_; }
  const std::string& description() const { return description_; }

  /// Set when positive definiteness holds unconditionally by construction,
  /// independent of any tested bound.
  bool certified() const { return certified_; }
  LatticeFunction certify(bool flag = true) const;
  LatticeFunction renamed(std::string description) const;

  const std::optional<MeetComposition>& meet_composition() const { return composition_; }
  LatticeFunction with_composition(MeetComposition c) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Point, Rational, PointHash> values;
  };

  int arity_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::shared_ptr<Cache> cache_;
  std::string description_;
  bool certified_ = false;
  std::optional<MeetComposition> composition_;
};

LatticeFunction constant_function(int arity, Rational value);

/// Looks values up in a finite table; EvaluationError for missing points.
LatticeFunction table_function(int arity, std::unordered_map<Point, Rational, PointHash> table,
                               std::string description = "table");

/// f(x) = sum_{z <= x} g(z), i.e. f = g_r * zeta evaluated at (0, x).
/// Evaluating a point where some g(z) < 0 raises EvaluationError, so every
/// value this function returns comes with an unconditional certificate.
LatticeFunction summatory_function(const LatticeFamily& family, const LatticeFunction& g);

/// f(x_1, ..., x_copies) = g(x_1 ^ ... ^ x_copies) over base^copies.
LatticeFunction meet_composed(const LatticeFamily& base, const LatticeFunction& g, int copies);

/// f(x) = prod_k parts[k](slice k of x); slice arities come from the parts.
LatticeFunction separable_function(const std::vector<LatticeFunction>& parts);

}  // namespace meetpd
