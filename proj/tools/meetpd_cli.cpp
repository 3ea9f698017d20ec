// meetpd: meet matrices, decompositions and positive definiteness checks.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 configuration or parse error, 3 evaluation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "meetpd/arithmetic.hpp"
#include "meetpd/errors.hpp"
#include "meetpd/io.hpp"
#include "meetpd/meet_matrix.hpp"
#include "meetpd/pd_analysis.hpp"
#include "meetpd/psd.hpp"

namespace {

using namespace meetpd;

constexpr int kExitNegative = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEvaluation = 3;

// The oracle cross-check in `check` is skipped above this size.
constexpr std::size_t kOracleLimit = 512;

struct RunConfig {
  std::string family = "divisor";
  int d = 2;
  std::string fn;
  int m = 1;
  double tol = kDefaultPsdTolerance;
  std::string format = "json";
  std::string out;
  std::string hasse;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LatticeFamily resolve_family(const RunConfig& c) {
  if (!c.hasse.empty()) return load_hasse(c.hasse);
  if (c.d < 1) throw ConfigError("--d must be at least 1");
  if (c.family == "divisor") return LatticeFamily::divisor(c.d);
  if (c.family == "min") return LatticeFamily::min(c.d);
  throw ConfigError("unknown family '" + c.family + "' (expected divisor or min, or use --hasse)");
}

LatticeFunction resolve_function(const RunConfig& c, const LatticeFamily& family) {
  if (c.fn.empty()) throw ConfigError("--fn is required");
  if (c.fn.rfind("table:", 0) == 0) {
    auto table = load_value_table(c.fn.substr(6), family);
    return table_function(family.arity(), std::move(table), c.fn);
  }
  if (family.kind() == FamilyKind::explicit_finite)
    throw ConfigError("builtin functions need an integer family; use --fn table:<path> with --hasse");
  return builtin(c.fn, family.arity()).lattice_function();
}

void validate(const RunConfig& c) {
  if (c.m < 1) throw ConfigError("--m must be at least 1");
  if (c.tol < 0) throw ConfigError("--tol must be nonnegative");
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw ConfigError("cannot write " + c.out);
  file << text;
}

// Dims of the covering set when it is a lexicographic grid.
std::optional<OrderMap> covering_order(const LatticeFamily& family, int m) {
  if (family.kind() == FamilyKind::explicit_finite || family.arity() < 2) return std::nullopt;
  std::vector<std::size_t> dims;
  for (int k = 0; k < family.arity(); ++k) dims.push_back(family.atom_covering(k, m).size());
  return OrderMap(dims);
}

int cmd_matrix(const RunConfig& c) {
  validate(c);
  const LatticeFamily family = resolve_family(c);
  const LatticeFunction f = resolve_function(c, family);
  const MeetMatrix mm = meet_matrix(ElementSubset::covering(family, c.m), f);
  if (c.format == "csv")
    emit(c, matrix_to_csv(mm));
  else
    emit(c, matrix_to_json(mm, covering_order(family, c.m)).dump(2) + "\n");
  return 0;
}

int cmd_check(const RunConfig& c) {
  validate(c);
  const LatticeFamily family = resolve_family(c);
  const LatticeFunction f = resolve_function(c, family);
  PDVerdict verdict = family.kind() == FamilyKind::divisor ? pd_check_grid(ArithmeticFunction(f), c.m)
                                                           : pd_criterion(f, family, c.m);
  nlohmann::json doc = verdict_to_json(verdict);
  const ElementSubset cover = ElementSubset::covering(family, c.m);
  if (cover.size() <= kOracleLimit) {
    const PsdReport oracle = psd_oracle(meet_matrix(cover, f), c.tol);
    doc["oracle"] = {{"psd", oracle.psd},
                     {"exact", oracle.exact},
                     {"min_eigenvalue", oracle.min_eigenvalue},
                     {"threshold", oracle.threshold}};
  }
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!c.out.empty()) emit(c, text);
  return verdict.positive() ? 0 : kExitNegative;
}

Rational max_abs_difference(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw NumericalFailure("reconstruction has the wrong shape");
  Rational worst = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const Rational diff = abs(a.data()[k] - b.data()[k]);
    if (diff > worst) worst = diff;
  }
  return worst;
}

int cmd_decompose(const RunConfig& c) {
  validate(c);
  const LatticeFamily family = resolve_family(c);
  const LatticeFunction f = resolve_function(c, family);
  std::optional<Decomposition> d;
  if (family.kind() == FamilyKind::explicit_finite) {
    d = ldl_lower_closed(ElementSubset::covering(family, c.m), f);
  } else {
    std::vector<ElementSubset> subsets;
    for (int k = 0; k < family.arity(); ++k)
      subsets.push_back(ElementSubset::covering(family.slice(k, 1), c.m));
    d = kron_decompose_d(subsets, f);
  }
  const MeetMatrix direct = meet_matrix(d->indexed_set(), f);
  const Rational residual = max_abs_difference(reconstruct(*d).entries, direct.entries);
  if (c.format == "csv") {
    const ElementSubset set = d->indexed_set();
    std::ostringstream os;
    os << "label,lambda\n";
    for (std::size_t i = 0; i < set.size(); ++i)
      os << '"' << family.label(set[i]) << "\"," << to_string(d->diag[i]) << '\n';
    emit(c, os.str());
  } else {
    emit(c, decomposition_to_json(*d, residual).dump(2) + "\n");
  }
  return 0;
}

int cmd_grid(const RunConfig& c) {
  validate(c);
  if (!c.hasse.empty() || (c.family != "divisor" && c.family != "min") || c.d != 2)
    throw ConfigError("grid needs --family divisor|min with --d 2");
  const LatticeFamily family = resolve_family(c);
  const LatticeFunction f = summatory_function(family, constant_function(2, 1));
  const ElementSubset cover = ElementSubset::covering(family, c.m);
  if (c.format == "csv") {
    emit(c, "i1,i2,value\n" + function_table_csv(cover, f));
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const Point& x : cover.members()) rows.push_back({x[0], x[1], to_string(f(x))});
    nlohmann::json doc = {{"schema", kSchemaVersion}, {"kind", "grid"}, {"family", family.name()},
                          {"m", c.m},                 {"values", rows}};
    emit(c, doc.dump(2) + "\n");
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& c, bool needs_fn) {
  sub->add_option("--family", c.family, "divisor or min")->capture_default_str();
  sub->add_option("--d", c.d, "arity")->capture_default_str();
  if (needs_fn) sub->add_option("--fn", c.fn, "builtin name[:param] or table:<path>")->required();
  sub->add_option("--m", c.m, "covering bound")->capture_default_str();
  sub->add_option("--tol", c.tol, "eigenvalue tolerance")->capture_default_str();
  sub->add_option("--format", c.format, "json or csv")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--hasse", c.hasse, "explicit finite semilattice in Hasse format");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meetpd: positive definite functions on meet semilattices"};
  app.require_subcommand(1);
  RunConfig config;
  int (*run)(const RunConfig&) = nullptr;

  auto* matrix = app.add_subcommand("matrix", "write the meet matrix of the covering set");
  add_common(matrix, config, true);
  matrix->callback([&] { run = cmd_matrix; });

  auto* check = app.add_subcommand("check", "decide positive definiteness on the covering set");
  add_common(check, config, true);
  check->callback([&] { run = cmd_check; });

  auto* decompose = app.add_subcommand("decompose", "write the structured decomposition");
  add_common(decompose, config, true);
  decompose->callback([&] { run = cmd_decompose; });

  auto* grid = app.add_subcommand("grid", "write lower-set counts over {1..m}^2");
  add_common(grid, config, false);
  grid->callback([&] {
    if (grid->get_option("--format")->count() == 0) config.format = "csv";
    run = cmd_grid;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return run(config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnknownBuiltin& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArityMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEvaluation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEvaluation;
  }
}
