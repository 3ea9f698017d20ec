#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "meetpd/arithmetic.hpp"
#include "meetpd/meet_matrix.hpp"
#include "meetpd/pd_analysis.hpp"

namespace meetpd {

inline constexpr int kSchemaVersion = 1;

/// Parses the line-oriented Hasse format:
///
///     # comment
///     elem <id>
///     edge <lower> <upper>
///     family divisor d=2      (or: family min d=2)
///
/// A `family` line declares an implicit family and excludes elem/edge
/// records. Throws ParseError, plus the poset construction errors.
LatticeFamily parse_hasse(std::istream& in);
LatticeFamily load_hasse(const std::string& path);

/// Row-major CSV, exact rationals as p/q.
std::string matrix_to_csv(const MeetMatrix& m);

/// {schema, kind, size, labels, points, order_map?, entries}.
nlohmann::json matrix_to_json(const MeetMatrix& m, const std::optional<OrderMap>& order = std::nullopt);

nlohmann::json order_map_to_json(const OrderMap& order);

/// {schema, kind, factors, lambda, order_map, inertia, reconstruction_residual}.
nlohmann::json decomposition_to_json(const Decomposition& d, const Rational& residual);

/// {schema, verdict, witness{kind, element|subset+vector, value}, tested_bound, certificate_flag}.
nlohmann::json verdict_to_json(const PDVerdict& v);

/// `i1,...,id,value` (or `label,value` on explicit families); `#` comments
/// and a header line starting with a non-numeric first field are skipped.
std::unordered_map<Point, Rational, PointHash> read_value_table(std::istream& in, const LatticeFamily& family);

/// Diagonal of a `matrix_to_json` document: f(x_i) = A(i, i).
std::unordered_map<Point, Rational, PointHash> value_table_from_matrix_json(const nlohmann::json& doc,
                                                                            const LatticeFamily& family);

/// Loads either format, deciding by the first non-blank character.
std::unordered_map<Point, Rational, PointHash> load_value_table(const std::string& path,
                                                                const LatticeFamily& family);

/// `i1,...,id,value` rows for every member of s.
std::string function_table_csv(const ElementSubset& s, const LatticeFunction& f);

}  // namespace meetpd
