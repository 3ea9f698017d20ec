#include "meetpd/io.hpp"

#include <fstream>
#include <sstream>

#include "meetpd/errors.hpp"
#include "meetpd/psd.hpp"

namespace meetpd {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

json point_json(const Point& p) {
  json out = json::array();
  for (auto v : p) out.push_back(v);
  return out;
}

}  // namespace

LatticeFamily parse_hasse(std::istream& in) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> edges;
  std::optional<LatticeFamily> family;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    std::istringstream tokens(body);
    std::string keyword;
    tokens >> keyword;
    std::vector<std::string> args;
    for (std::string t; tokens >> t;) args.push_back(t);
    const std::string where = "line " + std::to_string(lineno) + ": ";

    if (keyword == "elem") {
      if (args.size() != 1) throw ParseError(where + "expected 'elem <id>'");
      elements.push_back(args[0]);
    } else if (keyword == "edge") {
      if (args.size() != 2) throw ParseError(where + "expected 'edge <lower> <upper>'");
      edges.emplace_back(args[0], args[1]);
    } else if (keyword == "family") {
      if (family) throw ParseError(where + "more than one family declaration");
      if (args.empty() || args.size() > 2) throw ParseError(where + "expected 'family <divisor|min> d=<n>'");
      int d = 1;
      if (args.size() == 2) {
        if (args[1].rfind("d=", 0) != 0) throw ParseError(where + "expected d=<n>, got '" + args[1] + "'");
        try {
          d = std::stoi(args[1].substr(2));
        } catch (const std::exception&) {
          throw ParseError(where + "bad dimension '" + args[1] + "'");
        }
        if (d < 1) throw ParseError(where + "dimension must be >= 1");
      }
      if (args[0] == "divisor") family = LatticeFamily::divisor(d);
      else if (args[0] == "min") family = LatticeFamily::min(d);
      else throw ParseError(where + "unknown family '" + args[0] + "'");
    } else {
      throw ParseError(where + "unknown record '" + keyword + "'");
    }
  }

  if (family) {
    if (!elements.empty() || !edges.empty())
      throw ParseError("a family declaration cannot be mixed with elem/edge records");
    return *family;
  }
  if (elements.empty()) throw ParseError("no elements declared");
  auto lattice = std::make_shared<const MeetSemilattice>(Poset::from_covers(std::move(elements), edges));
  return LatticeFamily::explicit_finite(std::move(lattice));
}

LatticeFamily load_hasse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_hasse(in);
}

std::string matrix_to_csv(const MeetMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += to_string(m.entries(i, j));
    }
    out += '\n';
  }
  return out;
}

json order_map_to_json(const OrderMap& order) {
  json entries = json::array();
  for (std::size_t flat = 0; flat < order.size(); ++flat) {
    json multi = json::array();
    for (auto v : order.multi(flat)) multi.push_back(v + 1);
    entries.push_back({{"flat", flat + 1}, {"multi", multi}});
  }
  return {{"dims", order.dims()}, {"convention", "lexicographic, last axis fastest, 1-based"},
          {"entries", entries}};
}

json matrix_to_json(const MeetMatrix& m, const std::optional<OrderMap>& order) {
  json labels = json::array();
  json points = json::array();
  for (const auto& x : m.subset.members()) {
    labels.push_back(m.subset.family().label(x));
    points.push_back(point_json(x));
  }
  json entries = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m.entries(i, j)));
    entries.push_back(row);
  }
  json out = {{"schema", kSchemaVersion}, {"kind", "meet_matrix"},         {"family", m.subset.family().name()},
              {"size", m.size()},         {"labels", labels},              {"points", points},
              {"entries", entries}};
  if (order) out["order_map"] = order_map_to_json(*order);
  return out;
}

json decomposition_to_json(const Decomposition& d, const Rational& residual) {
  json factors = json::array();
  for (std::size_t k = 0; k < d.factors.size(); ++k) {
    json labels = json::array();
    for (const auto& x : d.subsets[k].members()) labels.push_back(d.subsets[k].family().label(x));
    json rows = json::array();
    for (std::size_t i = 0; i < d.factors[k].rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < d.factors[k].cols(); ++j) row.push_back(static_cast<int>(d.factors[k](i, j)));
      rows.push_back(row);
    }
    factors.push_back({{"labels", labels}, {"zeta", rows}});
  }
  json lambda = json::array();
  for (const auto& v : d.diag) lambda.push_back(to_string(v));
  const Inertia in = inertia_of_diagonal(d.diag);
  return {{"schema", kSchemaVersion},
          {"kind", "decomposition"},
          {"factors", factors},
          {"lambda", lambda},
          {"order_map", order_map_to_json(d.order_map)},
          {"inertia", {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}}},
          {"reconstruction_residual", to_string(residual)}};
}

json verdict_to_json(const PDVerdict& v) {
  json out = {{"schema", kSchemaVersion},
              {"verdict", to_string(v.verdict)},
              {"tested_bound", v.tested_bound},
              {"certificate_flag", v.certificate}};
  if (v.witness) {
    const Witness& w = *v.witness;
    json wj;
    if (w.kind == Witness::Kind::element) {
      wj = {{"kind", "element"}, {"element", w.element_label}, {"point", point_json(w.element)}};
    } else {
      json vec = json::array();
      for (const auto& x : w.vector) vec.push_back(to_string(x));
      wj = {{"kind", "vector"}, {"subset", w.subset_labels}, {"vector", vec}};
    }
    wj["value"] = to_string(w.value);
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

std::unordered_map<Point, Rational, PointHash> read_value_table(std::istream& in, const LatticeFamily& family) {
  std::unordered_map<Point, Rational, PointHash> table;
  const auto arity = static_cast<std::size_t>(family.arity());
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (body.empty()) continue;
    auto fields = split(body, ',');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (first) {
      first = false;
      // A header is recognised by a value column that is not a number;
      // labels of explicit families need not be numeric themselves.
      bool header = false;
      try {
        parse_rational(fields.back());
      } catch (const Error&) {
        header = true;
      }
      if (header) continue;
    }
    if (fields.size() != arity + 1)
      throw ParseError(where + "expected " + std::to_string(arity + 1) + " comma-separated fields");
    std::string label;
    if (arity == 1) {
      label = fields[0];
    } else {
      label = "(";
      for (std::size_t k = 0; k < arity; ++k) label += (k ? "," : "") + fields[k];
      label += ")";
    }
    Point p;
    try {
      p = family.parse_label(label);
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
    if (!table.emplace(p, parse_rational(fields[arity])).second)
      throw ParseError(where + "duplicate entry for " + label);
  }
  return table;
}

std::unordered_map<Point, Rational, PointHash> value_table_from_matrix_json(const json& doc,
                                                                            const LatticeFamily& family) {
  try {
    if (doc.at("schema").get<int>() != kSchemaVersion) throw ParseError("unsupported schema version");
    if (doc.at("kind").get<std::string>() != "meet_matrix") throw ParseError("not a meet_matrix document");
    const auto& points = doc.at("points");
    const auto& entries = doc.at("entries");
    if (points.size() != entries.size()) throw ParseError("points and entries disagree in size");
    std::unordered_map<Point, Rational, PointHash> table;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Point p = points[i].get<Point>();
      if (!family.contains(p)) throw ParseError("point " + family.label(p) + " is not in " + family.name());
      table.emplace(std::move(p), parse_rational(entries[i][i].get<std::string>()));
    }
    return table;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix document: ") + e.what());
  }
}

std::unordered_map<Point, Rational, PointHash> load_value_table(const std::string& path,
                                                                const LatticeFamily& family) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  char c = 0;
  while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
  }
  in.clear();
  in.seekg(0);
  if (c == '{') {
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw ParseError("'" + path + "': " + e.what());
    }
    return value_table_from_matrix_json(doc, family);
  }
  return read_value_table(in, family);
}

std::string function_table_csv(const ElementSubset& s, const LatticeFunction& f) {
  std::string out;
  const bool explicit_family = s.family().kind() == FamilyKind::explicit_finite;
  for (const auto& x : s.members()) {
    if (explicit_family) {
      out += s.family().label(x);
    } else {
      for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + std::to_string(x[k]);
    }
    out += "," + to_string(f(x)) + "\n";
  }
  return out;
}

}  // namespace meetpd
