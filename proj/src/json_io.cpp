#include "qbd/json_io.hpp"

#include <sstream>

#include "qbd/error.hpp"

namespace qbd {

Json to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

Json to_json(const RatFun& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

Json to_json(const Rational& x) { return format_rational(x); }

Json to_json(const PolyVec& v) {
  Json out = Json::array();
  for (const auto& x : v.entries) out.push_back(to_json(x));
  return Json{{"kind", std::string(to_string(v.kind))}, {"entries", out}};
}

Json to_json(const Tree& t) {
  Json edges = Json::array();
  for (const auto& [u, v] : t.edges()) edges.push_back({u, v});
  return Json{{"n", t.size()}, {"edges", edges}};
}

Json to_json(const MatchedTree& mt) {
  Json out = to_json(mt.tree());
  Json matching = Json::array();
  for (int i = 0; i < mt.p(); ++i) matching.push_back({mt.l(i), mt.r(i)});
  out["matching"] = matching;
  out["labels"] = Json{{"L", mt.left()}, {"R", mt.right()}};
  return out;
}

namespace {

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"row_kind", std::string(to_string(m.row_kind()))},
              {"col_kind", std::string(to_string(m.col_kind()))},
              {"entries", rows}};
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Integer parse_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (!j.is_string()) parse_error("coefficient must be a decimal string");
  const auto s = j.get<std::string>();
  const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
    parse_error("bad coefficient '" + s + "'");
  }
  return Integer(s);
}

Vertex parse_vertex(const Json& j) {
  if (!j.is_number_integer()) parse_error("vertex ids must be integers");
  const auto v = j.get<long long>();
  if (v < 0 || v > 1'000'000) parse_error("vertex id out of range");
  return static_cast<Vertex>(v);
}

std::vector<Vertex> parse_vertices(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of vertex ids");
  std::vector<Vertex> out;
  for (const auto& x : j) out.push_back(parse_vertex(x));
  return out;
}

}  // namespace

Json to_json(const PolyMat& m) { return matrix_json(m); }
Json to_json(const RatMat& m) { return matrix_json(m); }
Json to_json(const QMat& m) { return matrix_json(m); }

Json to_json(const CheckResult& r) {
  Json out{{"name", r.name}, {"pass", r.pass}};
  if (r.witness) {
    const Witness& w = *r.witness;
    Json wj{{"location", w.location}};
    std::visit(
        [&](const auto& x) {
          using X = std::decay_t<decltype(x)>;
          if constexpr (!std::is_same_v<X, std::monostate>) wj["residual"] = to_json(x);
        },
        w.residual);
    if (!w.detail.empty()) wj["detail"] = w.detail;
    out["witness"] = wj;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json out{{"tree", to_hex(r.tree_code)}};
  out["p"] = r.p ? Json(*r.p) : Json(nullptr);
  out["checks"] = checks;
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) parse_error("polynomial must be an array of coefficients");
  std::vector<Integer> coeffs;
  for (const auto& c : j) coeffs.push_back(parse_integer(c));
  return Poly(std::move(coeffs));
}

RatFun ratfun_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) parse_error("rational function needs num and den");
  return RatFun(poly_from_json(j["num"]), poly_from_json(j["den"]));
}

Tree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("edges")) parse_error("tree needs an \"edges\" array");
  const Json& edges = j["edges"];
  if (!edges.is_array()) parse_error("\"edges\" must be an array");
  std::vector<Edge> list;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) parse_error("each edge must be a pair [u, v]");
    list.emplace_back(parse_vertex(e[0]), parse_vertex(e[1]));
  }
  if (j.contains("n")) return Tree::from_edges(parse_vertex(j["n"]), std::move(list));
  return Tree::from_edges(std::move(list));
}

MatchedTree matched_tree_from_json(const Json& j) {
  Tree t = tree_from_json(j);
  if (!j.contains("labels")) return match(t);
  const Json& labels = j["labels"];
  if (!labels.is_object() || !labels.contains("L") || !labels.contains("R")) {
    parse_error("\"labels\" needs \"L\" and \"R\" arrays");
  }
  return MatchedTree::from_labels(std::move(t), parse_vertices(labels["L"]), parse_vertices(labels["R"]));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(e.what());
  }
}

std::string to_csv(const QMat& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_rational(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qbd
