#ifndef QBD_JSON_IO_HPP
#define QBD_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "qbd/matrix.hpp"
#include "qbd/poly.hpp"
#include "qbd/ratfun.hpp"
#include "qbd/tree.hpp"
#include "qbd/verify.hpp"

// Wire formats. Polynomials are ascending arrays of decimal strings (zero is
// []), rationals are "a/b" strings. Parse errors throw ParseError.
namespace qbd {

using Json = nlohmann::ordered_json;

Json to_json(const Poly& p);
Json to_json(const RatFun& f);
Json to_json(const Rational& x);
Json to_json(const PolyVec& v);
Json to_json(const Tree& t);
Json to_json(const MatchedTree& mt);
Json to_json(const PolyMat& m);
Json to_json(const RatMat& m);
Json to_json(const QMat& m);
Json to_json(const CheckResult& r);
Json to_json(const VerificationReport& r);

Poly poly_from_json(const Json& j);
RatFun ratfun_from_json(const Json& j);

/// {"edges": [[u, v], ...], "n": optional}. Throws NotATree on bad edges.
Tree tree_from_json(const Json& j);
/// As tree_from_json; uses "labels" {"L": [...], "R": [...]} when present,
/// otherwise the standard labeling of the unique perfect matching.
MatchedTree matched_tree_from_json(const Json& j);

Json parse_json(const std::string& text);

// One line per row, entries "a/b" separated by commas.
std::string to_csv(const QMat& m);

}  // namespace qbd

#endif  // QBD_JSON_IO_HPP
