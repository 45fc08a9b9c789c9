#pragma once

#include <string>

#include <json.hpp>

#include "eqtop/finite_model.hpp"
#include "eqtop/pl.hpp"
#include "eqtop/tree.hpp"

// JSON forms of the library's data. Rationals are "p/q" strings (plain
// JSON integers are accepted on input). Every reader throws Error with a
// description of the offending field.
namespace eqtop::io {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

/// {"kind":"var","index":i} (0-based), {"kind":"const","value":r},
/// {"kind":"affine","coeffs":[...],"offset":r}, {"kind":"min"|"max"|"sum"|"mul","args":[a,b]},
/// {"kind":"scale","factor":r,"arg":e}, {"kind":"compose","outer":e,"inners":[...]}.
Expr expr_from_json(const Json& j);
Json expr_to_json(const Expr& e);

/// {"box":[[lo,hi]],"ops":{name: expr}}. The single box entry is the
/// universe; each equation is checked on its power.
struct WitnessFile {
    Interval universe;
    Witness ops;
};
WitnessFile witness_from_json(const Json& j);
Json witness_to_json(const Interval& universe, const Witness& ops);

/// {"size":n,"ops":[{"name":f,"arity":k,"table":[...]}, ...]}
FiniteAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const FiniteAlgebra& a);

/// {"vertices":["v1",...],"edges":[["u","v","p/q"],...]}
MetricTree tree_from_json(const Json& j);
Json tree_to_json(const MetricTree& t);

/// {"edge":i,"offset":"p/q"}
TreePoint point_from_json(const Json& j);
Json point_to_json(const TreePoint& p);

Json point_list_to_json(const std::vector<Rational>& point);

/// Reads a whole file, or standard input for "-". Throws Error on failure.
std::string read_input(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace eqtop::io
