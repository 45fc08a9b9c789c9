#include "eqtop/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "eqtop/error.hpp"

namespace eqtop::io {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field '") + name + "'");
    return j.at(name);
}

std::size_t index_from_json(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw Error(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

}  // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
    throw Error("a rational must be a \"p/q\" string or an integer, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Expr expr_from_json(const Json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "var") return Expr::var(index_from_json(field(j, "index"), "var index"));
    if (kind == "const") return Expr::constant(rational_from_json(field(j, "value")));
    if (kind == "affine") {
        std::vector<Rational> coeffs;
        for (const auto& c : field(j, "coeffs")) coeffs.push_back(rational_from_json(c));
        return Expr::affine(std::move(coeffs), rational_from_json(field(j, "offset")));
    }
    if (kind == "scale") return Expr::scale(rational_from_json(field(j, "factor")), expr_from_json(field(j, "arg")));
    if (kind == "compose") {
        std::vector<Expr> inners;
        for (const auto& i : field(j, "inners")) inners.push_back(expr_from_json(i));
        return Expr::compose(expr_from_json(field(j, "outer")), std::move(inners));
    }
    const Json& args = field(j, "args");
    if (!args.is_array() || args.size() != 2) throw Error("'" + kind + "' takes exactly two args");
    Expr a = expr_from_json(args[0]), b = expr_from_json(args[1]);
    if (kind == "min") return Expr::min(a, b);
    if (kind == "max") return Expr::max(a, b);
    if (kind == "sum") return Expr::sum(a, b);
    if (kind == "mul") return Expr::mul(a, b);
    throw Error("unknown expression kind '" + kind + "'");
}

Json expr_to_json(const Expr& e) {
    Json j;
    auto cs = e.children();
    switch (e.kind()) {
        case ExprKind::Var:
            j["kind"] = "var";
            j["index"] = e.index();
            return j;
        case ExprKind::Const:
            j["kind"] = "const";
            j["value"] = rational_to_json(e.value());
            return j;
        case ExprKind::Affine: {
            j["kind"] = "affine";
            Json coeffs = Json::array();
            for (const auto& c : e.coeffs()) coeffs.push_back(rational_to_json(c));
            j["coeffs"] = coeffs;
            j["offset"] = rational_to_json(e.value());
            return j;
        }
        case ExprKind::Scale:
            j["kind"] = "scale";
            j["factor"] = rational_to_json(e.value());
            j["arg"] = expr_to_json(cs[0]);
            return j;
        case ExprKind::Compose: {
            j["kind"] = "compose";
            j["outer"] = expr_to_json(cs[0]);
            Json inners = Json::array();
            for (std::size_t i = 1; i < cs.size(); ++i) inners.push_back(expr_to_json(cs[i]));
            j["inners"] = inners;
            return j;
        }
        case ExprKind::Min: j["kind"] = "min"; break;
        case ExprKind::Max: j["kind"] = "max"; break;
        case ExprKind::Sum: j["kind"] = "sum"; break;
        case ExprKind::Mul: j["kind"] = "mul"; break;
    }
    j["args"] = Json::array({expr_to_json(cs[0]), expr_to_json(cs[1])});
    return j;
}

WitnessFile witness_from_json(const Json& j) {
    const Json& box = field(j, "box");
    if (!box.is_array() || box.size() != 1 || !box[0].is_array() || box[0].size() != 2)
        throw Error("'box' must hold exactly one [lo, hi] pair (the universe)");
    WitnessFile out{{rational_from_json(box[0][0]), rational_from_json(box[0][1])}, {}};
    if (out.universe.hi < out.universe.lo) throw Error("box has lo > hi");
    const Json& ops = field(j, "ops");
    if (!ops.is_object()) throw Error("'ops' must be an object");
    for (const auto& [name, e] : ops.items()) out.ops.emplace(name, expr_from_json(e));
    return out;
}

Json witness_to_json(const Interval& universe, const Witness& ops) {
    Json j;
    j["box"] = Json::array({Json::array({rational_to_json(universe.lo), rational_to_json(universe.hi)})});
    Json o = Json::object();
    for (const auto& [name, e] : ops) o[name] = expr_to_json(e);
    j["ops"] = o;
    return j;
}

FiniteAlgebra algebra_from_json(const Json& j) {
    const std::size_t size = index_from_json(field(j, "size"), "size");
    std::vector<OpTable> ops;
    for (const auto& o : field(j, "ops")) {
        OpTable t{field(o, "name").get<std::string>(), index_from_json(field(o, "arity"), "arity"), {}};
        for (const auto& x : field(o, "table")) t.table.push_back(static_cast<Element>(index_from_json(x, "table entry")));
        ops.push_back(std::move(t));
    }
    return FiniteAlgebra(size, std::move(ops));
}

Json algebra_to_json(const FiniteAlgebra& a) {
    Json j;
    j["size"] = a.size();
    Json ops = Json::array();
    for (const auto& t : a.ops()) {
        Json o;
        o["name"] = t.name;
        o["arity"] = t.arity;
        o["table"] = t.table;
        ops.push_back(o);
    }
    j["ops"] = ops;
    return j;
}

MetricTree tree_from_json(const Json& j) {
    std::vector<std::string> vertices = field(j, "vertices").get<std::vector<std::string>>();
    std::vector<TreeEdge> edges;
    auto lookup = [&](const Json& name) {
        auto it = std::find(vertices.begin(), vertices.end(), name.get<std::string>());
        if (it == vertices.end()) throw Error("edge names unknown vertex " + name.dump());
        return static_cast<std::size_t>(it - vertices.begin());
    };
    for (const auto& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 3) throw Error("an edge is [\"u\", \"v\", \"length\"]");
        edges.push_back({lookup(e[0]), lookup(e[1]), rational_from_json(e[2])});
    }
    return MetricTree(std::move(vertices), std::move(edges));
}

Json tree_to_json(const MetricTree& t) {
    Json j;
    j["vertices"] = Json(std::vector<std::string>(t.vertices().begin(), t.vertices().end()));
    Json edges = Json::array();
    for (const auto& e : t.edges())
        edges.push_back(Json::array({t.vertices()[e.u], t.vertices()[e.v], rational_to_json(e.length)}));
    j["edges"] = edges;
    return j;
}

TreePoint point_from_json(const Json& j) {
    return TreePoint{index_from_json(field(j, "edge"), "edge"), rational_from_json(field(j, "offset"))};
}

Json point_to_json(const TreePoint& p) {
    Json j;
    j["edge"] = p.edge;
    j["offset"] = rational_to_json(p.offset);
    return j;
}

Json point_list_to_json(const std::vector<Rational>& point) {
    Json j = Json::array();
    for (const auto& r : point) j.push_back(rational_to_json(r));
    return j;
}

std::string read_input(const std::string& path) {
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    os << in.rdbuf();
    return os.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace eqtop::io
