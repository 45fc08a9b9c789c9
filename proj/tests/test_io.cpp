#include <gtest/gtest.h>

#include "eqtop/catalog.hpp"
#include "eqtop/error.hpp"
#include "eqtop/io.hpp"

using namespace eqtop;
using io::Json;

namespace {

Rational q(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

std::string data(const std::string& name) { return std::string(EQTOP_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Io, Rationals) {
    EXPECT_EQ(io::rational_to_json(q(-3, 4)), Json("-3/4"));
    EXPECT_EQ(io::rational_from_json(Json("6/8")), q(3, 4));
    EXPECT_EQ(io::rational_from_json(Json(5)), Rational(5));
    EXPECT_THROW(io::rational_from_json(Json(0.5)), Error);
}

TEST(Io, ExpressionRoundTrip) {
    for (const CatalogEntry& c : catalog_all())
        for (const auto& [name, e] : c.ops) {
            Json j = io::expr_to_json(e);
            Expr back = io::expr_from_json(j);
            EXPECT_EQ(io::expr_to_json(back), j) << c.name << " " << name;
            EXPECT_EQ(to_string(back), to_string(e));
        }
    EXPECT_THROW(io::expr_from_json(Json::parse(R"({"kind":"pow"})")), Error);
    EXPECT_THROW(io::expr_from_json(Json::parse(R"({"kind":"var"})")), Error);
}

TEST(Io, WitnessRoundTrip) {
    CatalogEntry c = catalog_interval_ring();
    Json j = io::witness_to_json(c.universe, c.ops);
    io::WitnessFile w = io::witness_from_json(j);
    EXPECT_EQ(w.universe.lo, -1);
    EXPECT_EQ(w.universe.hi, 1);
    EXPECT_EQ(io::witness_to_json(w.universe, w.ops), j);
    EXPECT_THROW(io::witness_from_json(Json::parse(R"({"box":[[0,1],[0,1]],"ops":{}})")), Error);
}

TEST(Io, WitnessFilesInData) {
    for (const char* name : {"dlat01", "minority_q", "majority_m", "oneone_notonto", "interval_ring", "lambda_n_3"}) {
        io::WitnessFile w = io::witness_from_json(io::parse_json(io::read_input(data(std::string(name) + ".json"))));
        EXPECT_FALSE(w.ops.empty()) << name;
    }
}

TEST(Io, AlgebraRoundTrip) {
    FiniteAlgebra z2 = io::algebra_from_json(io::parse_json(io::read_input(data("z2_group.json"))));
    EXPECT_EQ(z2.size(), 2u);
    EXPECT_EQ(io::algebra_from_json(io::algebra_to_json(z2)), z2);
    EXPECT_THROW(io::algebra_from_json(Json::parse(R"({"size":2,"ops":[{"name":"f","arity":1,"table":[0]}]})")),
                 Error);
}

TEST(Io, TreeAndPoints) {
    MetricTree y = io::tree_from_json(io::parse_json(io::read_input(data("y_tree.json"))));
    EXPECT_EQ(y.vertices().size(), 4u);
    EXPECT_EQ(io::tree_to_json(io::tree_from_json(io::tree_to_json(y))), io::tree_to_json(y));
    TreePoint p{2, q(1, 3)};
    EXPECT_EQ(io::point_from_json(io::point_to_json(p)), p);
    EXPECT_THROW(io::tree_from_json(Json::parse(R"({"vertices":["a"],"edges":[["a","b","1"]]})")), Error);
}

TEST(Io, ReadErrors) {
    EXPECT_THROW(io::read_input(data("does_not_exist.json")), Error);
    EXPECT_THROW(io::parse_json("{"), Error);
}
