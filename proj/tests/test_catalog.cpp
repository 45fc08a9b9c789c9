#include <gtest/gtest.h>

#include "eqtop/catalog.hpp"
#include "eqtop/error.hpp"

using namespace eqtop;

namespace {

Rational q(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

bool certified(const CatalogEntry& c, const Witness& ops) {
    for (const auto& ev : check_pl_model(c.theory, ops, c.universe))
        if (!ev.verdict.equal()) return false;
    return true;
}

bool passes(const CatalogEntry& c, const Witness& ops) {
    if (c.mode == CheckMode::Certify) return certified(c, ops);
    return !sample_check(c.theory, ops, c.universe).refuted();
}

}  // namespace

TEST(Catalog, EveryEntryPassesAndEveryMutantFails) {
    for (const CatalogEntry& c : catalog_all()) {
        EXPECT_NO_THROW(check_witness_signature(c.theory, c.ops)) << c.name;
        EXPECT_TRUE(passes(c, c.ops)) << c.name;
        EXPECT_FALSE(c.mutants.empty()) << c.name;
        for (const Mutant& m : c.mutants) EXPECT_FALSE(passes(c, m.ops)) << c.name << ": " << m.description;
    }
}

TEST(Catalog, Lookup) {
    EXPECT_EQ(catalog("minority_q").name, "minority_q");
    EXPECT_EQ(catalog("lambda_n:3").name, "lambda_n(3)");
    for (const CatalogEntry& c : catalog_all()) EXPECT_EQ(catalog(c.name).name, c.name);
    EXPECT_EQ(catalog("affine_alpha:1/3").name, "affine_alpha(1/3)");
    EXPECT_EQ(catalog("affine3:1/6,1/3,1/2").name, "affine3(1/6,1/3,1/2)");
    EXPECT_THROW(catalog("nope"), Error);
    EXPECT_THROW(catalog("lambda_n:0"), Error);
    EXPECT_THROW(catalog("affine3:1/2,1/2"), Error);
    EXPECT_THROW(catalog_affine_alpha(2), PreconditionError);
    EXPECT_THROW(catalog_affine3(q(1, 2), q(1, 2), q(1, 2)), PreconditionError);
}

TEST(Catalog, LambdaThreeCertifies) {
    CatalogEntry c = catalog("lambda_n:3");
    EXPECT_TRUE(certified(c, c.ops));
}

TEST(Catalog, AffineAlphaFamily) {
    for (auto alpha : {q(0, 1), q(1, 4), q(1, 2), q(2, 3), q(1, 1)}) {
        CatalogEntry c = catalog_affine_alpha(alpha);
        EXPECT_TRUE(certified(c, c.ops)) << format_rational(alpha);
    }
}

TEST(Zigzag, AlternatesOnNodes) {
    for (std::size_t n = 1; n <= 6; ++n) {
        Expr f = pl_ops::zigzag(n);
        const long m = static_cast<long>(n + 1);
        for (long i = 0; i <= m; ++i) {
            std::vector<Rational> p{q(i, m)};
            EXPECT_EQ(eval(f, p), i % 2) << n << " " << i;
        }
    }
}

TEST(Catalog, OneOneCaseSplit) {
    CatalogEntry c = catalog_oneone_notonto();
    const Expr& f = c.ops.at("F");
    // F(a,b,0) = a and F(a,b,1) = b on [0,1]
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; b <= 4; ++b) {
            EXPECT_EQ(eval(f, std::vector<Rational>{q(a, 4), q(b, 4), 0}), q(a, 4));
            EXPECT_EQ(eval(f, std::vector<Rational>{q(a, 4), q(b, 4), 1}), q(b, 4));
        }
}
