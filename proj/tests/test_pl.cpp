#include <gtest/gtest.h>

#include <random>

#include "eqtop/catalog.hpp"
#include "eqtop/error.hpp"
#include "eqtop/pl.hpp"
#include "eqtop/pl_expr.hpp"
#include "eqtop/theories.hpp"

using namespace eqtop;

namespace {

Expr v(std::size_t i) { return Expr::var(i); }
Rational q(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}
std::vector<Rational> pt(std::initializer_list<Rational> xs) { return xs; }

const Interval kUnit{0, 1};

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, const Interval& box) {
    std::uniform_int_distribution<long> num(0, 1000);
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(box.lo + (box.hi - box.lo) * q(num(rng), 1000));
    return p;
}

// A small family of PL expressions in three variables for property tests.
std::vector<Expr> sample_exprs() {
    return {pl_ops::median(),
            pl_ops::minority(),
            pl_ops::two_thirds(),
            Expr::min(v(0), v(1)),
            v(0) + v(1) - Expr::max(v(0), v(1)),
            Expr::max(Expr::affine({2, -1, 0}, q(1, 3)), Expr::min(v(2), Expr::constant(q(1, 2)))),
            Expr::compose(pl_ops::median(), {v(2), Expr::min(v(0), v(1)), v(1)}),
            q(-3, 2) * Expr::min(v(0) - v(2), v(1))};
}

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("6/4"), q(3, 2));
    EXPECT_EQ(parse_rational("-1/3"), q(-1, 3));
    EXPECT_EQ(format_rational(q(6, 4)), "3/2");
    EXPECT_EQ(format_rational(Rational(-2)), "-2");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
    EXPECT_THROW(parse_rational(""), Error);
}

TEST(Eval, Examples) {
    EXPECT_EQ(eval(pl_ops::meet(), pt({q(1, 3), q(1, 2)})), q(1, 3));
    EXPECT_EQ(eval(pl_ops::two_thirds(), pt({0, 1, 0})), 0);
    EXPECT_EQ(eval(pl_ops::truncated_sum(), pt({q(3, 4), q(1, 2)})), 1);
    EXPECT_EQ(eval(pl_ops::truncated_sum(), pt({q(-3, 4), q(-1, 2)})), -1);
    EXPECT_EQ(eval(Expr::mul(v(0), v(1)), pt({q(2, 3), q(-3, 4)})), q(-1, 2));
    EXPECT_THROW(eval(pl_ops::median(), pt({0, 1})), ArityError);
}

TEST(Expr, ArityAndPl) {
    EXPECT_EQ(pl_ops::median().arity(), 3u);
    EXPECT_EQ(Expr::constant(1).arity(), 0u);
    EXPECT_TRUE(pl_ops::minority().is_pl());
    EXPECT_FALSE((v(0) + Expr::mul(v(0), v(1))).is_pl());
    EXPECT_THROW(Expr::compose(pl_ops::median(), {v(0), v(1)}), ArityError);
}

TEST(TermToExpr, BuildsComposition) {
    Witness ops{{"q", pl_ops::minority()}};
    Term t = Term::app("q", {Term::var(1), Term::var(1), Term::var(2)});
    Expr e = term_to_expr(t, ops);
    EXPECT_EQ(e.arity(), 2u);
    EXPECT_EQ(eval(e, pt({q(1, 5), q(4, 5)})), q(4, 5));
    EXPECT_THROW(term_to_expr(Term::app("r", {Term::var(1)}), ops), UnknownSymbolError);
    EXPECT_THROW(term_to_expr(Term::app("q", {Term::var(1)}), ops), ArityError);
}

TEST(PlEqual, MinPlusMaxIsSum) {
    PlVerdict r = pl_equal(Expr::min(v(0), v(1)), v(0) + v(1) - Expr::max(v(0), v(1)), power_box(kUnit, 2));
    EXPECT_TRUE(r.equal());
    EXPECT_GE(r.cells, 2u);
}

TEST(PlEqual, MinorityLaw) {
    Expr lhs = Expr::compose(pl_ops::minority(), {v(0), v(0), v(1)});
    EXPECT_TRUE(pl_equal(lhs, v(1), power_box(kUnit, 2)).equal());
}

TEST(PlEqual, MinorityIsNotMajority) {
    PlVerdict r = pl_equal(pl_ops::minority(), pl_ops::median(), power_box(kUnit, 3));
    ASSERT_FALSE(r.equal());
    const auto& w = *r.witness;
    EXPECT_EQ(eval(pl_ops::minority(), w), r.lhs_value);
    EXPECT_EQ(eval(pl_ops::median(), w), r.rhs_value);
    EXPECT_NE(r.lhs_value, r.rhs_value);
    // the oracle point from the definitions
    EXPECT_EQ(eval(pl_ops::minority(), pt({0, 0, 1})), 1);
    EXPECT_EQ(eval(pl_ops::median(), pt({0, 0, 1})), 0);
}

TEST(PlEqual, WitnessLiesInBox) {
    Box box{{q(-1, 2), q(1, 3)}, {0, 2}, {q(1, 7), q(5, 7)}};
    PlVerdict r = pl_equal(v(0) + v(1), Expr::max(v(0), v(1)), box);
    ASSERT_FALSE(r.equal());
    for (std::size_t i = 0; i < box.size(); ++i) {
        EXPECT_LE(box[i].lo, (*r.witness)[i]);
        EXPECT_LE((*r.witness)[i], box[i].hi);
    }
}

TEST(PlEqual, DegenerateBoxAndErrors) {
    // a point box: both sides are constants
    Box point{{q(1, 3), q(1, 3)}, {q(1, 2), q(1, 2)}};
    EXPECT_TRUE(pl_equal(Expr::min(v(0), v(1)), Expr::constant(q(1, 3)), point).equal());
    EXPECT_FALSE(pl_equal(Expr::min(v(0), v(1)), Expr::constant(q(1, 2)), point).equal());
    EXPECT_THROW(pl_equal(Expr::mul(v(0), v(1)), v(0), power_box(kUnit, 2)), Error);
    EXPECT_THROW(pl_equal(v(2), v(0), power_box(kUnit, 2)), ArityError);
    EXPECT_THROW(pl_equal(v(0), v(0), Box{{1, 0}}), Error);
}

TEST(PlEqual, AgreesWithPointEvaluation) {
    // If pl_equal says Equal, no random point may separate; if not, the witness must.
    std::mt19937_64 rng(7);
    auto exprs = sample_exprs();
    Box box = power_box(kUnit, 3);
    for (std::size_t i = 0; i < exprs.size(); ++i)
        for (std::size_t j = 0; j < exprs.size(); ++j) {
            PlVerdict r = pl_equal(exprs[i], exprs[j], box);
            PlVerdict s = pl_equal(exprs[j], exprs[i], box);
            EXPECT_EQ(r.equal(), s.equal()) << i << " " << j;
            if (i == j) {
                EXPECT_TRUE(r.equal());
            }
            if (r.equal()) {
                for (int k = 0; k < 1000; ++k) {
                    auto p = random_point(rng, 3, kUnit);
                    ASSERT_EQ(eval(exprs[i], p), eval(exprs[j], p)) << i << " " << j;
                }
            } else {
                EXPECT_NE(eval(exprs[i], *r.witness), eval(exprs[j], *r.witness));
            }
        }
}

TEST(Normalize, MatchesEvaluation) {
    std::mt19937_64 rng(11);
    for (const Expr& e : sample_exprs()) {
        MaxOfMins n = normalize(e, 3);
        for (int k = 0; k < 200; ++k) {
            auto p = random_point(rng, 3, {-2, 2});
            ASSERT_EQ(n.at(p), eval(e, p)) << to_string(e);
        }
    }
    EXPECT_THROW(normalize(Expr::mul(v(0), v(1)), 2), Error);
}

TEST(Normalize, GroupGuard) {
    Expr e = pl_ops::minority();
    for (int i = 0; i < 3; ++i) e = Expr::compose(pl_ops::minority(), {e, Expr::compose(e, {v(1), v(2), v(0)}), v(2)});
    EXPECT_THROW(normalize(e, 3, 16), Error);
}

TEST(CheckPlModel, DistributiveLattice) {
    CatalogEntry c = catalog_dlat01();
    for (const auto& ev : check_pl_model(c.theory, c.ops, c.universe))
        EXPECT_TRUE(ev.verdict.equal()) << to_string(ev.equation);
}

TEST(CheckPlModel, MinorityAndMutant) {
    CatalogEntry c = catalog_minority_q();
    for (const auto& ev : check_pl_model(c.theory, c.ops, c.universe)) EXPECT_TRUE(ev.verdict.equal());
    bool refuted = false;
    for (const auto& ev : check_pl_model(c.theory, c.mutants.at(0).ops, c.universe)) {
        if (ev.verdict.equal()) continue;
        refuted = true;
        Expr lhs = term_to_expr(ev.equation.lhs, c.mutants[0].ops);
        Expr rhs = term_to_expr(ev.equation.rhs, c.mutants[0].ops);
        std::vector<Rational> w = *ev.verdict.witness;
        w.resize(std::max(lhs.arity(), rhs.arity()), 0);
        EXPECT_NE(eval(lhs, w), eval(rhs, w));
    }
    EXPECT_TRUE(refuted);
}

TEST(CheckWitnessSignature, Errors) {
    EXPECT_THROW(check_witness_signature(theories::majority(), {}), SignatureError);
    EXPECT_THROW(check_witness_signature(theories::associative(), {{"f", pl_ops::median()}}), SignatureError);
    EXPECT_NO_THROW(check_witness_signature(theories::associative(), {{"f", pl_ops::meet()}}));
}

TEST(SampleCheck, IntervalRing) {
    CatalogEntry c = catalog_interval_ring();
    SampleVerdict s = sample_check(c.theory, c.ops, c.universe);
    EXPECT_FALSE(s.refuted());
    EXPECT_GT(s.points, 2000u);
    for (const auto& m : c.mutants) {
        SampleVerdict r = sample_check(c.theory, m.ops, c.universe);
        ASSERT_TRUE(r.refuted()) << m.description;
        EXPECT_NE(r.refutation->lhs_value, r.refutation->rhs_value);
    }
}

TEST(SampleCheck, ShrinkMutantFailsAtOne) {
    CatalogEntry c = catalog_interval_ring();
    Witness ops = c.ops;
    ops.insert_or_assign("F", q(1, 4) * v(0));
    Expr lhs = term_to_expr(c.theory.equations[2].lhs, ops);
    EXPECT_EQ(eval(lhs, pt({1})), q(3, 4));
}

TEST(SampleCheck, BergmanSpotValue) {
    CatalogEntry c = catalog_interval_ring();
    const Equation& bergman = c.theory.equations.back();
    auto p = pt({q(-1, 2), q(1, 2), q(-1, 3)});
    EXPECT_EQ(eval(term_to_expr(bergman.lhs, c.ops), p), q(1, 6));
    EXPECT_EQ(eval(term_to_expr(bergman.rhs, c.ops), p), q(1, 6));
}

TEST(SampleCheck, SeedIsReproducible) {
    CatalogEntry c = catalog_oneone_notonto_bilinear();
    SamplePlan plan;
    plan.seed = 42;
    SampleVerdict a = sample_check(c.theory, c.mutants[0].ops, c.universe, plan);
    SampleVerdict b = sample_check(c.theory, c.mutants[0].ops, c.universe, plan);
    ASSERT_TRUE(a.refuted());
    EXPECT_EQ(a.refutation->point, b.refutation->point);
    EXPECT_EQ(a.points, b.points);
}

TEST(Chebyshev, Values) {
    EXPECT_EQ(chebyshev(3, q(1, 2)), -1);
    EXPECT_EQ(chebyshev(2, 0), -1);
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(chebyshev(n, 1), 1) << n;
    for (std::size_t n = 0; n <= 8; ++n)
        for (long i = -16; i <= 16; ++i) {
            Rational t = chebyshev(n, q(i, 16));
            EXPECT_LE(abs(t), 1) << n << " " << i;
        }
}
