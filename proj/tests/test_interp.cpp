#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "eqtop/error.hpp"
#include "eqtop/finite_model.hpp"
#include "eqtop/interp.hpp"
#include "eqtop/parser.hpp"
#include "eqtop/theories.hpp"
#include "eqtop/undemanding.hpp"

using namespace eqtop;

namespace {

Term x(std::size_t i) { return Term::var(i); }

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(EQTOP_DATA_DIR) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Interpretation load(const std::string& file) {
    Document d = parse_document(slurp(file));
    return resolve(d.interpretations.at(0), d);
}

FiniteAlgebra two_element_ba() {
    return FiniteAlgebra(2, {{"zero", 0, {0}},
                             {"one", 0, {1}},
                             {"and", 2, {0, 0, 0, 1}},
                             {"or", 2, {0, 1, 1, 1}},
                             {"not", 1, {1, 0}}});
}

FiniteAlgebra z2() {
    return FiniteAlgebra(2, {{"plus", 2, {0, 1, 1, 0}}, {"minus", 2, {0, 1, 1, 0}}, {"zero", 0, {0}}});
}

FiniteAlgebra xor3() {
    std::vector<Element> t;
    for (Element a = 0; a < 2; ++a)
        for (Element b = 0; b < 2; ++b)
            for (Element c = 0; c < 2; ++c) t.push_back(a ^ b ^ c);
    return FiniteAlgebra(2, {{"q", 3, t}});
}

}  // namespace

TEST(ApplyInterpretation, SymmetricDifferenceGivesZ2) {
    FiniteAlgebra g = apply_interpretation(load("symdiff.eqt"), two_element_ba());
    EXPECT_EQ(g.op("plus").table, (std::vector<Element>{0, 1, 1, 0}));
    EXPECT_EQ(g.op("minus").table, (std::vector<Element>{0, 1, 1, 0}));
    EXPECT_EQ(g.op("zero").table, (std::vector<Element>{0}));
}

TEST(ApplyInterpretation, FourElementBooleanAlgebraGivesKlein) {
    FiniteAlgebra ba4 = product(two_element_ba(), two_element_ba());
    FiniteAlgebra g = apply_interpretation(load("symdiff.eqt"), ba4);
    for (Element a = 0; a < 4; ++a)
        for (Element b = 0; b < 4; ++b) EXPECT_EQ(g.apply("plus", std::vector<Element>{a, b}), a ^ b);
    EXPECT_TRUE(satisfies(g, theories::abelian_group()).holds());
}

TEST(ApplyInterpretation, IdentityLeavesModelAlone) {
    FiniteAlgebra ba = two_element_ba();
    EXPECT_EQ(apply_interpretation(identity_interpretation(theories::boolean_algebra()), ba), ba);
}

TEST(ApplyInterpretation, CommutesWithProduct) {
    Interpretation in = load("symdiff.eqt");
    FiniteAlgebra a = two_element_ba();
    FiniteAlgebra b = product(a, a);
    EXPECT_EQ(apply_interpretation(in, product(a, b)), product(apply_interpretation(in, a), apply_interpretation(in, b)));
}

TEST(CheckInterpretation, SymmetricDifference) {
    InterpretationCheck c = check_interpretation(load("symdiff.eqt"), 4);
    EXPECT_TRUE(c.confirmed());
    EXPECT_EQ(c.max_size, 4u);
    EXPECT_EQ(c.models_checked, 15u);
}

TEST(CheckInterpretation, BrokenVariantRefutedOnTwoElements) {
    InterpretationCheck c = check_interpretation(load("symdiff_broken.eqt"), 2);
    ASSERT_FALSE(c.confirmed());
    EXPECT_LE(c.refutation->model.size(), 2u);
    EXPECT_EQ(to_string(c.refutation->failure.equation), "plus(x1,zero)=x1");
}

TEST(CheckInterpretation, EmptySourceAndIdentity) {
    Theory empty = parse_theory("theory E { }");
    Interpretation in{empty, theories::majority(), {}};
    EXPECT_TRUE(check_interpretation(in, 3).confirmed());
    EXPECT_TRUE(check_interpretation(identity_interpretation(theories::minority()), 3).confirmed());
}

TEST(CheckWellFormed, RejectsBadTerms) {
    Interpretation in = load("symdiff.eqt");
    in.terms.insert_or_assign("plus", Term::app("and", {x(1), x(3)}));
    EXPECT_THROW(check_well_formed(in), Error);
    in = load("symdiff.eqt");
    in.terms.erase("zero");
    EXPECT_THROW(check_well_formed(in), Error);
    in = load("symdiff.eqt");
    in.terms.insert_or_assign("plus", Term::app("xor", {x(1), x(2)}));
    EXPECT_THROW(check_well_formed(in), Error);
}

TEST(MeetInterpretations, MajorityWithMaltsev) {
    Interpretation left = meet_left_interpretation(theories::majority(), theories::maltsev());
    EXPECT_EQ(left.terms.at("m"), Term::app("m", {x(1), x(2), x(3)}));
    EXPECT_EQ(left.terms.at("p__2"), x(1));
    EXPECT_EQ(left.terms.at("p"), x(1));
    EXPECT_EQ(left.terms.size(), 3u);

    Interpretation right = meet_right_interpretation(theories::majority(), theories::maltsev());
    EXPECT_EQ(right.terms.at("m"), x(1));
    EXPECT_EQ(right.terms.at("p"), x(2));
    EXPECT_EQ(right.terms.at("p__2"), Term::app("p", {x(1), x(2), x(3)}));
}

TEST(MeetInterpretations, EmptySigma) {
    Theory empty = parse_theory("theory E { }");
    Interpretation left = meet_left_interpretation(empty, theories::maltsev());
    EXPECT_EQ(left.terms.size(), 2u);
    for (const auto& [name, term] : left.terms) EXPECT_EQ(term, x(1)) << name;
}

TEST(MeetInterpretations, LeftReproducesFirstCoordinate) {
    Theory sigma = theories::abelian_group(), gamma = theories::minority();
    FiniteAlgebra m = meet_model(z2(), sigma, xor3(), gamma);
    FiniteAlgebra back = apply_interpretation(meet_left_interpretation(sigma, gamma), m);
    for (const auto& op : z2().ops()) {
        std::vector<Element> args(op.arity);
        std::size_t cells = checked_power(4, op.arity);
        for (std::size_t code = 0; code < cells; ++code) {
            std::size_t c = code;
            std::vector<Element> firsts(op.arity);
            for (std::size_t i = op.arity; i-- > 0; c /= 4) {
                args[i] = static_cast<Element>(c % 4);
                firsts[i] = args[i] / 2;
            }
            EXPECT_EQ(back.apply(op.name, args) / 2, z2().apply(op.name, firsts)) << op.name;
        }
    }
}

TEST(ComposeIntoMeet, MaltsevFromGroupAndMinority) {
    Theory maltsev = theories::maltsev();
    Interpretation alpha{maltsev, theories::abelian_group(),
                         {{"p", Term::app("plus", {Term::app("minus", {x(1), x(2)}), x(3)})}}};
    Interpretation beta{maltsev, theories::minority(), {{"p", Term::app("q", {x(1), x(2), x(3)})}}};
    Interpretation composed = compose_into_meet(alpha, beta);
    FiniteAlgebra m = meet_model(z2(), alpha.target, xor3(), beta.target);
    ASSERT_EQ(m.size(), 4u);
    FiniteAlgebra derived = apply_interpretation(composed, m);
    EXPECT_TRUE(satisfies(derived, maltsev).holds());
}

TEST(GeneratedTheories, Squaring) {
    Theory t = squaring_theory();
    EXPECT_EQ(t.signature.size(), 2u);
    EXPECT_EQ(t.equations.size(), 5u);
    EXPECT_TRUE(validate(t).empty());
}

TEST(GeneratedTheories, Sqrt2HSpace) {
    Theory t = sqrt2_hspace_theory();
    EXPECT_TRUE(validate(t).empty());
    EXPECT_EQ(t.equations.size(), 4u);
    EXPECT_FALSE(std::holds_alternative<Undemanding>(is_undemanding(t)));
}

TEST(GeneratedTheories, Lambda) {
    Theory l0 = lambda_theory(0);
    EXPECT_EQ(l0.equations.size(), 10u);
    EXPECT_FALSE(l0.signature.contains("f"));

    auto has = [](const Theory& t, const std::string& text) {
        for (const auto& e : t.equations)
            if (to_string(e) == text) return true;
        return false;
    };
    Theory l2 = lambda_theory(2);
    EXPECT_TRUE(has(l2, "f(a1)=one"));
    EXPECT_TRUE(has(l2, "f(a2)=zero"));
    EXPECT_TRUE(has(l2, "f(one)=one"));
    Theory l1 = lambda_theory(1);
    EXPECT_TRUE(has(l1, "f(one)=zero"));
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_TRUE(validate(lambda_theory(n)).empty()) << n;
}
