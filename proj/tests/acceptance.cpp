// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "eqtop/catalog.hpp"
#include "eqtop/error.hpp"
#include "eqtop/finite_model.hpp"
#include "eqtop/interp.hpp"
#include "eqtop/parser.hpp"
#include "eqtop/pl.hpp"
#include "eqtop/theories.hpp"
#include "eqtop/tree.hpp"
#include "eqtop/undemanding.hpp"

using namespace eqtop;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail.clear();
        else detail += "; ";
        pass = false;
        detail += what;
    }
};

int failures = 0;

void criterion(int n, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.2fs", seconds_since(start));
    std::printf("criterion %2d %s (%s) %s\n", n, o.pass ? "PASS" : "FAIL", elapsed, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

bool is_undem(const Theory& t) { return std::holds_alternative<Undemanding>(is_undemanding(t)); }

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(EQTOP_DATA_DIR) + "/" + name);
    if (!in) throw Error("cannot read data/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Every term of depth <= max_depth over x1, x2 and the constants of the
// signature (a leaf has depth 0).
std::vector<Term> terms_up_to(const SimilarityType& sig, std::size_t max_depth) {
    std::vector<Term> leaves{Term::var(1), Term::var(2)};
    for (const Symbol& s : sig)
        if (s.arity == 0) leaves.push_back(Term::app(s.name));
    std::vector<Term> level = leaves;
    for (std::size_t d = 1; d <= max_depth; ++d) {
        std::vector<Term> next = leaves;
        for (const Symbol& s : sig) {
            if (s.arity == 0) continue;
            std::vector<std::size_t> idx(s.arity, 0);
            while (true) {
                std::vector<Term> args;
                for (std::size_t i : idx) args.push_back(level[i]);
                next.push_back(Term::app(s.name, args));
                std::size_t pos = s.arity;
                while (pos > 0 && ++idx[pos - 1] == level.size()) idx[--pos] = 0;
                if (pos == 0) break;
            }
        }
        level = std::move(next);
    }
    return level;
}

std::vector<Equation> pairs_of(const std::vector<Term>& terms) {
    std::vector<Equation> out;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) out.push_back({terms[i], terms[j]});
    return out;
}

// Over a few signatures of at most two symbols of arity at most 2: every
// single equation between distinct terms of depth <= 2, and every pair of
// equations between distinct terms of depth <= 1.
std::vector<Theory> oracle_family() {
    const std::vector<SimilarityType> signatures{
        SimilarityType({{"f", 2}}),
        SimilarityType({{"f", 1}, {"g", 2}}),
        SimilarityType({{"f", 2}, {"g", 2}}),
        SimilarityType({{"c", 0}, {"f", 2}}),
    };
    std::vector<Theory> out;
    for (const auto& sig : signatures) {
        for (const Equation& e : pairs_of(terms_up_to(sig, 2))) out.push_back({"T", sig, {e}});
        auto pool = pairs_of(terms_up_to(sig, 1));
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) out.push_back({"T", sig, {pool[i], pool[j]}});
    }
    return out;
}

// The two-element algebra a witness describes, constants at 0.
FiniteAlgebra realize(const ProjectionAssignment& w) {
    std::vector<OpTable> ops;
    for (std::size_t i = 0; i < w.signature.size(); ++i) {
        const Symbol& s = w.signature[i];
        const auto& c = w.choices[i];
        ops.push_back({s.name, s.arity,
                       c.is_constant() ? constant_table(2, s.arity, 0) : projection_table(2, s.arity, *c.proj)});
    }
    return FiniteAlgebra(2, std::move(ops));
}

FiniteAlgebra empty_signature(std::size_t n) { return FiniteAlgebra(n, {}); }

FiniteAlgebra z2_group() {
    return FiniteAlgebra(2, {{"plus", 2, {0, 1, 1, 0}}, {"minus", 2, {0, 1, 1, 0}}, {"zero", 0, {0}}});
}

FiniteAlgebra xor_minority() {
    std::vector<Element> t;
    for (Element a = 0; a < 2; ++a)
        for (Element b = 0; b < 2; ++b)
            for (Element c = 0; c < 2; ++c) t.push_back(a ^ b ^ c);
    return FiniteAlgebra(2, {{"q", 3, t}});
}

Interpretation load_interpretation(const std::string& file) {
    Document d = parse_document(slurp(file));
    if (d.interpretations.empty()) throw Error("no interpret block in " + file);
    return resolve(d.interpretations.front(), d);
}

}  // namespace

int main() {
    criterion(1, [] {
        Outcome o;
        struct Case {
            const char* label;
            std::function<bool()> verdict;
            bool expected;
        };
        const std::vector<Case> cases{
            {"associative undemanding", [] { return is_undem(theories::associative()); }, true},
            {"idempotent+entropic undemanding", [] { return is_undem(theories::idempotent_entropic()); }, true},
            {"one-one-not-onto demanding", [] { return is_undem(theories::one_one_not_onto()); }, false},
            {"evans demanding at k=1",
             [] { return std::holds_alternative<KUndemanding>(is_k_undemanding(theories::evans(), 1)); }, false},
            {"evans 2-undemanding",
             [] { return std::holds_alternative<KUndemanding>(is_k_undemanding(theories::evans(), 2)); }, true},
        };
        for (const auto& c : cases) {
            const auto start = Clock::now();
            bool got = c.verdict();
            o.require(got == c.expected, std::string(c.label) + " wrong");
            o.require(seconds_since(start) < 1.0, std::string(c.label) + " took over 1 s");
        }
        if (o.pass) o.detail = "5 verdicts as labelled, each under 1 s";
        return o;
    });

    criterion(2, [] {
        Outcome o;
        std::string text = "theory T {";
        std::uint64_t expected = 1;
        for (int t = 1; t <= 4; ++t) {
            text += " op f" + std::to_string(t) + ":2;";
            // commutative and idempotent: neither a projection nor a constant fits
            const std::string f = "f" + std::to_string(t);
            text += " eq " + f + "(x,y)=" + f + "(y,x); eq " + f + "(x,x)=x;";
            expected *= 3;
            Theory theory = parse_theory(text + " }");
            std::uint64_t visited = 0;
            is_undemanding(theory, &visited);
            const std::uint64_t walked =
                for_each_projection_assignment(theory, [](const ProjectionAssignment&) { return true; });
            o.require(assignment_count(theory) == expected, "assignment_count at |T|=" + std::to_string(t));
            o.require(walked == expected, "enumerator count at |T|=" + std::to_string(t));
            o.require(visited == expected, "demanding search visits at |T|=" + std::to_string(t));
        }
        if (o.pass) o.detail = "3, 9, 27, 81 assignments counted and visited";
        return o;
    });

    criterion(3, [] {
        Outcome o;
        const auto start = Clock::now();
        auto family = oracle_family();
        std::size_t undem = 0, mismatches = 0, unsound = 0;
        for (const Theory& t : family) {
            auto verdict = is_undemanding(t);
            const auto* w = std::get_if<Undemanding>(&verdict);
            bool b = search_projection_constant_model(t).has_value();
            if ((w != nullptr) != b) ++mismatches;
            if (w) {
                ++undem;
                if (!satisfies(realize(w->witness), t).holds()) ++unsound;
            }
        }
        o.require(unsound == 0, std::to_string(unsound) + " witnesses fail on {0,1}");
        o.require(family.size() >= 200, "family has only " + std::to_string(family.size()) + " theories");
        o.require(mismatches == 0, std::to_string(mismatches) + " disagreements");
        o.require(seconds_since(start) < 60, "over 60 s");
        o.detail = std::to_string(family.size()) + " theories, " + std::to_string(undem) + " undemanding, " +
                   std::to_string(mismatches) + " disagreements" + (o.pass ? "" : "; " + o.detail);
        return o;
    });

    criterion(4, [] {
        Outcome o;
        std::size_t entries = 0, equations = 0;
        for (const CatalogEntry& c : catalog_all()) {
            if (c.mode != CheckMode::Certify) continue;
            const auto start = Clock::now();
            for (const auto& ev : check_pl_model(c.theory, c.ops, c.universe)) {
                o.require(ev.verdict.equal(), c.name + " fails " + to_string(ev.equation));
                ++equations;
            }
            o.require(seconds_since(start) < 5, c.name + " took over 5 s");
            ++entries;
        }
        if (o.pass)
            o.detail = std::to_string(entries) + " entries certified exactly, " + std::to_string(equations) +
                       " equations Equal";
        return o;
    });

    criterion(5, [] {
        Outcome o;
        std::size_t mutants = 0;
        for (const CatalogEntry& c : catalog_all()) {
            if (c.mode != CheckMode::Certify) continue;
            for (const Mutant& m : c.mutants) {
                const auto start = Clock::now();
                bool refuted = false;
                for (const auto& ev : check_pl_model(c.theory, m.ops, c.universe)) {
                    if (ev.verdict.equal()) continue;
                    Expr lhs = term_to_expr(ev.equation.lhs, m.ops);
                    Expr rhs = term_to_expr(ev.equation.rhs, m.ops);
                    std::vector<Rational> w = *ev.verdict.witness;
                    w.resize(std::max({w.size(), lhs.arity(), rhs.arity()}), c.universe.lo);
                    refuted = eval(lhs, w) != eval(rhs, w);
                    break;
                }
                o.require(refuted, c.name + " mutant '" + m.description + "' not refuted");
                o.require(seconds_since(start) < 5, c.name + " mutant took over 5 s");
                ++mutants;
            }
        }
        if (o.pass) o.detail = std::to_string(mutants) + " mutants refuted at verified rational points";
        return o;
    });

    criterion(6, [] {
        Outcome o;
        for (std::size_t n = 1; n <= 4; ++n)
            o.require(satisfies(power_algebra(empty_signature(n), 2), squaring_theory()).holds(),
                      "power_algebra(B,2) with |B|=" + std::to_string(n));
        std::string found;
        for (std::size_t n = 1; n <= 5; ++n) {
            bool has = search_models(squaring_theory(), n).has_value();
            bool square = n == 1 || n == 4;
            o.require(has == square, "search at n=" + std::to_string(n));
            found += (found.empty() ? "" : " ") + std::to_string(n) + (has ? ":model" : ":none");
        }
        if (o.pass) o.detail = "powers satisfy squaring for |B|=1..4; search " + found;
        return o;
    });

    criterion(7, [] {
        Outcome o;
        const auto start = Clock::now();
        Theory maltsev = theories::maltsev();
        Interpretation alpha{maltsev, theories::abelian_group(),
                             {{"p", Term::app("plus", {Term::app("minus", {Term::var(1), Term::var(2)}),
                                                       Term::var(3)})}}};
        Interpretation beta{maltsev, theories::minority(),
                            {{"p", Term::app("q", {Term::var(1), Term::var(2), Term::var(3)})}}};
        FiniteAlgebra m = meet_model(z2_group(), alpha.target, xor_minority(), beta.target);
        FiniteAlgebra derived = apply_interpretation(compose_into_meet(alpha, beta), m);
        o.require(m.size() == 4, "meet model has " + std::to_string(m.size()) + " elements");
        o.require(satisfies(derived, maltsev).holds(), "derived algebra breaks Mal'tsev");
        o.require(seconds_since(start) < 1, "over 1 s");
        if (o.pass) o.detail = "p(alpha,beta) on the 4-element meet model satisfies Mal'tsev";
        return o;
    });

    criterion(8, [] {
        Outcome o;
        const auto start = Clock::now();
        InterpretationCheck good = check_interpretation(load_interpretation("symdiff.eqt"), 4);
        InterpretationCheck bad = check_interpretation(load_interpretation("symdiff_broken.eqt"), 2);
        o.require(good.confirmed(), "symmetric difference refuted");
        o.require(!bad.confirmed(), "broken variant not refuted");
        if (!bad.confirmed())
            o.require(bad.refutation->model.size() <= 2, "broken variant needs a larger model");
        o.require(seconds_since(start) < 300, "over 5 min");
        if (o.pass)
            o.detail = "confirmed up to 4 (" + std::to_string(good.models_checked) +
                       " Boolean algebras); broken variant refuted on " +
                       std::to_string(bad.refutation->model.size()) + " elements by " +
                       to_string(bad.refutation->failure.equation);
        return o;
    });

    criterion(9, [] {
        Outcome o;
        const auto start = Clock::now();
        MetricTree y = y_tree();
        std::string detail;
        for (std::size_t d : {4u, 5u}) {
            TreeCheck maj = tree_check(y, TreeOp::Median, theories::majority(), d);
            TreeCheck min = tree_check(y, TreeOp::Minority, theories::minority(), d);
            o.require(maj.holds(), "median breaks majority at D=" + std::to_string(d));
            o.require(min.holds(), "minority_Y breaks minority at D=" + std::to_string(d));
            const std::size_t g = maj.grid_points;
            detail += "D=" + std::to_string(d) + ": " + std::to_string(g) + " points (" +
                      std::to_string(g * g * g) + " triples); ";
        }
        std::size_t g5 = tree_grid(y, 5).size();
        o.require(g5 * g5 * g5 >= 29u * 29u * 29u, "grid too small");
        o.require(seconds_since(start) < 60, "over 60 s");
        if (o.pass) o.detail = detail + "majority and minority laws hold";
        return o;
    });

    criterion(10, [] {
        Outcome o;
        const auto start = Clock::now();
        CatalogEntry c = catalog_interval_ring();
        SampleVerdict clean = sample_check(c.theory, c.ops, c.universe);
        o.require(!clean.refuted(), "witness refuted");
        std::size_t refuted = 0;
        for (const Mutant& m : c.mutants) {
            bool r = sample_check(c.theory, m.ops, c.universe).refuted();
            o.require(r, "mutant '" + m.description + "' not refuted");
            refuted += r;
        }
        o.require(c.mutants.size() == 3, "expected 3 mutants");
        o.require(seconds_since(start) < 60, "over 60 s");
        if (o.pass)
            o.detail = std::to_string(c.theory.equations.size()) + " equations clean on " +
                       std::to_string(clean.points) + " points; " + std::to_string(refuted) + " mutants refuted";
        return o;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
