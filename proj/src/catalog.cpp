#include "eqtop/catalog.hpp"

#include "eqtop/error.hpp"
#include "eqtop/interp.hpp"
#include "eqtop/theories.hpp"

namespace eqtop {

namespace {

Expr v(std::size_t i) { return Expr::var(i); }
Expr k(const Rational& r) { return Expr::constant(r); }
Rational q(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

const Interval kUnit{0, 1};

Expr median_with(Expr yz) {
    return Expr::max(Expr::max(Expr::min(v(0), v(1)), Expr::min(v(0), v(2))), std::move(yz));
}

Expr min3() { return Expr::min(Expr::min(v(0), v(1)), v(2)); }
Expr max3() { return Expr::max(Expr::max(v(0), v(1)), v(2)); }

Witness with(Witness ops, const std::string& name, Expr e) {
    ops.insert_or_assign(name, std::move(e));
    return ops;
}

}  // namespace

namespace pl_ops {

Expr meet() { return Expr::min(v(0), v(1)); }
Expr join() { return Expr::max(v(0), v(1)); }
Expr median() { return median_with(Expr::min(v(1), v(2))); }
Expr minority() { return min3() - median() + max3(); }
Expr two_thirds() { return v(0) - median() + v(2); }

Expr affine_combination(const Rational& alpha) {
    return Expr::affine({alpha, 1 - alpha}, 0);
}

Expr zigzag(std::size_t n) {
    const long m = static_cast<long>(n + 1);
    std::optional<Expr> f;
    for (long i = 1; i <= m; i += 2) {
        // rises from 0 at (i-1)/m to 1 at i/m, falls back to 0 at (i+1)/m
        Expr up = Expr::affine({Rational(m)}, Rational(-(i - 1)));
        Expr down = Expr::affine({Rational(-m)}, Rational(i + 1));
        Expr tent = Expr::max(k(0), Expr::min(up, down));
        f = f ? *f + tent : tent;
    }
    return *f;
}

Expr truncated_sum() { return Expr::max(Expr::min(v(0) + v(1), k(1)), k(-1)); }

}  // namespace pl_ops

CatalogEntry catalog_dlat01() {
    Witness ops{{"meet", pl_ops::meet()}, {"join", pl_ops::join()}, {"zero", k(0)}, {"one", k(1)}};
    return {"dlat01", lambda_theory(0), ops, kUnit, CheckMode::Certify,
            {{"one = 9/10", with(ops, "one", k(q(9, 10)))}}};
}

CatalogEntry catalog_majority_m() {
    Witness ops{{"m", pl_ops::median()}};
    return {"majority_m", theories::majority(), ops, kUnit, CheckMode::Certify,
            {{"y ^ z replaced by y ^ 2z", {{"m", median_with(Expr::min(v(1), 2 * v(2)))}}}}};
}

CatalogEntry catalog_minority_q() {
    Witness ops{{"q", pl_ops::minority()}};
    return {"minority_q", theories::minority(), ops, kUnit, CheckMode::Certify,
            {{"coefficient 2 on the median", {{"q", min3() - 2 * pl_ops::median() + max3()}}}}};
}

CatalogEntry catalog_maltsev_p() {
    Witness ops{{"p", pl_ops::minority()}};
    return {"maltsev_p", theories::maltsev(), ops, kUnit, CheckMode::Certify,
            {{"coefficient 2 on the median", {{"p", min3() - 2 * pl_ops::median() + max3()}}}}};
}

CatalogEntry catalog_two_thirds_t() {
    Witness ops{{"t", pl_ops::two_thirds()}};
    return {"two_thirds_t", theories::two_thirds_minority(), ops, kUnit, CheckMode::Certify,
            {{"coefficient 2 on the median", {{"t", v(0) - 2 * pl_ops::median() + v(2)}}}}};
}

CatalogEntry catalog_derived_majority_from_t() {
    auto derive = [](const Expr& inner) {
        return Expr::compose(pl_ops::two_thirds(), {v(0), Expr::compose(inner, {v(0), v(1), v(2)}), v(2)});
    };
    return {"derived_majority_from_t", theories::majority(), {{"m", derive(pl_ops::two_thirds())}}, kUnit,
            CheckMode::Certify,
            {{"inner t with coefficient 2 on the median", {{"m", derive(v(0) - 2 * pl_ops::median() + v(2))}}}}};
}

CatalogEntry catalog_mult01() {
    Witness ops{{"meet", pl_ops::meet()}, {"zero", k(0)}, {"one", k(1)}};
    return {"mult01", theories::zero_one_multiplication(), ops, kUnit, CheckMode::Certify,
            {{"one = 1/2", with(ops, "one", k(q(1, 2)))}}};
}

namespace {

Witness oneone_unary_ops() {
    return {{"theta", q(1, 2) * v(0)},
            {"psi", Expr::min(2 * v(0), k(1))},
            {"phi", Expr::max(Expr::affine({2}, -1), k(0))},
            {"zero", k(0)},
            {"one", k(1)}};
}

}  // namespace

CatalogEntry catalog_oneone_notonto() {
    Witness ops = oneone_unary_ops();
    ops.emplace("F", Expr::min(Expr::max(v(0), 2 * v(2)), Expr::max(v(1), Expr::affine({0, 0, -2}, 2))));
    return {"oneone_notonto", theories::one_one_not_onto(), ops, kUnit, CheckMode::Certify,
            {{"theta = 3a/4", with(ops, "theta", q(3, 4) * v(0))}}};
}

CatalogEntry catalog_oneone_notonto_bilinear() {
    Witness ops = oneone_unary_ops();
    auto bilinear = [](const Rational& b_weight) {
        return v(0) - Expr::mul(v(2), v(0)) + b_weight * Expr::mul(v(2), v(1));
    };
    ops.emplace("F", bilinear(1));
    return {"oneone_notonto_bilinear", theories::one_one_not_onto(), ops, kUnit, CheckMode::Sample,
            {{"F = (1-c)a + cb/2", with(ops, "F", bilinear(q(1, 2)))}}};
}

CatalogEntry catalog_affine_alpha(const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw PreconditionError("alpha must lie in [0,1]");
    Witness ops{{"Fa", pl_ops::affine_combination(alpha)}, {"Fb", pl_ops::affine_combination(1 - alpha)}};
    return {"affine_alpha(" + format_rational(alpha) + ")", theories::mixed_entropic(), ops, kUnit,
            CheckMode::Certify,
            {{"second coefficient of Fa lowered by 1/6",
              with(ops, "Fa", Expr::affine({alpha, 1 - alpha - q(1, 6)}, 0))}}};
}

CatalogEntry catalog_affine_half() {
    Witness ops{{"F", pl_ops::affine_combination(q(1, 2))}};
    return {"affine_half", theories::commutative_idempotent_entropic(), ops, kUnit, CheckMode::Certify,
            {{"F = a/2 + b/3", {{"F", Expr::affine({q(1, 2), q(1, 3)}, 0)}}}}};
}

CatalogEntry catalog_affine3(const Rational& mu, const Rational& nu, const Rational& lambda) {
    if (mu <= 0 || nu <= 0 || lambda <= 0 || mu + nu + lambda != 1)
        throw PreconditionError("mu, nu, lambda must be positive with sum 1");
    Witness ops{{"Fa", pl_ops::affine_combination(mu + nu)},
                {"Fb", pl_ops::affine_combination(mu / (mu + nu))},
                {"lin", Expr::affine({mu, nu, lambda}, 0)}};
    return {"affine3(" + format_rational(mu) + "," + format_rational(nu) + "," + format_rational(lambda) + ")",
            theories::affine_decomposition(), ops, kUnit, CheckMode::Certify,
            {{"lambda halved in lin", with(ops, "lin", Expr::affine({mu, nu, lambda / 2}, 0))}}};
}

CatalogEntry catalog_lambda_n(std::size_t n) {
    if (n == 0) throw PreconditionError("lambda_n needs n >= 1; use dlat01 for n = 0");
    const long m = static_cast<long>(n + 1);
    Witness ops{{"meet", pl_ops::meet()}, {"join", pl_ops::join()}, {"zero", k(0)},
                {"one", k(1)},            {"f", pl_ops::zigzag(n)}};
    for (std::size_t i = 1; i <= n; ++i) ops.emplace("a" + std::to_string(i), k(q(static_cast<long>(i), m)));
    return {"lambda_n(" + std::to_string(n) + ")", lambda_theory(n), ops, kUnit, CheckMode::Certify,
            {{"a1 = 1/(2(n+1))", with(ops, "a1", k(q(1, 2 * m)))}}};
}

CatalogEntry catalog_interval_ring() {
    Witness ops{{"times", Expr::mul(v(0), v(1))},
                {"bplus", pl_ops::truncated_sum()},
                {"F", q(1, 3) * v(0)},
                {"meet", pl_ops::meet()},
                {"join", pl_ops::join()},
                {"zero", k(0)},
                {"one", k(1)}};
    Witness swapped = with(with(ops, "meet", pl_ops::join()), "join", pl_ops::meet());
    return {"interval_ring",
            theories::interval_ring(),
            ops,
            {-1, 1},
            CheckMode::Sample,
            {{"F(x) = x/4", with(ops, "F", q(1, 4) * v(0))},
             {"meet and join swapped", swapped},
             {"times replaced by meet", with(ops, "times", pl_ops::meet())}}};
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(',', start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

}  // namespace

CatalogEntry catalog(const std::string& spelled) {
    // "head(args)" as printed by entry names is the same as "head:args"
    std::string name = spelled;
    if (auto open = name.find('('); open != std::string::npos && name.back() == ')')
        name = name.substr(0, open) + ":" + name.substr(open + 1, name.size() - open - 2);
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (colon == std::string::npos) {
        if (name == "dlat01") return catalog_dlat01();
        if (name == "majority_m") return catalog_majority_m();
        if (name == "minority_q") return catalog_minority_q();
        if (name == "maltsev_p") return catalog_maltsev_p();
        if (name == "two_thirds_t") return catalog_two_thirds_t();
        if (name == "derived_majority_from_t") return catalog_derived_majority_from_t();
        if (name == "mult01") return catalog_mult01();
        if (name == "oneone_notonto") return catalog_oneone_notonto();
        if (name == "oneone_notonto_bilinear") return catalog_oneone_notonto_bilinear();
        if (name == "affine_half") return catalog_affine_half();
        if (name == "interval_ring") return catalog_interval_ring();
    } else if (head == "affine_alpha") {
        return catalog_affine_alpha(parse_rational(arg));
    } else if (head == "affine3") {
        auto parts = split_commas(arg);
        if (parts.size() == 3)
            return catalog_affine3(parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]));
    } else if (head == "lambda_n") {
        const Rational n = parse_rational(arg);
        if (n.get_den() == 1 && n >= 1 && n <= 64) return catalog_lambda_n(n.get_num().get_ui());
    }
    throw Error("unknown catalog entry '" + name + "'");
}

std::vector<CatalogEntry> catalog_all() {
    std::vector<CatalogEntry> out{catalog_dlat01(),
                                  catalog_majority_m(),
                                  catalog_minority_q(),
                                  catalog_maltsev_p(),
                                  catalog_two_thirds_t(),
                                  catalog_derived_majority_from_t(),
                                  catalog_mult01(),
                                  catalog_oneone_notonto(),
                                  catalog_oneone_notonto_bilinear(),
                                  catalog_affine_alpha(Rational(1, 3)),
                                  catalog_affine_half(),
                                  catalog_affine3(Rational(1, 6), Rational(1, 3), Rational(1, 2))};
    for (std::size_t n = 1; n <= 5; ++n) out.push_back(catalog_lambda_n(n));
    out.push_back(catalog_interval_ring());
    return out;
}

}  // namespace eqtop
