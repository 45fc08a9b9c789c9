#include "eqtop/pl_expr.hpp"

#include <algorithm>
#include <sstream>

#include "eqtop/error.hpp"

namespace eqtop {

struct Expr::Node {
    ExprKind kind;
    std::size_t index = 0;
    Rational value;
    std::vector<Rational> coeffs;
    std::vector<Expr> children;
    std::size_t arity = 0;
    bool pl = true;
};

Expr Expr::var(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Var;
    n->index = index;
    n->arity = index + 1;
    return Expr(std::move(n));
}

Expr Expr::constant(Rational value) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Const;
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::affine(std::vector<Rational> coeffs, Rational offset) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Affine;
    n->arity = coeffs.size();
    n->coeffs = std::move(coeffs);
    n->value = std::move(offset);
    return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->arity = std::max(a.arity(), b.arity());
    n->pl = kind != ExprKind::Mul && a.is_pl() && b.is_pl();
    n->children = {std::move(a), std::move(b)};
    return Expr(std::move(n));
}

Expr Expr::min(Expr a, Expr b) { return binary(ExprKind::Min, std::move(a), std::move(b)); }
Expr Expr::max(Expr a, Expr b) { return binary(ExprKind::Max, std::move(a), std::move(b)); }
Expr Expr::sum(Expr a, Expr b) { return binary(ExprKind::Sum, std::move(a), std::move(b)); }
Expr Expr::mul(Expr a, Expr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }

Expr Expr::scale(Rational factor, Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Scale;
    n->value = std::move(factor);
    n->arity = e.arity();
    n->pl = e.is_pl();
    n->children.push_back(std::move(e));
    return Expr(std::move(n));
}

Expr Expr::compose(Expr outer, std::vector<Expr> inners) {
    if (outer.arity() > inners.size())
        throw ArityError("compose", "outer expression reads " + std::to_string(outer.arity()) +
                                        " variables but only " + std::to_string(inners.size()) + " inners are given");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Compose;
    n->pl = outer.is_pl();
    for (const auto& i : inners) {
        n->arity = std::max(n->arity, i.arity());
        n->pl = n->pl && i.is_pl();
    }
    n->children.push_back(std::move(outer));
    for (auto& i : inners) n->children.push_back(std::move(i));
    return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
std::size_t Expr::index() const { return node_->index; }
const Rational& Expr::value() const { return node_->value; }
std::span<const Rational> Expr::coeffs() const { return node_->coeffs; }
std::span<const Expr> Expr::children() const { return node_->children; }
std::size_t Expr::arity() const { return node_->arity; }
bool Expr::is_pl() const { return node_->pl; }

Expr operator+(Expr a, Expr b) { return Expr::sum(std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::sum(std::move(a), Expr::scale(-1, std::move(b))); }
Expr operator*(Rational factor, Expr e) { return Expr::scale(std::move(factor), std::move(e)); }

namespace {

Rational eval_unchecked(const Expr& e, std::span<const Rational> p) {
    switch (e.kind()) {
        case ExprKind::Var:
            return p[e.index()];
        case ExprKind::Const:
            return e.value();
        case ExprKind::Affine: {
            Rational r = e.value();
            for (std::size_t i = 0; i < e.coeffs().size(); ++i) r += e.coeffs()[i] * p[i];
            return r;
        }
        case ExprKind::Scale:
            return e.value() * eval_unchecked(e.children()[0], p);
        case ExprKind::Compose: {
            auto cs = e.children();
            std::vector<Rational> inner;
            inner.reserve(cs.size() - 1);
            for (std::size_t i = 1; i < cs.size(); ++i) inner.push_back(eval_unchecked(cs[i], p));
            return eval_unchecked(cs[0], inner);
        }
        default:
            break;
    }
    Rational a = eval_unchecked(e.children()[0], p);
    Rational b = eval_unchecked(e.children()[1], p);
    switch (e.kind()) {
        case ExprKind::Min: return a < b ? a : b;
        case ExprKind::Max: return a < b ? b : a;
        case ExprKind::Sum: return a + b;
        default: return a * b;
    }
}

}  // namespace

Rational eval(const Expr& expr, std::span<const Rational> point) {
    if (point.size() < expr.arity())
        throw ArityError("eval", "expression reads " + std::to_string(expr.arity()) + " variables, point has " +
                                     std::to_string(point.size()));
    return eval_unchecked(expr, point);
}

Expr term_to_expr(const Term& term, const std::map<std::string, Expr>& ops) {
    if (term.is_var()) return Expr::var(term.var_index() - 1);
    auto it = ops.find(term.symbol());
    if (it == ops.end()) throw UnknownSymbolError(term.symbol());
    if (it->second.arity() > term.args().size())
        throw ArityError(term.symbol(), "operation for '" + term.symbol() + "' reads " +
                                            std::to_string(it->second.arity()) + " arguments but is applied to " +
                                            std::to_string(term.args().size()));
    std::vector<Expr> args;
    for (const auto& a : term.args()) args.push_back(term_to_expr(a, ops));
    return Expr::compose(it->second, std::move(args));
}

Rational AffineForm::at(std::span<const Rational> point) const {
    Rational r = offset;
    for (std::size_t i = 0; i < coeffs.size(); ++i) r += coeffs[i] * point[i];
    return r;
}

Rational MaxOfMins::at(std::span<const Rational> point) const {
    Rational best;
    bool first = true;
    for (const auto& g : groups) {
        Rational m = g.front().at(point);
        for (std::size_t i = 1; i < g.size(); ++i) m = std::min(m, g[i].at(point));
        if (first || m > best) best = m;
        first = false;
    }
    return best;
}

namespace {

struct Normalizer {
    std::size_t width;
    std::size_t max_groups;

    using Form = std::vector<std::vector<AffineForm>>;

    void guard(const Form& f) const {
        if (f.size() > max_groups) throw Error("max-of-mins form exceeds " + std::to_string(max_groups) + " groups");
    }

    static void dedup(std::vector<AffineForm>& g) {
        auto less = [](const AffineForm& a, const AffineForm& b) {
            if (a.offset != b.offset) return a.offset < b.offset;
            return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
        };
        std::sort(g.begin(), g.end(), less);
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }

    AffineForm constant(const Rational& c) const { return AffineForm{std::vector<Rational>(width), c}; }

    Form affine_combo(const std::vector<Rational>& coeffs, const Rational& offset, const std::vector<Form>& env) {
        Form acc{{constant(offset)}};
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) acc = add(acc, scale(coeffs[i], env[i]));
        return acc;
    }

    Form min(const Form& a, const Form& b) {
        Form out;
        for (const auto& ga : a)
            for (const auto& gb : b) {
                auto g = ga;
                g.insert(g.end(), gb.begin(), gb.end());
                dedup(g);
                out.push_back(std::move(g));
            }
        guard(out);
        return out;
    }

    Form max(const Form& a, const Form& b) {
        Form out = a;
        out.insert(out.end(), b.begin(), b.end());
        guard(out);
        return out;
    }

    Form add(const Form& a, const Form& b) {
        // max_i min_k a_ik + max_j min_l b_jl = max_{i,j} min_{k,l} (a_ik + b_jl)
        Form out;
        for (const auto& ga : a)
            for (const auto& gb : b) {
                std::vector<AffineForm> g;
                for (const auto& fa : ga)
                    for (const auto& fb : gb) {
                        AffineForm s = fa;
                        for (std::size_t i = 0; i < width; ++i) s.coeffs[i] += fb.coeffs[i];
                        s.offset += fb.offset;
                        g.push_back(std::move(s));
                    }
                dedup(g);
                out.push_back(std::move(g));
            }
        guard(out);
        return out;
    }

    Form scale(const Rational& c, const Form& a) {
        auto mul = [&](AffineForm f, const Rational& k) {
            for (auto& x : f.coeffs) x *= k;
            f.offset *= k;
            return f;
        };
        if (c >= 0) {
            Form out = a;
            for (auto& g : out)
                for (auto& f : g) f = mul(f, c);
            return out;
        }
        // -max_i min_k f_ik = min_i max_k (-f_ik): distribute back to max-of-mins.
        Form out{{}};
        for (const auto& g : a) {
            Form next;
            for (const auto& partial : out)
                for (const auto& f : g) {
                    auto h = partial;
                    h.push_back(mul(f, c));
                    next.push_back(std::move(h));
                }
            guard(next);
            out = std::move(next);
        }
        for (auto& g : out) dedup(g);
        return out;
    }

    Form run(const Expr& e, const std::vector<Form>& env) {
        switch (e.kind()) {
            case ExprKind::Var:
                return env.at(e.index());
            case ExprKind::Const:
                return Form{{constant(e.value())}};
            case ExprKind::Affine:
                return affine_combo(std::vector<Rational>(e.coeffs().begin(), e.coeffs().end()), e.value(), env);
            case ExprKind::Scale:
                return scale(e.value(), run(e.children()[0], env));
            case ExprKind::Compose: {
                auto cs = e.children();
                std::vector<Form> inner;
                for (std::size_t i = 1; i < cs.size(); ++i) inner.push_back(run(cs[i], env));
                return run(cs[0], inner);
            }
            case ExprKind::Min:
                return min(run(e.children()[0], env), run(e.children()[1], env));
            case ExprKind::Max:
                return max(run(e.children()[0], env), run(e.children()[1], env));
            case ExprKind::Sum:
                return add(run(e.children()[0], env), run(e.children()[1], env));
            case ExprKind::Mul:
                break;
        }
        throw Error("Mul has no piecewise-linear normal form");
    }
};

}  // namespace

MaxOfMins normalize(const Expr& expr, std::size_t width, std::size_t max_groups) {
    if (width < expr.arity())
        throw ArityError("normalize", "width " + std::to_string(width) + " is below the arity " +
                                          std::to_string(expr.arity()));
    Normalizer n{width, max_groups};
    std::vector<Normalizer::Form> env;
    for (std::size_t i = 0; i < width; ++i) {
        AffineForm f = n.constant(0);
        f.coeffs[i] = 1;
        env.push_back({{f}});
    }
    return MaxOfMins{n.run(expr, env)};
}

namespace {

void print(std::ostream& os, const Expr& e) {
    auto cs = e.children();
    switch (e.kind()) {
        case ExprKind::Var:
            os << "v" << e.index();
            return;
        case ExprKind::Const:
            os << format_rational(e.value());
            return;
        case ExprKind::Affine: {
            os << "(";
            for (std::size_t i = 0; i < e.coeffs().size(); ++i)
                if (e.coeffs()[i] != 0) os << format_rational(e.coeffs()[i]) << "*v" << i << " + ";
            os << format_rational(e.value()) << ")";
            return;
        }
        case ExprKind::Scale:
            os << format_rational(e.value()) << "*";
            print(os, cs[0]);
            return;
        case ExprKind::Compose:
            os << "[";
            print(os, cs[0]);
            os << "](";
            for (std::size_t i = 1; i < cs.size(); ++i) {
                if (i > 1) os << ", ";
                print(os, cs[i]);
            }
            os << ")";
            return;
        case ExprKind::Sum:
            os << "(";
            print(os, cs[0]);
            os << " + ";
            print(os, cs[1]);
            os << ")";
            return;
        case ExprKind::Mul:
            os << "(";
            print(os, cs[0]);
            os << " * ";
            print(os, cs[1]);
            os << ")";
            return;
        case ExprKind::Min:
        case ExprKind::Max:
            os << (e.kind() == ExprKind::Min ? "min(" : "max(");
            print(os, cs[0]);
            os << ", ";
            print(os, cs[1]);
            os << ")";
            return;
    }
}

}  // namespace

std::string to_string(const Expr& expr) {
    std::ostringstream os;
    print(os, expr);
    return os.str();
}

}  // namespace eqtop
