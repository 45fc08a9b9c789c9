#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eqtop/rational.hpp"
#include "eqtop/term.hpp"

namespace eqtop {

enum class ExprKind { Var, Const, Affine, Min, Max, Sum, Scale, Compose, Mul };

/// Immutable expression over real variables v0, v1, ... (0-based). Without
/// Mul every expression is a continuous piecewise-linear function; Mul
/// makes it piecewise polynomial, which only sampling can handle.
class Expr {
public:
    static Expr var(std::size_t index);
    static Expr constant(Rational value);
    /// sum_i coeffs[i] * v_i + offset
    static Expr affine(std::vector<Rational> coeffs, Rational offset);
    static Expr min(Expr a, Expr b);
    static Expr max(Expr a, Expr b);
    static Expr sum(Expr a, Expr b);
    static Expr scale(Rational factor, Expr e);
    /// outer evaluated at (inners[0](v), inners[1](v), ...). Throws ArityError
    /// when outer reads more variables than there are inners.
    static Expr compose(Expr outer, std::vector<Expr> inners);
    static Expr mul(Expr a, Expr b);

    ExprKind kind() const;
    std::size_t index() const;                   // Var
    const Rational& value() const;               // Const, Scale factor, Affine offset
    std::span<const Rational> coeffs() const;    // Affine
    std::span<const Expr> children() const;      // binary ops: 2; Scale: 1; Compose: outer then inners

    /// Number of leading variables the expression reads (largest index + 1).
    std::size_t arity() const;
    /// True when Mul occurs nowhere inside.
    bool is_pl() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr binary(ExprKind kind, Expr a, Expr b);
    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Rational factor, Expr e);

/// Exact value. Throws ArityError when the point is shorter than arity().
Rational eval(const Expr& expr, std::span<const Rational> point);

/// Builds the expression for a term: x_i becomes v_{i-1} and f(t1..tn)
/// becomes compose(ops[f], [t1..tn]). Throws UnknownSymbolError or
/// ArityError when ops does not fit the term.
Expr term_to_expr(const Term& term, const std::map<std::string, Expr>& ops);

/// An affine function sum_i coeffs[i] * v_i + offset with a fixed width.
struct AffineForm {
    std::vector<Rational> coeffs;
    Rational offset;

    Rational at(std::span<const Rational> point) const;
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// max over groups of (min over the affine forms of the group).
struct MaxOfMins {
    std::vector<std::vector<AffineForm>> groups;
    Rational at(std::span<const Rational> point) const;
};

/// Structural normalization of a PL expression into max-of-mins form over
/// `width` variables. Negative scaling distributes min over max, so the
/// size can grow exponentially; meant for small expressions. Throws Error
/// on Mul, or when the form would exceed max_groups groups.
MaxOfMins normalize(const Expr& expr, std::size_t width, std::size_t max_groups = 4096);

std::string to_string(const Expr& expr);

}  // namespace eqtop
