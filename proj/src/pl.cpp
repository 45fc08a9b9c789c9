#include "eqtop/pl.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "eqtop/error.hpp"

namespace eqtop {

Box power_box(const Interval& universe, std::size_t count) {
    return Box(count, universe);
}

namespace {

using Vec = std::vector<Rational>;

/// c . y + k over the free coordinates of the box.
struct Lin {
    Vec c;
    Rational k;

    Rational at(const Vec& y) const {
        Rational r = k;
        for (std::size_t i = 0; i < c.size(); ++i) r += c[i] * y[i];
        return r;
    }
    bool operator==(const Lin&) const = default;
};

Lin combine(const Lin& a, const Rational& s, const Lin& b) {
    Lin r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += s * b.c[i];
    r.k += s * b.k;
    return r;
}

Lin scaled(const Lin& a, const Rational& s) {
    Lin r = a;
    for (auto& x : r.c) x *= s;
    r.k *= s;
    return r;
}

/// a . y <= b
struct Constraint {
    Vec a;
    Rational b;
};

struct Vertex {
    Vec y;
    std::vector<std::size_t> tight;  // sorted constraint indices
};

struct Cell {
    std::vector<Constraint> constraints;
    std::vector<Vertex> vertices;
};

std::size_t rank(std::vector<Vec> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            Rational f = rows[i][col] / rows[r][col];
            for (std::size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

/// Two vertices span an edge of the polytope exactly when the constraints
/// tight at both have rank d - 1.
bool adjacent(const Cell& cell, const Vertex& u, const Vertex& w, std::size_t d) {
    std::vector<std::size_t> common;
    std::set_intersection(u.tight.begin(), u.tight.end(), w.tight.begin(), w.tight.end(), std::back_inserter(common));
    if (common.size() + 1 < d) return false;
    std::vector<Vec> rows;
    for (auto i : common) rows.push_back(cell.constraints[i].a);
    return rank(std::move(rows)) == d - 1;
}

/// Cuts the cell by h = 0 into the parts h <= 0 and h >= 0. The caller
/// guarantees h takes both signs on the vertices.
std::pair<Cell, Cell> split(const Cell& cell, const Lin& h, std::size_t d) {
    const std::size_t k = cell.constraints.size();
    Vec vals;
    for (const auto& v : cell.vertices) vals.push_back(h.at(v.y));

    std::vector<Vertex> fresh;
    for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
        if (vals[i] >= 0) continue;
        for (std::size_t j = 0; j < cell.vertices.size(); ++j) {
            if (vals[j] <= 0 || !adjacent(cell, cell.vertices[i], cell.vertices[j], d)) continue;
            const Vertex& u = cell.vertices[i];
            const Vertex& w = cell.vertices[j];
            Rational t = vals[i] / (vals[i] - vals[j]);
            Vertex x;
            for (std::size_t c = 0; c < d; ++c) x.y.push_back(u.y[c] + t * (w.y[c] - u.y[c]));
            std::set_intersection(u.tight.begin(), u.tight.end(), w.tight.begin(), w.tight.end(),
                                  std::back_inserter(x.tight));
            x.tight.push_back(k);
            fresh.push_back(std::move(x));
        }
    }

    auto side = [&](int sign) {
        Cell out;
        out.constraints = cell.constraints;
        Lin g = scaled(h, sign);  // keep g <= 0
        out.constraints.push_back(Constraint{g.c, -g.k});
        for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
            const Rational v = vals[i] * sign;
            if (v > 0) continue;
            Vertex x = cell.vertices[i];
            if (v == 0) x.tight.push_back(k);
            out.vertices.push_back(std::move(x));
        }
        out.vertices.insert(out.vertices.end(), fresh.begin(), fresh.end());
        return out;
    };
    return {side(1), side(-1)};
}

/// Symbolic evaluation on one cell. Returns nullopt after recording a
/// hyperplane in `cut` when some min or max is not decided on the cell.
class CellEvaluator {
public:
    CellEvaluator(const Cell& cell) : cell_(cell) {}

    std::optional<Lin> run(const Expr& e, const std::vector<Lin>& env) {
        switch (e.kind()) {
            case ExprKind::Var:
                return env[e.index()];
            case ExprKind::Const:
                return Lin{Vec(width(env), 0), e.value()};
            case ExprKind::Affine: {
                Lin r{Vec(width(env), 0), e.value()};
                for (std::size_t i = 0; i < e.coeffs().size(); ++i)
                    if (e.coeffs()[i] != 0) r = combine(r, e.coeffs()[i], env[i]);
                return r;
            }
            case ExprKind::Scale: {
                auto a = run(e.children()[0], env);
                if (!a) return std::nullopt;
                return scaled(*a, e.value());
            }
            case ExprKind::Compose: {
                auto cs = e.children();
                std::vector<Lin> inner;
                for (std::size_t i = 1; i < cs.size(); ++i) {
                    auto x = run(cs[i], env);
                    if (!x) return std::nullopt;
                    inner.push_back(std::move(*x));
                }
                return run(cs[0], inner);
            }
            case ExprKind::Sum: {
                auto a = run(e.children()[0], env);
                if (!a) return std::nullopt;
                auto b = run(e.children()[1], env);
                if (!b) return std::nullopt;
                return combine(*a, 1, *b);
            }
            case ExprKind::Min:
            case ExprKind::Max: {
                auto a = run(e.children()[0], env);
                if (!a) return std::nullopt;
                auto b = run(e.children()[1], env);
                if (!b) return std::nullopt;
                Lin diff = combine(*a, -1, *b);
                bool pos = false, neg = false;
                for (const auto& v : cell_.vertices) {
                    Rational x = diff.at(v.y);
                    pos = pos || x > 0;
                    neg = neg || x < 0;
                }
                if (pos && neg) {
                    cut = std::move(diff);
                    return std::nullopt;
                }
                // a >= b on the whole cell when !neg
                if (e.kind() == ExprKind::Min) return neg ? *a : *b;
                return neg ? *b : *a;
            }
            case ExprKind::Mul:
                break;
        }
        throw Error("Mul cannot be certified exactly; use sampling");
    }

    std::optional<Lin> cut;
    std::size_t dims = 0;

private:
    std::size_t width(const std::vector<Lin>& env) const { return env.empty() ? dims : env[0].c.size(); }

    const Cell& cell_;
};

}  // namespace

PlVerdict pl_equal(const Expr& a, const Expr& b, const Box& box) {
    if (!a.is_pl() || !b.is_pl()) throw Error("Mul cannot be certified exactly; use sampling");
    if (box.size() < a.arity() || box.size() < b.arity())
        throw ArityError("pl_equal", "box has " + std::to_string(box.size()) + " coordinates, expressions read " +
                                         std::to_string(std::max(a.arity(), b.arity())));
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (box[i].hi < box[i].lo) throw Error("empty box coordinate " + std::to_string(i));
        if (box[i].lo != box[i].hi) free.push_back(i);
    }
    const std::size_t d = free.size();

    std::vector<Lin> env;
    for (std::size_t i = 0, f = 0; i < box.size(); ++i) {
        Lin l{Vec(d, 0), 0};
        if (box[i].lo == box[i].hi) {
            l.k = box[i].lo;
        } else {
            l.c[f++] = 1;
        }
        env.push_back(std::move(l));
    }

    Cell root;
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        root.constraints.push_back({e, box[free[j]].hi});  // index 2j
        e[j] = -1;
        root.constraints.push_back({e, -box[free[j]].lo});  // index 2j+1
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Vertex v;
        for (std::size_t j = 0; j < d; ++j) {
            const bool high = (mask >> (d - 1 - j)) & 1;
            v.y.push_back(high ? box[free[j]].hi : box[free[j]].lo);
        }
        for (std::size_t j = 0; j < d; ++j) v.tight.push_back(2 * j + (((mask >> (d - 1 - j)) & 1) ? 0 : 1));
        root.vertices.push_back(std::move(v));
    }

    auto full_point = [&](const Vec& y) {
        std::vector<Rational> p;
        for (std::size_t i = 0, f = 0; i < box.size(); ++i) p.push_back(box[i].lo == box[i].hi ? box[i].lo : y[f++]);
        return p;
    };

    PlVerdict out;
    std::vector<Cell> stack{std::move(root)};
    while (!stack.empty()) {
        Cell cell = std::move(stack.back());
        stack.pop_back();

        CellEvaluator ev(cell);
        ev.dims = d;
        std::optional<Lin> fa = ev.run(a, env);
        std::optional<Lin> fb = fa ? ev.run(b, env) : std::nullopt;
        if (!fb) {
            auto [below, above] = split(cell, *ev.cut, d);
            stack.push_back(std::move(below));
            stack.push_back(std::move(above));
            continue;
        }
        ++out.cells;
        if (*fa == *fb) continue;

        Vec centroid(d, 0);
        for (const auto& v : cell.vertices)
            for (std::size_t j = 0; j < d; ++j) centroid[j] += v.y[j];
        for (auto& x : centroid) x /= static_cast<long>(cell.vertices.size());
        Vec pick = centroid;
        if (fa->at(pick) == fb->at(pick))
            for (const auto& v : cell.vertices)
                if (fa->at(v.y) != fb->at(v.y)) {
                    pick = v.y;
                    break;
                }
        out.witness = full_point(pick);
        out.lhs_value = eval(a, *out.witness);
        out.rhs_value = eval(b, *out.witness);
        if (out.lhs_value == out.rhs_value) throw Error("internal: certifier witness does not separate the sides");
        return out;
    }
    return out;
}

void check_witness_signature(const Theory& theory, const Witness& witness) {
    for (const auto& s : theory.signature) {
        auto it = witness.find(s.name);
        if (it == witness.end()) throw SignatureError("witness has no operation for '" + s.name + "'");
        if (it->second.arity() > s.arity)
            throw SignatureError("operation for '" + s.name + "' reads " + std::to_string(it->second.arity()) +
                                 " variables but the symbol has arity " + std::to_string(s.arity));
    }
}

std::vector<EquationVerdict> check_pl_model(const Theory& theory, const Witness& witness, const Interval& universe) {
    check_witness_signature(theory, witness);
    std::vector<EquationVerdict> out;
    for (std::size_t i = 0; i < theory.equations.size(); ++i) {
        const Equation& e = theory.equations[i];
        Expr lhs = term_to_expr(e.lhs, witness);
        Expr rhs = term_to_expr(e.rhs, witness);
        out.push_back({i, e, pl_equal(lhs, rhs, power_box(universe, e.variable_count()))});
    }
    return out;
}

namespace {

/// Uniform draw in [0, bound) by rejection, identical on every platform.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

Rational from_u64(std::uint64_t v) {
    return Rational(mpz_class(std::to_string(v), 10));
}

std::vector<Rational> grid_values(const Interval& universe, std::size_t denominator) {
    std::vector<Rational> rel;
    for (std::size_t q = 1; q <= denominator; ++q)
        for (std::size_t p = 0; p <= q; ++p) rel.push_back(Rational(static_cast<long>(p), static_cast<long>(q)));
    for (auto& r : rel) r.canonicalize();
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
    std::vector<Rational> out;
    for (const auto& r : rel) out.push_back(universe.lo + (universe.hi - universe.lo) * r);
    return out;
}

}  // namespace

SampleVerdict sample_check(const Theory& theory, const Witness& witness, const Interval& universe,
                           const SamplePlan& plan) {
    check_witness_signature(theory, witness);
    if (plan.random_denominator == 0) throw Error("random_denominator must be positive");
    const std::vector<Rational> grid = grid_values(universe, std::max<std::size_t>(plan.grid_denominator, 1));
    std::mt19937_64 rng(plan.seed);
    SampleVerdict out;

    for (std::size_t i = 0; i < theory.equations.size(); ++i) {
        const Equation& e = theory.equations[i];
        const std::size_t k = e.variable_count();
        Expr lhs = term_to_expr(e.lhs, witness);
        Expr rhs = term_to_expr(e.rhs, witness);

        auto test = [&](const std::vector<Rational>& point) {
            ++out.points;
            Rational l = eval(lhs, point), r = eval(rhs, point);
            if (l == r) return true;
            out.refutation = SampleRefutation{i, e, point, l, r};
            return false;
        };

        if (k <= plan.grid_max_variables) {
            std::vector<std::size_t> idx(k, 0);
            std::vector<Rational> point(k);
            while (true) {
                for (std::size_t j = 0; j < k; ++j) point[j] = grid[idx[j]];
                if (!test(point)) return out;
                std::size_t j = k;
                while (j > 0 && ++idx[j - 1] == grid.size()) idx[--j] = 0;
                if (j == 0) break;
            }
        }
        for (std::size_t n = 0; n < plan.random_points; ++n) {
            std::vector<Rational> point;
            for (std::size_t j = 0; j < k; ++j) {
                const std::uint64_t q = draw(rng, plan.random_denominator) + 1;
                const std::uint64_t p = draw(rng, q + 1);
                Rational r(from_u64(p) / from_u64(q));
                point.push_back(universe.lo + (universe.hi - universe.lo) * r);
            }
            if (!test(point)) return out;
        }
    }
    return out;
}

Rational chebyshev(std::size_t n, const Rational& x) {
    Rational prev = 1, cur = x;
    if (n == 0) return prev;
    for (std::size_t i = 1; i < n; ++i) {
        Rational next = 2 * x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace eqtop
