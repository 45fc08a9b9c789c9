#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqtop/pl_expr.hpp"
#include "eqtop/rational.hpp"
#include "eqtop/term.hpp"

namespace eqtop {

struct Interval {
    Rational lo;
    Rational hi;
};

/// One closed interval per variable.
using Box = std::vector<Interval>;

/// Box of `count` copies of the same interval.
Box power_box(const Interval& universe, std::size_t count);

struct PlVerdict {
    /// Set when the two expressions differ; their values there follow.
    std::optional<std::vector<Rational>> witness;
    Rational lhs_value;
    Rational rhs_value;
    /// Cells of the arrangement that were compared.
    std::size_t cells = 0;

    bool equal() const { return !witness.has_value(); }
};

/// Exact decision of a == b on the box.
///
/// The box is subdivided lazily: both sides are evaluated symbolically on a
/// cell, and whenever a min or max compares two affine pieces whose
/// difference changes sign across the cell's vertices, the cell is cut by
/// that hyperplane and both halves are revisited. Cells carry their vertex
/// list, so cutting is a single double-description step. On a cell where no
/// comparison changes sign each side is one affine function, and the two
/// are compared coefficientwise. Cells are always full dimensional (a cut
/// only happens when both sides hold vertices strictly off the hyperplane),
/// so continuity covers the lower-dimensional boundaries.
///
/// The witness is the vertex centroid of the first differing cell, or a
/// vertex of it when the centroid happens to agree. Throws ArityError when
/// the box is shorter than either arity, Error on Mul or on an empty box.
PlVerdict pl_equal(const Expr& a, const Expr& b, const Box& box);

using Witness = std::map<std::string, Expr>;

struct EquationVerdict {
    std::size_t equation_index = 0;
    Equation equation;
    PlVerdict verdict;
};

/// Throws SignatureError when the witness misses a symbol or an operation
/// reads more arguments than its symbol's arity.
void check_witness_signature(const Theory& theory, const Witness& witness);

/// pl_equal on both sides of every equation over universe^k, k the
/// equation's variable count.
std::vector<EquationVerdict> check_pl_model(const Theory& theory, const Witness& witness, const Interval& universe);

struct SamplePlan {
    /// Relative grid positions p/q in [0,1] with q <= grid_denominator.
    std::size_t grid_denominator = 6;
    /// Equations with more variables than this skip the grid.
    std::size_t grid_max_variables = 3;
    std::size_t random_points = 2000;
    std::uint64_t random_denominator = 10000;
    std::uint64_t seed = 0;
};

struct SampleRefutation {
    std::size_t equation_index = 0;
    Equation equation;
    std::vector<Rational> point;
    Rational lhs_value;
    Rational rhs_value;
};

/// No refutation only means none of the sampled points separated the two
/// sides; it is not a proof.
struct SampleVerdict {
    std::optional<SampleRefutation> refutation;
    std::uint64_t points = 0;

    bool refuted() const { return refutation.has_value(); }
};

/// Evaluates every equation at the grid (lexicographic order) and then at
/// seeded random rational points; stops at the first disagreement.
SampleVerdict sample_check(const Theory& theory, const Witness& witness, const Interval& universe,
                           const SamplePlan& plan = {});

/// T_n(x) from T_0 = 1, T_1 = x, T_n = 2x T_{n-1} - T_{n-2}.
Rational chebyshev(std::size_t n, const Rational& x);

}  // namespace eqtop
