#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqtop/rational.hpp"
#include "eqtop/term.hpp"

namespace eqtop {

struct TreeEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational length;
};

/// A point at distance `offset` from the u end of an edge. Compare points
/// only after MetricTree::canonical, which gives each vertex one spelling.
struct TreePoint {
    std::size_t edge = 0;
    Rational offset;

    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

/// One piece of an arc: along `edge` from offset `from` to offset `to`
/// (from > to when the arc runs towards the u end).
struct Segment {
    std::size_t edge = 0;
    Rational from;
    Rational to;
};

/// A finite tree with positive rational edge lengths.
class MetricTree {
public:
    /// Throws Error unless the edges form a tree on the named vertices,
    /// with at least one edge, distinct vertex names and positive lengths.
    MetricTree(std::vector<std::string> vertices, std::vector<TreeEdge> edges);

    std::span<const std::string> vertices() const { return vertices_; }
    std::span<const TreeEdge> edges() const { return edges_; }
    std::size_t vertex_index(const std::string& name) const;

    /// Throws Error for a bad edge index or an offset outside [0, length].
    TreePoint canonical(const TreePoint& p) const;
    /// The canonical point at a vertex: offset 0 or length on its lowest
    /// numbered incident edge.
    TreePoint at_vertex(std::size_t vertex) const;

    Rational distance(const TreePoint& a, const TreePoint& b) const;
    Rational vertex_distance(std::size_t x, std::size_t y) const { return dist_[x][y]; }

    /// The unique arc from a to b, with zero-length pieces dropped. Empty
    /// when a == b.
    std::vector<Segment> interval(const TreePoint& a, const TreePoint& b) const;

    /// The point of [a,b] at distance t from a (0 <= t <= d(a,b)).
    TreePoint along(const TreePoint& a, const TreePoint& b, const Rational& t) const;

    /// True when p lies on [a,b].
    bool on_interval(const TreePoint& p, const TreePoint& a, const TreePoint& b) const;

private:
    std::vector<std::size_t> vertex_path(std::size_t x, std::size_t y) const;
    std::size_t edge_between(std::size_t x, std::size_t y) const;

    std::vector<std::string> vertices_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::vector<Rational>> dist_;
    std::vector<std::vector<std::size_t>> next_hop_;  // next_hop_[x][y]: neighbour of x towards y
};

/// The unique point lying on all three pairwise arcs.
TreePoint median(const MetricTree& tree, const TreePoint& a, const TreePoint& b, const TreePoint& c);

/// A connected union of edges of a tree.
struct Subtree {
    std::vector<std::size_t> edges;
};

/// Nearest point of the subtree (the gate map). Throws Error when the
/// subtree is empty, names a bad edge or is disconnected.
TreePoint retract(const MetricTree& tree, const Subtree& subtree, const TreePoint& p);

/// Vertices c, l1, l2, l3 with unit edges c-l1, c-l2, c-l3 (arms 1, 2, 3).
MetricTree y_tree();

/// The minority operation on a three-armed tree: m(q1(P1 a, P1 b, P1 c),
/// q2(...), q3(...)), where P_i retracts onto Y_i, the union of the two
/// arms other than arm i. Y_i is read as the interval [0,2] from the free
/// end of its lower numbered arm (0) through the centre (1) to the free
/// end of its other arm (2), and q_i is min - median + max there. Arm i is
/// edge i - 1 of the tree. Throws PreconditionError unless the tree has
/// exactly three unit edges sharing one vertex.
TreePoint minority_Y(const MetricTree& y, const TreePoint& a, const TreePoint& b, const TreePoint& c);

/// median(root, a, b): where the arcs from root to a and to b part.
TreePoint rooted_meet(const MetricTree& tree, const TreePoint& root, const TreePoint& a, const TreePoint& b);

/// Canonical points at relative positions p/q (q <= denominator) along
/// every edge, deduplicated, in edge order then position order.
std::vector<TreePoint> tree_grid(const MetricTree& tree, std::size_t denominator);

std::string to_string(const MetricTree& tree, const TreePoint& p);

enum class TreeOp { Median, Minority, RootedMeet };

struct TreeCounterexample {
    std::size_t equation_index = 0;
    Equation equation;
    std::vector<TreePoint> assignment;  // values of x1, x2, ...
    TreePoint lhs_value;
    TreePoint rhs_value;
};

struct TreeCheck {
    std::optional<TreeCounterexample> failure;
    std::size_t grid_points = 0;
    std::uint64_t assignments = 0;

    bool holds() const { return !failure.has_value(); }
};

/// Checks every equation of the theory at every assignment of grid points
/// (equation order, then lexicographic with x1 most significant). Median
/// and Minority bind every ternary symbol; RootedMeet binds every binary
/// symbol to rooted_meet and every constant to the root, the first vertex.
/// Throws SignatureError for symbols the operation cannot bind.
TreeCheck tree_check(const MetricTree& tree, TreeOp op, const Theory& theory, std::size_t denominator);

}  // namespace eqtop
