#include "eqtop/tree.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "eqtop/error.hpp"

namespace eqtop {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

MetricTree::MetricTree(std::vector<std::string> vertices, std::vector<TreeEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    const std::size_t n = vertices_.size();
    if (edges_.empty()) throw Error("a tree needs at least one edge");
    if (edges_.size() + 1 != n) throw Error("a tree on " + std::to_string(n) + " vertices has " +
                                            std::to_string(n - 1) + " edges, got " + std::to_string(edges_.size()));
    std::set<std::string> names(vertices_.begin(), vertices_.end());
    if (names.size() != n) throw Error("vertex names must be distinct");

    incident_.assign(n, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.u >= n || ed.v >= n || ed.u == ed.v) throw Error("edge " + std::to_string(e) + " has bad endpoints");
        if (ed.length <= 0) throw Error("edge " + std::to_string(e) + " must have positive length");
        incident_[ed.u].push_back(e);
        incident_[ed.v].push_back(e);
    }

    dist_.assign(n, std::vector<Rational>(n));
    next_hop_.assign(n, std::vector<std::size_t>(n, kNone));
    for (std::size_t s = 0; s < n; ++s) {
        // Walk outwards from s; first_step[x] is the neighbour of s on the way to x.
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> queue{s}, first_step(n, kNone);
        seen[s] = true;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t x = queue[qi];
            for (auto e : incident_[x]) {
                const std::size_t y = edges_[e].u == x ? edges_[e].v : edges_[e].u;
                if (seen[y]) continue;
                seen[y] = true;
                dist_[s][y] = dist_[s][x] + edges_[e].length;
                first_step[y] = x == s ? y : first_step[x];
                queue.push_back(y);
            }
        }
        if (queue.size() != n) throw Error("the edges do not connect all vertices");
        next_hop_[s] = first_step;
    }
}

std::size_t MetricTree::vertex_index(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) throw Error("unknown vertex '" + name + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

TreePoint MetricTree::at_vertex(std::size_t vertex) const {
    const std::size_t e = *std::min_element(incident_.at(vertex).begin(), incident_.at(vertex).end());
    return TreePoint{e, edges_[e].u == vertex ? Rational(0) : edges_[e].length};
}

TreePoint MetricTree::canonical(const TreePoint& p) const {
    if (p.edge >= edges_.size()) throw Error("no edge " + std::to_string(p.edge));
    const auto& ed = edges_[p.edge];
    if (p.offset < 0 || p.offset > ed.length)
        throw Error("offset " + format_rational(p.offset) + " lies outside edge " + std::to_string(p.edge));
    if (p.offset == 0) return at_vertex(ed.u);
    if (p.offset == ed.length) return at_vertex(ed.v);
    return p;
}

namespace {

struct End {
    std::size_t vertex;
    Rational gap;  // distance from the point to this end
};

std::array<End, 2> ends(const TreeEdge& e, const TreePoint& p) {
    return {End{e.u, p.offset}, End{e.v, e.length - p.offset}};
}

}  // namespace

Rational MetricTree::distance(const TreePoint& a0, const TreePoint& b0) const {
    const TreePoint a = canonical(a0), b = canonical(b0);
    if (a.edge == b.edge) return abs(a.offset - b.offset);
    std::optional<Rational> best;
    for (const auto& x : ends(edges_[a.edge], a))
        for (const auto& y : ends(edges_[b.edge], b)) {
            Rational d = x.gap + dist_[x.vertex][y.vertex] + y.gap;
            if (!best || d < *best) best = d;
        }
    return *best;
}

std::vector<std::size_t> MetricTree::vertex_path(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> path{x};
    while (x != y) {
        x = next_hop_[x][y];
        path.push_back(x);
    }
    return path;
}

std::size_t MetricTree::edge_between(std::size_t x, std::size_t y) const {
    for (auto e : incident_[x])
        if (edges_[e].u == y || edges_[e].v == y) return e;
    throw Error("internal: vertices are not adjacent");
}

std::vector<Segment> MetricTree::interval(const TreePoint& a0, const TreePoint& b0) const {
    const TreePoint a = canonical(a0), b = canonical(b0);
    std::vector<Segment> out;
    if (a.edge == b.edge) {
        if (a.offset != b.offset) out.push_back({a.edge, a.offset, b.offset});
        return out;
    }
    const auto ea = ends(edges_[a.edge], a);
    const auto eb = ends(edges_[b.edge], b);
    std::size_t bi = 0, bj = 0;
    std::optional<Rational> best;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Rational d = ea[i].gap + dist_[ea[i].vertex][eb[j].vertex] + eb[j].gap;
            if (!best || d < *best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    auto offset_of = [&](std::size_t edge, std::size_t vertex) {
        return edges_[edge].u == vertex ? Rational(0) : edges_[edge].length;
    };
    if (ea[bi].gap != 0) out.push_back({a.edge, a.offset, offset_of(a.edge, ea[bi].vertex)});
    const auto path = vertex_path(ea[bi].vertex, eb[bj].vertex);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const std::size_t e = edge_between(path[i], path[i + 1]);
        out.push_back({e, offset_of(e, path[i]), offset_of(e, path[i + 1])});
    }
    if (eb[bj].gap != 0) out.push_back({b.edge, offset_of(b.edge, eb[bj].vertex), b.offset});
    return out;
}

TreePoint MetricTree::along(const TreePoint& a, const TreePoint& b, const Rational& t) const {
    if (t < 0) throw Error("negative distance along an arc");
    Rational left = t;
    for (const auto& s : interval(a, b)) {
        const Rational len = abs(s.to - s.from);
        if (left <= len) return canonical({s.edge, s.from < s.to ? Rational(s.from + left) : Rational(s.from - left)});
        left -= len;
    }
    if (left != 0) throw Error("distance exceeds the length of the arc");
    return canonical(b);
}

bool MetricTree::on_interval(const TreePoint& p, const TreePoint& a, const TreePoint& b) const {
    return distance(a, p) + distance(p, b) == distance(a, b);
}

TreePoint median(const MetricTree& tree, const TreePoint& a, const TreePoint& b, const TreePoint& c) {
    // On [a,b] the median sits where the branch towards c leaves.
    const Rational t = (tree.distance(a, b) + tree.distance(a, c) - tree.distance(b, c)) / 2;
    return tree.along(a, b, t);
}

TreePoint retract(const MetricTree& tree, const Subtree& subtree, const TreePoint& p) {
    if (subtree.edges.empty()) throw Error("empty subtree");
    std::set<std::size_t> edge_set, verts;
    for (auto e : subtree.edges) {
        if (e >= tree.edges().size()) throw Error("subtree names missing edge " + std::to_string(e));
        edge_set.insert(e);
        verts.insert(tree.edges()[e].u);
        verts.insert(tree.edges()[e].v);
    }
    if (verts.size() != edge_set.size() + 1) throw Error("subtree is not connected");

    const TreePoint cp = tree.canonical(p);
    if (edge_set.count(cp.edge)) return cp;
    std::size_t best = *verts.begin();
    Rational best_d = tree.distance(cp, tree.at_vertex(best));
    for (auto v : verts) {
        Rational d = tree.distance(cp, tree.at_vertex(v));
        if (d < best_d) {
            best = v;
            best_d = d;
        }
    }
    return tree.at_vertex(best);
}

MetricTree y_tree() {
    return MetricTree({"c", "l1", "l2", "l3"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
}

namespace {

struct YShape {
    std::size_t center;

    /// Distance from the centre of a point on edge e at the given offset.
    Rational from_center(const MetricTree& y, std::size_t e, const Rational& offset) const {
        return y.edges()[e].u == center ? offset : Rational(1 - offset);
    }
    TreePoint on_arm(const MetricTree& y, std::size_t e, const Rational& s) const {
        return y.canonical({e, y.edges()[e].u == center ? s : Rational(1 - s)});
    }
};

YShape y_shape(const MetricTree& y) {
    const auto es = y.edges();
    if (es.size() != 3) throw PreconditionError("minority_Y needs a tree with exactly three edges");
    for (const auto& e : es)
        if (e.length != 1) throw PreconditionError("minority_Y needs unit arms");
    for (std::size_t c : {es[0].u, es[0].v}) {
        bool shared = true;
        for (const auto& e : es) shared = shared && (e.u == c || e.v == c);
        if (shared) return YShape{c};
    }
    throw PreconditionError("minority_Y needs three arms meeting at one vertex");
}

Rational real_minority(Rational u, Rational v, Rational w) {
    std::array<Rational, 3> s{std::move(u), std::move(v), std::move(w)};
    std::sort(s.begin(), s.end());
    return s[0] - s[1] + s[2];
}

}  // namespace

TreePoint minority_Y(const MetricTree& y, const TreePoint& a, const TreePoint& b, const TreePoint& c) {
    const YShape shape = y_shape(y);
    const std::array<TreePoint, 3> in{y.canonical(a), y.canonical(b), y.canonical(c)};
    std::array<TreePoint, 3> parts;
    for (std::size_t arm = 0; arm < 3; ++arm) {
        const std::size_t lo = arm == 0 ? 1 : 0;
        const std::size_t hi = arm == 2 ? 1 : 2;
        // Coordinate on Y_arm of the retraction of a point: the excluded arm
        // collapses onto the centre (coordinate 1).
        auto coord = [&](const TreePoint& p) -> Rational {
            const Rational s = shape.from_center(y, p.edge, p.offset);
            if (p.edge == arm || s == 0) return 1;
            return p.edge == lo ? Rational(1 - s) : Rational(1 + s);
        };
        const Rational x = real_minority(coord(in[0]), coord(in[1]), coord(in[2]));
        parts[arm] = x < 1 ? shape.on_arm(y, lo, Rational(1 - x)) : shape.on_arm(y, hi, Rational(x - 1));
    }
    return median(y, parts[0], parts[1], parts[2]);
}

TreePoint rooted_meet(const MetricTree& tree, const TreePoint& root, const TreePoint& a, const TreePoint& b) {
    return median(tree, root, a, b);
}

std::vector<TreePoint> tree_grid(const MetricTree& tree, std::size_t denominator) {
    if (denominator == 0) throw Error("grid denominator must be positive");
    std::set<Rational> rel;
    for (std::size_t q = 1; q <= denominator; ++q)
        for (std::size_t p = 0; p <= q; ++p) {
            Rational r(static_cast<long>(p), static_cast<long>(q));
            r.canonicalize();
            rel.insert(r);
        }
    std::vector<TreePoint> out;
    std::set<std::pair<std::size_t, Rational>> seen;
    for (std::size_t e = 0; e < tree.edges().size(); ++e)
        for (const auto& r : rel) {
            TreePoint p = tree.canonical({e, tree.edges()[e].length * r});
            if (seen.emplace(p.edge, p.offset).second) out.push_back(p);
        }
    return out;
}

std::string to_string(const MetricTree& tree, const TreePoint& p0) {
    const TreePoint p = tree.canonical(p0);
    const auto& e = tree.edges()[p.edge];
    if (p.offset == 0) return tree.vertices()[e.u];
    if (p.offset == e.length) return tree.vertices()[e.v];
    return tree.vertices()[e.u] + "-" + tree.vertices()[e.v] + "@" + format_rational(p.offset);
}

}  // namespace eqtop

namespace eqtop {

namespace {

class TreeEvaluator {
public:
    TreeEvaluator(const MetricTree& tree, TreeOp op) : tree_(tree), op_(op), root_(tree.at_vertex(0)) {}

    void check_signature(const Theory& theory) const {
        for (const auto& s : theory.signature) {
            const bool ok = op_ == TreeOp::RootedMeet ? (s.arity == 2 || s.arity == 0) : s.arity == 3;
            if (!ok)
                throw SignatureError("symbol '" + s.name + "' of arity " + std::to_string(s.arity) +
                                     " cannot be bound to the chosen tree operation");
        }
    }

    TreePoint run(const Term& t, const std::vector<TreePoint>& env) const {
        if (t.is_var()) return env[t.var_index() - 1];
        std::vector<TreePoint> a;
        for (const auto& x : t.args()) a.push_back(run(x, env));
        switch (op_) {
            case TreeOp::Median: return median(tree_, a[0], a[1], a[2]);
            case TreeOp::Minority: return minority_Y(tree_, a[0], a[1], a[2]);
            case TreeOp::RootedMeet: return a.empty() ? root_ : rooted_meet(tree_, root_, a[0], a[1]);
        }
        throw Error("internal: unknown tree operation");
    }

private:
    const MetricTree& tree_;
    TreeOp op_;
    TreePoint root_;
};

}  // namespace

TreeCheck tree_check(const MetricTree& tree, TreeOp op, const Theory& theory, std::size_t denominator) {
    TreeEvaluator ev(tree, op);
    ev.check_signature(theory);
    const auto grid = tree_grid(tree, denominator);
    TreeCheck out;
    out.grid_points = grid.size();
    for (std::size_t i = 0; i < theory.equations.size(); ++i) {
        const Equation& e = theory.equations[i];
        const std::size_t k = e.variable_count();
        std::vector<std::size_t> idx(k, 0);
        std::vector<TreePoint> env(k);
        while (true) {
            for (std::size_t j = 0; j < k; ++j) env[j] = grid[idx[j]];
            ++out.assignments;
            TreePoint l = ev.run(e.lhs, env), r = ev.run(e.rhs, env);
            if (!(l == r)) {
                out.failure = TreeCounterexample{i, e, env, l, r};
                return out;
            }
            std::size_t j = k;
            while (j > 0 && ++idx[j - 1] == grid.size()) idx[--j] = 0;
            if (j == 0) break;
        }
    }
    return out;
}

}  // namespace eqtop
