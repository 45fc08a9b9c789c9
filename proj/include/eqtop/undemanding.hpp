#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqtop/term.hpp"

namespace eqtop {

// Deciding whether a finite theory can be satisfied on a set with more than
// one element by operations that are projections or constants.
//
// Every symbol is sent either to a projection onto one argument or to "the"
// constant C. A single C is enough even when several symbols are constant:
// reducing a term never inspects the value of a constant, only whether the
// result is a variable or C, so any two-element model with several constant
// values collapses to one with a single constant without changing which
// equations hold, and the converse direction takes all constants equal.
// The k-coordinate version shares one C across coordinates for the same reason.

/// Choice for one symbol: projection onto argument `proj` (1-based), or constant.
struct ProjectionChoice {
    std::optional<std::size_t> proj;

    static ProjectionChoice projection(std::size_t j) { return {j}; }
    static ProjectionChoice constant() { return {}; }
    bool is_constant() const { return !proj; }

    friend bool operator==(const ProjectionChoice&, const ProjectionChoice&) = default;
};

/// One choice per signature symbol, aligned with the signature order.
struct ProjectionAssignment {
    SimilarityType signature;
    std::vector<ProjectionChoice> choices;

    /// Throws UnknownSymbolError for symbols outside the signature.
    const ProjectionChoice& at(std::string_view symbol) const;
};

/// Result of reducing a term: a variable x_j or the constant C.
struct KAtom {
    std::optional<std::size_t> var;  // nullopt means C

    static KAtom variable(std::size_t j) { return {j}; }
    static KAtom constant() { return {}; }
    bool is_constant() const { return !var; }

    friend bool operator==(const KAtom&, const KAtom&) = default;
};

KAtom reduce_term(const ProjectionAssignment& assignment, const Term& term);

struct Undemanding {
    ProjectionAssignment witness;
};
struct Demanding {};
using UndemandingVerdict = std::variant<Undemanding, Demanding>;

/// Product over symbols of (arity + 1).
std::uint64_t assignment_count(const Theory& theory);

/// Visits every projection assignment in enumeration order: symbols in
/// signature order with the first most significant, each ranging over
/// Proj(1), ..., Proj(n), Const. Return false from the visitor to stop.
/// Returns the number of assignments visited.
std::uint64_t for_each_projection_assignment(const Theory& theory,
                                             const std::function<bool(const ProjectionAssignment&)>& visit);

/// True when both sides of every equation reduce to the same atom.
bool consistent(const ProjectionAssignment& assignment, const Theory& theory);

UndemandingVerdict is_undemanding(const Theory& theory, std::uint64_t* visited = nullptr);

/// Entry of a coordinate assignment: coordinate `coord` of argument `arg`
/// (both 1-based), or the constant.
struct CoordEntry {
    std::size_t arg = 0;  // 0 means constant
    std::size_t coord = 0;

    static CoordEntry pick(std::size_t arg, std::size_t coord) { return {arg, coord}; }
    static CoordEntry constant() { return {}; }
    bool is_constant() const { return arg == 0; }

    friend bool operator==(const CoordEntry&, const CoordEntry&) = default;
};

/// For every symbol, a k-tuple of entries: output coordinate c of the
/// operation on the k-th power is the entry's pick (or C).
struct CoordAssignment {
    SimilarityType signature;
    std::size_t k = 1;
    std::vector<std::vector<CoordEntry>> entries;

    const std::vector<CoordEntry>& at(std::string_view symbol) const;
};

/// Coordinate atom: coordinate `coord` of variable x_var, or C.
struct CoordAtom {
    std::size_t var = 0;  // 0 means C
    std::size_t coord = 0;

    bool is_constant() const { return var == 0; }
    friend bool operator==(const CoordAtom&, const CoordAtom&) = default;
};

std::vector<CoordAtom> reduce_term(const CoordAssignment& assignment, const Term& term);

struct KUndemanding {
    CoordAssignment witness;
};
using KUndemandingVerdict = std::variant<KUndemanding, Demanding>;

/// Product over symbols of (arity * k + 1)^k.
std::uint64_t coord_assignment_count(const Theory& theory, std::size_t k);

/// Enumeration order: symbols in signature order (first most significant),
/// within a symbol the k entries with coordinate 1 most significant, each
/// entry ranging over Pick(1,1), Pick(1,2), ..., Pick(n,k), Const. For k = 1
/// this is exactly the order of is_undemanding.
KUndemandingVerdict is_k_undemanding(const Theory& theory, std::size_t k, std::uint64_t* visited = nullptr);

/// Lifts a one-dimensional witness coordinatewise to k coordinates.
CoordAssignment lift(const ProjectionAssignment& witness, std::size_t k);

/// Blocks a k-coordinate witness into a (k*m)-coordinate one: coordinate
/// (b-1)*k + c of the wide power behaves as coordinate c inside block b.
CoordAssignment block(const CoordAssignment& witness, std::size_t m);

std::string to_string(const ProjectionAssignment& assignment);
std::string to_string(const CoordAssignment& assignment);

}  // namespace eqtop
