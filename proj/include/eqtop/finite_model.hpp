#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqtop/term.hpp"

namespace eqtop {

using Element = std::uint32_t;

/// Total operation table; entries are stored row-major with the last
/// argument varying fastest, so the table has size^arity entries.
struct OpTable {
    std::string name;
    std::size_t arity = 0;
    std::vector<Element> table;

    friend bool operator==(const OpTable&, const OpTable&) = default;
};

/// A finite algebra on the universe {0, ..., size-1}.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    /// Validates table lengths and entries; throws Error otherwise.
    FiniteAlgebra(std::size_t size, std::vector<OpTable> ops);

    std::size_t size() const { return size_; }
    std::span<const OpTable> ops() const { return ops_; }
    const OpTable* find(std::string_view name) const;
    const OpTable& op(std::string_view name) const;
    SimilarityType signature() const;

    /// Value of the named operation at the given arguments.
    Element apply(std::string_view name, std::span<const Element> args) const;

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    std::size_t size_ = 1;
    std::vector<OpTable> ops_;
};

/// size^exponent, throwing when it does not fit in std::size_t.
std::size_t checked_power(std::size_t base, std::size_t exponent);

/// Row-major index of an argument tuple.
std::size_t table_index(std::span<const Element> args, std::size_t size);

/// Bottom-up evaluation. Throws UnknownSymbolError, ArityError or Error when
/// the assignment does not cover the term's variables (x_i reads assignment[i-1]).
Element evaluate_term(const FiniteAlgebra& algebra, const Term& term, std::span<const Element> assignment);

struct Counterexample {
    std::size_t equation_index = 0;
    Equation equation;
    std::vector<Element> assignment;  // values of x1, x2, ...
    Element lhs_value = 0;
    Element rhs_value = 0;
};

/// Holds, or the first failing (equation, assignment) in equation order and
/// then lexicographic assignment order (x1 most significant).
struct Satisfaction {
    std::optional<Counterexample> failure;
    bool holds() const { return !failure.has_value(); }
};

/// Throws SignatureError if a theory symbol is missing from the algebra or
/// has a different arity. Extra algebra operations are ignored.
Satisfaction satisfies(const FiniteAlgebra& algebra, const Theory& theory);

/// Componentwise product; element (i, j) is encoded as i*|B| + j.
FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// The model of the meet of Sigma and Gamma built from a |= Sigma and b |= Gamma:
/// a is expanded by first-projection tables for Gamma's symbols and p = pi_1,
/// b by first-projection tables for Sigma's symbols and p = pi_2, and the two
/// expansions are multiplied. Gamma symbols are renamed as in meet_signature.
/// A constant has no first projection; the other side's constants take the
/// value of the expanded algebra's own first constant, or 0 if it has none.
/// Throws PreconditionError (naming the failing equation) if a or b is not a model.
FiniteAlgebra meet_model(const FiniteAlgebra& a, const Theory& sigma, const FiniteAlgebra& b, const Theory& gamma);

/// The k-th power of b with the operations
///   H(t_1, ..., t_k) = (t_1[1], t_2[2], ..., t_k[k]),
///   d(t) = (t[2], ..., t[k], t[1]),
///   G_<s> = s applied coordinatewise, for every operation s of b.
/// Tuples are encoded base |B| with the first coordinate most significant.
/// Throws Error for k < 2 or when a generated name repeats.
FiniteAlgebra power_algebra(const FiniteAlgebra& b, std::size_t k);

/// Tuple <-> element encoding used by power_algebra.
std::vector<Element> decode_tuple(Element e, std::size_t base, std::size_t k);
Element encode_tuple(std::span<const Element> tuple, std::size_t base);

struct SearchOptions {
    /// Fix the first constant symbol to 0. Sound for existence questions
    /// (any model can be relabelled), but changes which model is found first.
    bool fix_first_constant = false;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t models = 0;
};

/// First model of the given size in the fixed enumeration order: all table
/// cells concatenated in signature order (each table row-major) read as one
/// base-`size` counter whose first cell is the most significant digit. The
/// search backtracks over that counter and prunes a prefix as soon as some
/// fully determined ground instance of an equation fails, which skips only
/// non-models and so returns the same first hit as plain enumeration.
std::optional<FiniteAlgebra> search_models(const Theory& theory, std::size_t size, SearchOptions options = {},
                                           SearchStats* stats = nullptr);

/// Every model of the given size in enumeration order; the visitor returns
/// false to stop early.
void search_all_models(const Theory& theory, std::size_t size,
                       const std::function<bool(const FiniteAlgebra&)>& visit, SearchOptions options = {},
                       SearchStats* stats = nullptr);

/// The table of the j-th projection (1-based) of the given arity.
std::vector<Element> projection_table(std::size_t size, std::size_t arity, std::size_t j);
std::vector<Element> constant_table(std::size_t size, std::size_t arity, Element value);

/// Brute force over a per-symbol list of candidate tables (symbols in
/// signature order, first symbol most significant); returns the first
/// combination that satisfies the theory.
std::optional<FiniteAlgebra> search_models_among(const Theory& theory, std::size_t size,
                                                 const std::vector<std::vector<std::vector<Element>>>& candidates);

/// Exists a 2-element algebra all of whose tables are projections or
/// constants and which satisfies the theory.
std::optional<FiniteAlgebra> search_projection_constant_model(const Theory& theory);

}  // namespace eqtop
