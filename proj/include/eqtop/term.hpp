#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqtop {

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// An ordered list of operation symbols with pairwise distinct names.
/// The order is significant: enumerations elsewhere walk symbols in it.
class SimilarityType {
public:
    SimilarityType() = default;
    /// Throws DuplicateSymbolError on repeated names.
    explicit SimilarityType(std::vector<Symbol> symbols);

    /// Throws DuplicateSymbolError if the name is taken.
    void add(Symbol symbol);

    const Symbol* find(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    std::span<const Symbol> symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

    friend bool operator==(const SimilarityType&, const SimilarityType&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// A term is a variable x_i (i >= 1) or an application of a symbol to
/// argument terms. Values are immutable once built.
class Term {
public:
    static Term var(std::size_t index);
    static Term app(std::string symbol, std::vector<Term> args = {});

    bool is_var() const { return var_ != 0; }
    std::size_t var_index() const { return var_; }
    const std::string& symbol() const { return symbol_; }
    std::span<const Term> args() const { return args_; }

    /// Largest variable index occurring in the term, 0 if ground.
    std::size_t max_var() const;
    std::size_t depth() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    Term() = default;

    std::size_t var_ = 0;
    std::string symbol_;
    std::vector<Term> args_;
};

struct Equation {
    Term lhs;
    Term rhs;

    /// Number of variables an assignment must cover (largest index on either side).
    std::size_t variable_count() const;

    friend bool operator==(const Equation&, const Equation&) = default;
};

struct Theory {
    std::string name;
    SimilarityType signature;
    std::vector<Equation> equations;

    friend bool operator==(const Theory&, const Theory&) = default;
};

struct Diagnostic {
    enum class Kind { UnknownSymbol, ArityMismatch, BadVariable };

    Kind kind;
    std::string symbol;
    std::size_t equation = 0;  // 0-based index into Theory::equations
    std::string message;
};

/// One diagnostic per violated Theory invariant; empty when well formed.
std::vector<Diagnostic> validate(const Theory& theory);

using Substitution = std::map<std::size_t, Term>;

/// Homomorphic replacement of variables. Throws MissingVariableError when
/// a variable of `term` has no binding.
Term substitute(const Term& term, const Substitution& env);

/// Renumbers variables to 1, 2, ... in first-occurrence order (lhs, then rhs,
/// preorder, left to right).
Equation canonicalize(const Equation& equation);

/// Returns gamma with every symbol that collides with sigma renamed by the
/// "__2" suffix (repeated until fresh). sigma is returned unchanged.
std::pair<Theory, Theory> rename_disjoint(const Theory& sigma, const Theory& gamma);

/// Disjoint union of signatures and concatenation of equation lists.
Theory join_theories(const Theory& sigma, const Theory& gamma);

/// Symbol bookkeeping shared by the meet constructions: the combined
/// signature of Sigma, renamed Gamma and the binary discriminator.
struct MeetSignature {
    SimilarityType combined;
    std::map<std::string, std::string> gamma_renames;  // original -> combined name
    std::string discriminator;
    SimilarityType sigma;
    SimilarityType gamma;  // already renamed

    const std::string& gamma_name(const std::string& original) const;
};

/// The discriminator is named "p"; Gamma symbols that collide with Sigma or
/// with "p" are renamed. If Sigma itself uses "p" the discriminator takes a
/// fresh "p__meet" style name instead.
MeetSignature meet_signature(const Theory& sigma, const Theory& gamma);

/// Renames symbols inside a term; names absent from the map are kept.
Term rename_symbols(const Term& term, const std::map<std::string, std::string>& renames);

std::string to_string(const Term& term);
std::string to_string(const Equation& equation);
/// DSL text that parse_theory reads back to an equal Theory.
std::string to_string(const Theory& theory);

}  // namespace eqtop
