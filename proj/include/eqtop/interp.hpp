#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "eqtop/finite_model.hpp"
#include "eqtop/parser.hpp"
#include "eqtop/term.hpp"

namespace eqtop {

/// Sends every source symbol F (arity n) to a target term in x1..xn.
struct Interpretation {
    Theory source;
    Theory target;
    std::map<std::string, Term> terms;
};

/// Throws Error unless every source symbol has a term that uses only target
/// symbols (with correct arities) and variables x1..x_arity.
void check_well_formed(const Interpretation& interp);

/// Resolves a parsed interpret block against its document.
Interpretation resolve(const InterpretationSpec& spec, const Document& document);

/// Same universe as `model`; each source table is the term operation of its
/// defining term. Throws SignatureError if the model lacks target symbols.
FiniteAlgebra apply_interpretation(const Interpretation& interp, const FiniteAlgebra& model);

struct Refutation {
    FiniteAlgebra model;    // the target model
    FiniteAlgebra derived;  // its image under the interpretation
    Counterexample failure;
};

/// Either a refutation or confirmation up to the size bound. Confirmation
/// only means no target model of size <= max_size breaks the source
/// equations; it is not a proof of interpretability.
struct InterpretationCheck {
    std::optional<Refutation> refutation;
    std::size_t max_size = 0;
    std::size_t models_checked = 0;

    bool confirmed() const { return !refutation.has_value(); }
};

/// Enumerates every target model of sizes 1..max_size with search_all_models
/// and checks the derived algebra against the source theory.
InterpretationCheck check_interpretation(const Interpretation& interp, std::size_t max_size);

/// F -> F(x1, ..., xn) for every symbol.
Interpretation identity_interpretation(const Theory& theory);

/// The meet of sigma and gamma as a theory. Only its signature is used;
/// the equation list stays empty since the construction is semantic.
Theory meet_theory(const Theory& sigma, const Theory& gamma);

/// Interprets the meet in sigma: sigma symbols map to themselves, gamma
/// symbols and the discriminator to x1. A gamma constant maps to sigma's
/// first constant; throws PreconditionError if gamma has a constant and
/// sigma has none.
Interpretation meet_left_interpretation(const Theory& sigma, const Theory& gamma);

/// Interprets the meet in gamma: sigma symbols map to x1 and the
/// discriminator to x2.
Interpretation meet_right_interpretation(const Theory& sigma, const Theory& gamma);

/// Given alpha: Phi -> sigma and beta: Phi -> gamma, the interpretation of
/// Phi in the meet sending each G to p(alpha_G, beta_G).
Interpretation compose_into_meet(const Interpretation& alpha, const Interpretation& beta);

/// Squares of sets: H(x,x)=x, H(x,H(y,z))=H(x,z)=H(H(x,y),z), d(d(x))=x,
/// d(H(x,y))=H(d(y),d(x)) over {H:2, d:1}.
Theory squaring_theory();

/// Square root of the theory of a binary operation with two-sided unit:
/// two 4-ary operations f1, f2 and constants c1, c2.
Theory sqrt2_hspace_theory();

/// Distributive lattices with 0 and 1 (n = 0); for n >= 1 adds a unary f
/// and constants a1..an with the chain a_i meet a_{i+1} = a_i, f(0) = 0,
/// f(a_i) alternating 1, 0, 1, ... and f(1) = 1 exactly when n is even.
Theory lambda_theory(std::size_t n);

}  // namespace eqtop
