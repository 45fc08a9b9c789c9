#pragma once

#include <string>
#include <vector>

#include "eqtop/pl.hpp"
#include "eqtop/term.hpp"

namespace eqtop {

enum class CheckMode { Certify, Sample };

/// A deliberately broken copy of a witness that the checker must reject.
struct Mutant {
    std::string description;
    Witness ops;
};

/// A theory together with concrete operations on an interval that satisfy it.
struct CatalogEntry {
    std::string name;
    Theory theory;
    Witness ops;
    Interval universe;
    CheckMode mode = CheckMode::Certify;
    std::vector<Mutant> mutants;
};

namespace pl_ops {

Expr meet();                       // min(v0, v1)
Expr join();                       // max(v0, v1)
Expr median();                     // (v0 ^ v1) v (v0 ^ v2) v (v1 ^ v2)
Expr minority();                   // min3 - median + max3
Expr two_thirds();                 // v0 - median + v2
/// alpha v0 + (1 - alpha) v1
Expr affine_combination(const Rational& alpha);
/// Piecewise-linear f on [0,1] through (i/(n+1), i mod 2) for i = 0..n+1,
/// written as a sum of tents centred at the odd nodes.
Expr zigzag(std::size_t n);
/// [(v0 + v1) ^ 1] v -1
Expr truncated_sum();

}  // namespace pl_ops

CatalogEntry catalog_dlat01();
CatalogEntry catalog_majority_m();
CatalogEntry catalog_minority_q();
CatalogEntry catalog_maltsev_p();
CatalogEntry catalog_two_thirds_t();
/// majority theory with m(x,y,z) = t(x, t(x,y,z), z)
CatalogEntry catalog_derived_majority_from_t();
CatalogEntry catalog_mult01();
/// Case-split F(a,b,c) = min(a v 2c, b v (2 - 2c)), equal to a v 2c for
/// c <= 1/2 and to b v (2 - 2c) for c >= 1/2 on [0,1].
CatalogEntry catalog_oneone_notonto();
/// Bilinear F(a,b,c) = (1-c)a + cb; contains Mul, so sampled only.
CatalogEntry catalog_oneone_notonto_bilinear();
/// Fa = F_alpha and Fb = F_(1-alpha) under the mixed entropic laws.
/// Throws PreconditionError unless 0 <= alpha <= 1.
CatalogEntry catalog_affine_alpha(const Rational& alpha);
/// F_(1/2) with commutativity added.
CatalogEntry catalog_affine_half();
/// Fa = F_(mu+nu), Fb = F_(mu/(mu+nu)), lin = mu x + nu y + lambda z.
/// Throws PreconditionError unless all three are positive and sum to 1.
CatalogEntry catalog_affine3(const Rational& mu, const Rational& nu, const Rational& lambda);
/// Throws PreconditionError for n = 0.
CatalogEntry catalog_lambda_n(std::size_t n);
CatalogEntry catalog_interval_ring();

/// Lookup for names without parameters, plus "affine_alpha:<p/q>",
/// "affine3:<mu>,<nu>,<lambda>" and "lambda_n:<n>"; the printed entry names
/// such as "lambda_n(3)" are accepted too. Throws Error otherwise.
CatalogEntry catalog(const std::string& name);

/// The entries run by `catalog run-all`, in a fixed order: every certify
/// entry (lambda_n for n = 1..5) and the sampled ones.
std::vector<CatalogEntry> catalog_all();

}  // namespace eqtop
