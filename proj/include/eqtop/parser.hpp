#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eqtop/term.hpp"

namespace eqtop {

struct InterpretationSpec;

/// Parses exactly one `theory NAME { ... }` block.
///
/// Grammar:
///   theory := "theory" IDENT "{" decl* "}"
///   decl   := "op" IDENT ":" NAT ";" | "eq" term "=" term ";"
///   term   := IDENT "(" term ("," term)* ")" | IDENT
///
/// A bare identifier denotes a constant when an arity-0 op of that name is
/// declared anywhere in the block, otherwise a variable. Variables are
/// renumbered per equation in first-occurrence order. `#` starts a line
/// comment. Throws ParseError (with line/column), ArityError,
/// DuplicateSymbolError or UnknownSymbolError.
Theory parse_theory(std::string_view text);

/// A parsed `interpret SIGMA in GAMMA { F(x,y) := term; ... }` block before
/// the theory names are resolved.
struct InterpretationSpec {
    std::string source;
    std::string target;
    /// Source symbol -> term over the target in variables x1..x_arity.
    std::vector<std::pair<std::string, Term>> terms;
};

/// A file holding any number of theory and interpret blocks.
struct Document {
    std::vector<Theory> theories;
    std::vector<InterpretationSpec> interpretations;

    const Theory* find_theory(std::string_view name) const;
};

/// Interpret blocks are resolved against the theories of the same document;
/// the source symbol's arity comes from the source theory. Definitions are
/// written either `F(a,b) := term;` (named parameters) or `F := term;` with
/// variables named x1..xn.
Document parse_document(std::string_view text);

}  // namespace eqtop
