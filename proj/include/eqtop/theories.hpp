#pragma once

#include <string_view>

#include "eqtop/term.hpp"

// Named equation sets used by the catalog, the CLI and the tests. Each is
// written in the theory DSL and parsed on demand.
namespace eqtop::theories {

Theory majority();            // m:3, m(x,x,y)=m(x,y,x)=m(y,x,x)=x
Theory minority();            // q:3, q(x,x,y)=q(x,y,x)=q(y,x,x)=y
Theory maltsev();             // p:3, p(x,x,y)=p(y,x,x)=y
Theory two_thirds_minority(); // t:3, t(x,x,y)=t(y,x,x)=y, t(x,y,x)=x
Theory associative();         // f:2
Theory idempotent_entropic(); // F:2
Theory commutative_idempotent_entropic();
/// Two affine combinations Fa, Fb: idempotent, entropic and mixed entropic.
Theory mixed_entropic();
/// mixed_entropic plus lin:3 with lin(x,y,z) = Fa(Fb(x,y),z).
Theory affine_decomposition();
Theory evans();               // (x*y)*(y*z)=y with * named star
Theory one_one_not_onto();    // F, psi, theta, phi, zero, one
Theory zero_one_multiplication();  // meet, zero, one
Theory fixed_point_exclusion();    // F:3, phi:1
/// Abelian groups with binary plus, binary subtraction minus, constant zero.
Theory abelian_group();
/// Boolean algebras over zero, one, and, or, not.
Theory boolean_algebra();
/// The equations of truncated-sum / product / shrink operations on [-1,1]:
/// times, bplus, F, meet, join, zero, one.
Theory interval_ring();

/// Lookup by the names above (snake_case); throws Error for unknown names.
Theory by_name(std::string_view name);

}  // namespace eqtop::theories
