#include "eqtop/theories.hpp"

#include "eqtop/error.hpp"
#include "eqtop/parser.hpp"

namespace eqtop::theories {

Theory majority() {
    return parse_theory(R"(theory Majority {
  op m:3;
  eq m(x,x,y) = x;
  eq m(x,y,x) = x;
  eq m(y,x,x) = x;
})");
}

Theory minority() {
    return parse_theory(R"(theory Minority {
  op q:3;
  eq q(x,x,y) = y;
  eq q(x,y,x) = y;
  eq q(y,x,x) = y;
})");
}

Theory maltsev() {
    return parse_theory(R"(theory Maltsev {
  op p:3;
  eq p(x,x,y) = y;
  eq p(y,x,x) = y;
})");
}

Theory two_thirds_minority() {
    return parse_theory(R"(theory TwoThirdsMinority {
  op t:3;
  eq t(x,x,y) = y;
  eq t(y,x,x) = y;
  eq t(x,y,x) = x;
})");
}

Theory associative() {
    return parse_theory(R"(theory Associative {
  op f:2;
  eq f(f(x,y),z) = f(x,f(y,z));
})");
}

Theory idempotent_entropic() {
    return parse_theory(R"(theory IdempotentEntropic {
  op F:2;
  eq F(x,x) = x;
  eq F(F(x,y),F(u,v)) = F(F(x,u),F(y,v));
})");
}

Theory commutative_idempotent_entropic() {
    return parse_theory(R"(theory CommutativeIdempotentEntropic {
  op F:2;
  eq F(x,x) = x;
  eq F(F(x,y),F(u,v)) = F(F(x,u),F(y,v));
  eq F(x,y) = F(y,x);
})");
}

Theory mixed_entropic() {
    return parse_theory(R"(theory MixedEntropic {
  op Fa:2;
  op Fb:2;
  eq Fa(x,x) = x;
  eq Fb(x,x) = x;
  eq Fa(Fa(x,y),Fa(u,v)) = Fa(Fa(x,u),Fa(y,v));
  eq Fb(Fb(x,y),Fb(u,v)) = Fb(Fb(x,u),Fb(y,v));
  eq Fa(Fb(x,y),Fb(u,v)) = Fb(Fa(x,u),Fa(y,v));
})");
}

Theory affine_decomposition() {
    return parse_theory(R"(theory AffineDecomposition {
  op Fa:2;
  op Fb:2;
  op lin:3;
  eq Fa(x,x) = x;
  eq Fb(x,x) = x;
  eq Fa(Fa(x,y),Fa(u,v)) = Fa(Fa(x,u),Fa(y,v));
  eq Fb(Fb(x,y),Fb(u,v)) = Fb(Fb(x,u),Fb(y,v));
  eq Fa(Fb(x,y),Fb(u,v)) = Fb(Fa(x,u),Fa(y,v));
  eq lin(x,y,z) = Fa(Fb(x,y),z);
})");
}

Theory evans() {
    return parse_theory(R"(theory Evans {
  op star:2;
  eq star(star(x,y),star(y,z)) = y;
})");
}

Theory one_one_not_onto() {
    return parse_theory(R"(theory OneOneNotOnto {
  op F:3;
  op psi:1;
  op theta:1;
  op phi:1;
  op zero:0;
  op one:0;
  eq F(x,y,zero) = x;
  eq F(x,y,one) = y;
  eq psi(theta(x)) = x;
  eq phi(theta(x)) = zero;
  eq phi(one) = one;
})");
}

Theory zero_one_multiplication() {
    return parse_theory(R"(theory ZeroOneMultiplication {
  op meet:2;
  op zero:0;
  op one:0;
  eq meet(x,zero) = zero;
  eq meet(x,one) = x;
})");
}

Theory fixed_point_exclusion() {
    return parse_theory(R"(theory FixedPointExclusion {
  op F:3;
  op phi:1;
  eq F(x,x,y) = y;
  eq F(phi(x),x,y) = x;
})");
}

Theory abelian_group() {
    return parse_theory(R"(theory AbelianGroup {
  op plus:2;
  op minus:2;
  op zero:0;
  eq plus(x,y) = plus(y,x);
  eq plus(plus(x,y),z) = plus(x,plus(y,z));
  eq plus(x,zero) = x;
  eq plus(minus(x,y),y) = x;
})");
}

Theory boolean_algebra() {
    return parse_theory(R"(theory BooleanAlgebra {
  op zero:0;
  op one:0;
  op and:2;
  op or:2;
  op not:1;
  eq and(x,y) = and(y,x);
  eq or(x,y) = or(y,x);
  eq and(and(x,y),z) = and(x,and(y,z));
  eq or(or(x,y),z) = or(x,or(y,z));
  eq and(x,or(x,y)) = x;
  eq or(x,and(x,y)) = x;
  eq and(x,or(y,z)) = or(and(x,y),and(x,z));
  eq or(x,zero) = x;
  eq and(x,one) = x;
  eq and(x,not(x)) = zero;
  eq or(x,not(x)) = one;
})");
}

Theory interval_ring() {
    return parse_theory(R"(theory IntervalRing {
  op times:2;
  op bplus:2;
  op F:1;
  op meet:2;
  op join:2;
  op zero:0;
  op one:0;
  eq bplus(x,y) = bplus(y,x);
  eq bplus(bplus(F(x),F(y)),F(z)) = bplus(F(x),bplus(F(y),F(z)));
  eq bplus(bplus(F(x),F(x)),F(x)) = x;
  eq times(x,bplus(F(y),F(z))) = bplus(times(x,F(y)),times(x,F(z)));
  eq times(times(x,x),meet(y,z)) = meet(times(times(x,x),y),times(times(x,x),z));
  eq times(times(x,x),join(y,z)) = join(times(times(x,x),y),times(times(x,x),z));
  eq bplus(bplus(times(x,x),times(y,y)),times(z,z)) = bplus(times(x,x),bplus(times(y,y),times(z,z)));
  eq F(meet(x,y)) = meet(F(x),F(y));
  eq F(join(x,y)) = join(F(x),F(y));
  eq join(times(x,x),zero) = times(x,x);
  eq times(meet(x,zero),meet(y,z)) = join(times(meet(x,zero),y),times(meet(x,zero),z));
})");
}

Theory by_name(std::string_view name) {
    if (name == "majority") return majority();
    if (name == "minority") return minority();
    if (name == "maltsev") return maltsev();
    if (name == "two_thirds_minority") return two_thirds_minority();
    if (name == "associative") return associative();
    if (name == "idempotent_entropic") return idempotent_entropic();
    if (name == "commutative_idempotent_entropic") return commutative_idempotent_entropic();
    if (name == "mixed_entropic") return mixed_entropic();
    if (name == "affine_decomposition") return affine_decomposition();
    if (name == "evans") return evans();
    if (name == "one_one_not_onto") return one_one_not_onto();
    if (name == "zero_one_multiplication") return zero_one_multiplication();
    if (name == "fixed_point_exclusion") return fixed_point_exclusion();
    if (name == "abelian_group") return abelian_group();
    if (name == "boolean_algebra") return boolean_algebra();
    if (name == "interval_ring") return interval_ring();
    throw Error("unknown theory '" + std::string(name) + "'");
}

}  // namespace eqtop::theories
