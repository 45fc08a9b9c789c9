#include "eqtop/interp.hpp"

#include "eqtop/error.hpp"

namespace eqtop {

namespace {

void check_term(const Term& t, const SimilarityType& target, std::size_t arity, const std::string& owner) {
    if (t.is_var()) {
        if (t.var_index() > arity)
            throw Error("term for '" + owner + "' uses x" + std::to_string(t.var_index()) + " but the arity is " +
                        std::to_string(arity));
        return;
    }
    const Symbol* s = target.find(t.symbol());
    if (!s) throw UnknownSymbolError(t.symbol());
    if (s->arity != t.args().size())
        throw ArityError(t.symbol(), "'" + t.symbol() + "' applied to " + std::to_string(t.args().size()) +
                                         " arguments in the term for '" + owner + "'");
    for (const auto& a : t.args()) check_term(a, target, arity, owner);
}

Term identity_term(const Symbol& s) {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= s.arity; ++i) args.push_back(Term::var(i));
    return Term::app(s.name, std::move(args));
}

bool next_tuple(std::vector<Element>& a, std::size_t size) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (++a[i] < size) return true;
        a[i] = 0;
    }
    return false;
}

}  // namespace

void check_well_formed(const Interpretation& interp) {
    for (const auto& s : interp.source.signature) {
        auto it = interp.terms.find(s.name);
        if (it == interp.terms.end()) throw Error("no term given for source symbol '" + s.name + "'");
        check_term(it->second, interp.target.signature, s.arity, s.name);
    }
    for (const auto& [name, _] : interp.terms)
        if (!interp.source.signature.contains(name)) throw UnknownSymbolError(name);
}

Interpretation resolve(const InterpretationSpec& spec, const Document& document) {
    const Theory* source = document.find_theory(spec.source);
    const Theory* target = document.find_theory(spec.target);
    if (!source) throw Error("unknown theory '" + spec.source + "'");
    if (!target) throw Error("unknown theory '" + spec.target + "'");
    Interpretation out{*source, *target, {}};
    for (const auto& [name, term] : spec.terms) out.terms.emplace(name, term);
    check_well_formed(out);
    return out;
}

FiniteAlgebra apply_interpretation(const Interpretation& interp, const FiniteAlgebra& model) {
    for (const auto& s : interp.target.signature) {
        const OpTable* t = model.find(s.name);
        if (!t || t->arity != s.arity) throw SignatureError("model lacks target symbol '" + s.name + "'");
    }
    const std::size_t n = model.size();
    std::vector<OpTable> ops;
    for (const auto& s : interp.source.signature) {
        const Term& term = interp.terms.at(s.name);
        OpTable t{s.name, s.arity, {}};
        t.table.reserve(checked_power(n, s.arity));
        std::vector<Element> args(s.arity, 0);
        do {
            t.table.push_back(evaluate_term(model, term, args));
        } while (next_tuple(args, n));
        ops.push_back(std::move(t));
    }
    return FiniteAlgebra(n, std::move(ops));
}

InterpretationCheck check_interpretation(const Interpretation& interp, std::size_t max_size) {
    if (max_size == 0) throw Error("max_size must be at least 1");
    check_well_formed(interp);
    InterpretationCheck out;
    out.max_size = max_size;
    for (std::size_t size = 1; size <= max_size && !out.refutation; ++size) {
        search_all_models(interp.target, size, [&](const FiniteAlgebra& model) {
            ++out.models_checked;
            FiniteAlgebra derived = apply_interpretation(interp, model);
            Satisfaction s = satisfies(derived, interp.source);
            if (s.holds()) return true;
            out.refutation = Refutation{model, std::move(derived), *s.failure};
            return false;
        });
    }
    return out;
}

Interpretation identity_interpretation(const Theory& theory) {
    Interpretation out{theory, theory, {}};
    for (const auto& s : theory.signature) out.terms.emplace(s.name, identity_term(s));
    return out;
}

Theory meet_theory(const Theory& sigma, const Theory& gamma) {
    return Theory{sigma.name + "_meet_" + gamma.name, meet_signature(sigma, gamma).combined, {}};
}

namespace {

Interpretation meet_side(const Theory& sigma, const Theory& gamma, bool left) {
    const MeetSignature ms = meet_signature(sigma, gamma);
    const Theory& own = left ? sigma : gamma;
    Interpretation out{meet_theory(sigma, gamma), own, {}};

    std::optional<std::string> own_constant;
    for (const auto& s : own.signature)
        if (s.arity == 0) {
            own_constant = s.name;
            break;
        }
    const SimilarityType& own_combined = left ? ms.sigma : ms.gamma;

    for (const auto& s : ms.combined) {
        if (s.name == ms.discriminator) {
            out.terms.emplace(s.name, Term::var(left ? 1 : 2));
        } else if (own_combined.contains(s.name)) {
            // Own symbols keep their operation; gamma's may carry a renamed name.
            std::string original = s.name;
            if (!left)
                for (const auto& [orig, renamed] : ms.gamma_renames)
                    if (renamed == s.name) original = orig;
            std::vector<Term> args;
            for (std::size_t i = 1; i <= s.arity; ++i) args.push_back(Term::var(i));
            out.terms.emplace(s.name, Term::app(original, std::move(args)));
        } else if (s.arity == 0) {
            if (!own_constant)
                throw PreconditionError("constant '" + s.name + "' has no counterpart: " + own.name +
                                        " declares no constant");
            out.terms.emplace(s.name, Term::app(*own_constant));
        } else {
            out.terms.emplace(s.name, Term::var(1));
        }
    }
    return out;
}

}  // namespace

Interpretation meet_left_interpretation(const Theory& sigma, const Theory& gamma) {
    return meet_side(sigma, gamma, true);
}

Interpretation meet_right_interpretation(const Theory& sigma, const Theory& gamma) {
    return meet_side(sigma, gamma, false);
}

Interpretation compose_into_meet(const Interpretation& alpha, const Interpretation& beta) {
    if (alpha.source.signature != beta.source.signature)
        throw SignatureError("both interpretations must start from the same theory");
    const MeetSignature ms = meet_signature(alpha.target, beta.target);
    Interpretation out{alpha.source, meet_theory(alpha.target, beta.target), {}};
    for (const auto& s : alpha.source.signature) {
        Term a = alpha.terms.at(s.name);
        Term b = rename_symbols(beta.terms.at(s.name), ms.gamma_renames);
        out.terms.emplace(s.name, Term::app(ms.discriminator, {std::move(a), std::move(b)}));
    }
    return out;
}

Theory squaring_theory() {
    return parse_theory(R"(theory Squaring {
  op H:2;
  op d:1;
  eq H(x,x) = x;
  eq H(x,H(y,z)) = H(x,z);
  eq H(H(x,y),z) = H(x,z);
  eq d(d(x)) = x;
  eq d(H(x,y)) = H(d(y),d(x));
})");
}

Theory sqrt2_hspace_theory() {
    return parse_theory(R"(theory Sqrt2HSpace {
  op f1:4;
  op f2:4;
  op c1:0;
  op c2:0;
  eq f1(x1,x2,c1,c2) = x1;
  eq f2(x1,x2,c1,c2) = x2;
  eq f1(c1,c2,x1,x2) = x1;
  eq f2(c1,c2,x1,x2) = x2;
})");
}

Theory lambda_theory(std::size_t n) {
    // Commutativity, associativity and absorption for both operations, one
    // distributive law, and the bounds: ten axioms. x join 0 = x is left out
    // because absorption gives it from x meet 0 = 0.
    std::string text = "theory Lambda" + std::to_string(n) + R"( {
  op meet:2;
  op join:2;
  op zero:0;
  op one:0;
  eq meet(x,y) = meet(y,x);
  eq join(x,y) = join(y,x);
  eq meet(meet(x,y),z) = meet(x,meet(y,z));
  eq join(join(x,y),z) = join(x,join(y,z));
  eq meet(x,join(x,y)) = x;
  eq join(x,meet(x,y)) = x;
  eq meet(x,join(y,z)) = join(meet(x,y),meet(x,z));
  eq meet(x,zero) = zero;
  eq join(x,one) = one;
  eq meet(x,one) = x;
)";
    if (n > 0) {
        text += "  op f:1;\n";
        for (std::size_t i = 1; i <= n; ++i) text += "  op a" + std::to_string(i) + ":0;\n";
        for (std::size_t i = 1; i < n; ++i)
            text += "  eq meet(a" + std::to_string(i) + ",a" + std::to_string(i + 1) + ") = a" + std::to_string(i) + ";\n";
        text += "  eq f(zero) = zero;\n";
        for (std::size_t i = 1; i <= n; ++i)
            text += "  eq f(a" + std::to_string(i) + ") = " + (i % 2 == 1 ? "one" : "zero") + ";\n";
        text += std::string("  eq f(one) = ") + (n % 2 == 0 ? "one" : "zero") + ";\n";
    }
    text += "}\n";
    return parse_theory(text);
}

}  // namespace eqtop
