#include "eqtop/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "eqtop/error.hpp"

namespace eqtop {

SimilarityType::SimilarityType(std::vector<Symbol> symbols) {
    for (auto& s : symbols) add(std::move(s));
}

void SimilarityType::add(Symbol symbol) {
    if (contains(symbol.name)) throw DuplicateSymbolError(symbol.name);
    symbols_.push_back(std::move(symbol));
}

const Symbol* SimilarityType::find(std::string_view name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return &s;
    return nullptr;
}

std::optional<std::size_t> SimilarityType::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return i;
    return std::nullopt;
}

Term Term::var(std::size_t index) {
    if (index == 0) throw Error("variable indices start at 1");
    Term t;
    t.var_ = index;
    return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
    Term t;
    t.symbol_ = std::move(symbol);
    t.args_ = std::move(args);
    return t;
}

std::size_t Term::max_var() const {
    if (is_var()) return var_;
    std::size_t m = 0;
    for (const auto& a : args_) m = std::max(m, a.max_var());
    return m;
}

std::size_t Term::depth() const {
    std::size_t d = 0;
    for (const auto& a : args_) d = std::max(d, a.depth() + 1);
    return d;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    // Variables sort before applications.
    if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_var()) return a.var_ <=> b.var_;
    if (auto c = a.symbol_.compare(b.symbol_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(),
                                                  b.args_.end());
}

std::size_t Equation::variable_count() const { return std::max(lhs.max_var(), rhs.max_var()); }

namespace {

void validate_term(const Term& t, const SimilarityType& sig, std::size_t eq, std::vector<Diagnostic>& out) {
    if (t.is_var()) return;
    const Symbol* s = sig.find(t.symbol());
    if (!s) {
        out.push_back({Diagnostic::Kind::UnknownSymbol, t.symbol(), eq,
                       "equation " + std::to_string(eq + 1) + " uses undeclared symbol '" + t.symbol() + "'"});
    } else if (s->arity != t.args().size()) {
        out.push_back({Diagnostic::Kind::ArityMismatch, t.symbol(), eq,
                       "'" + t.symbol() + "' declared with arity " + std::to_string(s->arity) + " but applied to " +
                           std::to_string(t.args().size()) + " arguments"});
    }
    for (const auto& a : t.args()) validate_term(a, sig, eq, out);
}

}  // namespace

std::vector<Diagnostic> validate(const Theory& theory) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < theory.equations.size(); ++i) {
        validate_term(theory.equations[i].lhs, theory.signature, i, out);
        validate_term(theory.equations[i].rhs, theory.signature, i, out);
    }
    return out;
}

Term substitute(const Term& term, const Substitution& env) {
    if (term.is_var()) {
        auto it = env.find(term.var_index());
        if (it == env.end()) throw MissingVariableError(term.var_index());
        return it->second;
    }
    std::vector<Term> args;
    args.reserve(term.args().size());
    for (const auto& a : term.args()) args.push_back(substitute(a, env));
    return Term::app(term.symbol(), std::move(args));
}

namespace {

void collect_order(const Term& t, std::map<std::size_t, std::size_t>& order) {
    if (t.is_var()) {
        order.try_emplace(t.var_index(), order.size() + 1);
        return;
    }
    for (const auto& a : t.args()) collect_order(a, order);
}

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
    std::string name = base + "__2";
    while (taken.contains(name)) name += "__2";
    return name;
}

}  // namespace

Equation canonicalize(const Equation& equation) {
    std::map<std::size_t, std::size_t> order;
    collect_order(equation.lhs, order);
    collect_order(equation.rhs, order);
    Substitution env;
    for (auto [from, to] : order) env.emplace(from, Term::var(to));
    return {substitute(equation.lhs, env), substitute(equation.rhs, env)};
}

Term rename_symbols(const Term& term, const std::map<std::string, std::string>& renames) {
    if (term.is_var()) return term;
    std::vector<Term> args;
    args.reserve(term.args().size());
    for (const auto& a : term.args()) args.push_back(rename_symbols(a, renames));
    auto it = renames.find(term.symbol());
    return Term::app(it == renames.end() ? term.symbol() : it->second, std::move(args));
}

namespace {

Theory apply_renames(const Theory& theory, const std::map<std::string, std::string>& renames) {
    if (renames.empty()) return theory;
    Theory out{theory.name, {}, {}};
    for (const auto& s : theory.signature) {
        auto it = renames.find(s.name);
        out.signature.add({it == renames.end() ? s.name : it->second, s.arity});
    }
    for (const auto& e : theory.equations)
        out.equations.push_back({rename_symbols(e.lhs, renames), rename_symbols(e.rhs, renames)});
    return out;
}

}  // namespace

std::pair<Theory, Theory> rename_disjoint(const Theory& sigma, const Theory& gamma) {
    std::set<std::string> taken;
    for (const auto& s : sigma.signature) taken.insert(s.name);
    for (const auto& s : gamma.signature) taken.insert(s.name);
    std::map<std::string, std::string> renames;
    for (const auto& s : gamma.signature) {
        if (!sigma.signature.contains(s.name)) continue;
        std::string fresh = fresh_name(s.name, taken);
        taken.insert(fresh);
        renames.emplace(s.name, fresh);
    }
    return {sigma, apply_renames(gamma, renames)};
}

Theory join_theories(const Theory& sigma, const Theory& gamma) {
    auto [left, right] = rename_disjoint(sigma, gamma);
    Theory out{left.name + "_join_" + right.name, left.signature, left.equations};
    for (const auto& s : right.signature) out.signature.add(s);
    out.equations.insert(out.equations.end(), right.equations.begin(), right.equations.end());
    return out;
}

const std::string& MeetSignature::gamma_name(const std::string& original) const {
    auto it = gamma_renames.find(original);
    if (it == gamma_renames.end()) throw UnknownSymbolError(original);
    return it->second;
}

MeetSignature meet_signature(const Theory& sigma, const Theory& gamma) {
    std::set<std::string> taken;
    for (const auto& s : sigma.signature) taken.insert(s.name);
    for (const auto& s : gamma.signature) taken.insert(s.name);

    MeetSignature out;
    out.discriminator = "p";
    if (sigma.signature.contains("p")) {
        out.discriminator = "p__meet";
        while (taken.contains(out.discriminator)) out.discriminator += "_";
    }
    taken.insert(out.discriminator);

    std::map<std::string, std::string> renames;
    for (const auto& s : gamma.signature) {
        std::string name = s.name;
        if (sigma.signature.contains(name) || name == out.discriminator) {
            name = fresh_name(s.name, taken);
            taken.insert(name);
            renames.emplace(s.name, name);
        }
        out.gamma_renames.emplace(s.name, name);
    }
    out.sigma = sigma.signature;
    out.gamma = apply_renames(Theory{gamma.name, gamma.signature, {}}, renames).signature;
    out.combined = out.sigma;
    for (const auto& s : out.gamma) out.combined.add(s);
    out.combined.add({out.discriminator, 2});
    return out;
}

std::string to_string(const Term& term) {
    if (term.is_var()) return "x" + std::to_string(term.var_index());
    if (term.args().empty()) return term.symbol();
    std::string out = term.symbol() + "(";
    for (std::size_t i = 0; i < term.args().size(); ++i) {
        if (i) out += ",";
        out += to_string(term.args()[i]);
    }
    return out + ")";
}

std::string to_string(const Equation& equation) { return to_string(equation.lhs) + "=" + to_string(equation.rhs); }

std::string to_string(const Theory& theory) {
    std::ostringstream os;
    os << "theory " << theory.name << " {\n";
    for (const auto& s : theory.signature) os << "  op " << s.name << ":" << s.arity << ";\n";
    for (const auto& e : theory.equations) os << "  eq " << to_string(e) << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace eqtop
