#include "eqtop/undemanding.hpp"

#include <sstream>

#include "eqtop/error.hpp"

namespace eqtop {

const ProjectionChoice& ProjectionAssignment::at(std::string_view symbol) const {
    auto idx = signature.index_of(symbol);
    if (!idx) throw UnknownSymbolError(std::string(symbol));
    return choices.at(*idx);
}

KAtom reduce_term(const ProjectionAssignment& assignment, const Term& term) {
    if (term.is_var()) return KAtom::variable(term.var_index());
    const ProjectionChoice& c = assignment.at(term.symbol());
    if (c.is_constant()) return KAtom::constant();
    if (*c.proj > term.args().size()) throw ArityError(term.symbol(), "projection index exceeds arity");
    return reduce_term(assignment, term.args()[*c.proj - 1]);
}

std::uint64_t assignment_count(const Theory& theory) {
    std::uint64_t n = 1;
    for (const auto& s : theory.signature) n *= s.arity + 1;
    return n;
}

bool consistent(const ProjectionAssignment& assignment, const Theory& theory) {
    for (const auto& e : theory.equations)
        if (reduce_term(assignment, e.lhs) != reduce_term(assignment, e.rhs)) return false;
    return true;
}

namespace {

/// Odometer over per-position option counts, last position fastest.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

}  // namespace

std::uint64_t for_each_projection_assignment(const Theory& theory,
                                             const std::function<bool(const ProjectionAssignment&)>& visit) {
    const auto& sig = theory.signature;
    std::vector<std::size_t> radix, digits(sig.size(), 0);
    for (const auto& s : sig) radix.push_back(s.arity + 1);
    ProjectionAssignment k{sig, std::vector<ProjectionChoice>(sig.size())};
    std::uint64_t visited = 0;
    do {
        for (std::size_t i = 0; i < sig.size(); ++i)
            k.choices[i] = digits[i] < sig[i].arity ? ProjectionChoice::projection(digits[i] + 1)
                                                    : ProjectionChoice::constant();
        ++visited;
        if (!visit(k)) break;
    } while (advance(digits, radix));
    return visited;
}

UndemandingVerdict is_undemanding(const Theory& theory, std::uint64_t* visited) {
    std::optional<ProjectionAssignment> witness;
    std::uint64_t n = for_each_projection_assignment(theory, [&](const ProjectionAssignment& k) {
        if (!consistent(k, theory)) return true;
        witness = k;
        return false;
    });
    if (visited) *visited = n;
    if (witness) return Undemanding{*witness};
    return Demanding{};
}

const std::vector<CoordEntry>& CoordAssignment::at(std::string_view symbol) const {
    auto idx = signature.index_of(symbol);
    if (!idx) throw UnknownSymbolError(std::string(symbol));
    return entries.at(*idx);
}

std::vector<CoordAtom> reduce_term(const CoordAssignment& assignment, const Term& term) {
    std::vector<CoordAtom> out(assignment.k);
    if (term.is_var()) {
        for (std::size_t c = 0; c < assignment.k; ++c) out[c] = {term.var_index(), c + 1};
        return out;
    }
    const auto& entries = assignment.at(term.symbol());
    std::vector<std::vector<CoordAtom>> args;
    args.reserve(term.args().size());
    for (const auto& a : term.args()) args.push_back(reduce_term(assignment, a));
    for (std::size_t c = 0; c < assignment.k; ++c) {
        const CoordEntry& e = entries[c];
        if (e.is_constant()) continue;  // value-initialized atom is C
        if (e.arg > args.size() || e.coord == 0 || e.coord > assignment.k)
            throw ArityError(term.symbol(), "coordinate pick out of range");
        out[c] = args[e.arg - 1][e.coord - 1];
    }
    return out;
}

std::uint64_t coord_assignment_count(const Theory& theory, std::size_t k) {
    std::uint64_t n = 1;
    for (const auto& s : theory.signature)
        for (std::size_t c = 0; c < k; ++c) n *= s.arity * k + 1;
    return n;
}

KUndemandingVerdict is_k_undemanding(const Theory& theory, std::size_t k, std::uint64_t* visited) {
    if (k == 0) throw Error("k must be at least 1");
    const auto& sig = theory.signature;
    std::vector<std::size_t> radix, owner;
    for (std::size_t i = 0; i < sig.size(); ++i)
        for (std::size_t c = 0; c < k; ++c) {
            radix.push_back(sig[i].arity * k + 1);
            owner.push_back(i);
        }
    std::vector<std::size_t> digits(radix.size(), 0);
    CoordAssignment a{sig, k, std::vector<std::vector<CoordEntry>>(sig.size(), std::vector<CoordEntry>(k))};
    std::uint64_t n = 0;
    do {
        ++n;
        for (std::size_t d = 0; d < digits.size(); ++d) {
            const std::size_t i = owner[d], c = d % k, o = digits[d];
            a.entries[i][c] = o < sig[i].arity * k ? CoordEntry::pick(o / k + 1, o % k + 1) : CoordEntry::constant();
        }
        bool ok = true;
        for (const auto& e : theory.equations)
            if (reduce_term(a, e.lhs) != reduce_term(a, e.rhs)) {
                ok = false;
                break;
            }
        if (ok) {
            if (visited) *visited = n;
            return KUndemanding{a};
        }
    } while (advance(digits, radix));
    if (visited) *visited = n;
    return Demanding{};
}

CoordAssignment lift(const ProjectionAssignment& witness, std::size_t k) {
    CoordAssignment out{witness.signature, k, {}};
    for (const auto& choice : witness.choices) {
        std::vector<CoordEntry> row(k);
        for (std::size_t c = 0; c < k; ++c)
            row[c] = choice.is_constant() ? CoordEntry::constant() : CoordEntry::pick(*choice.proj, c + 1);
        out.entries.push_back(std::move(row));
    }
    return out;
}

CoordAssignment block(const CoordAssignment& witness, std::size_t m) {
    const std::size_t k = witness.k;
    CoordAssignment out{witness.signature, k * m, {}};
    for (const auto& row : witness.entries) {
        std::vector<CoordEntry> wide(k * m);
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < k; ++c) {
                const CoordEntry& e = row[c];
                wide[b * k + c] = e.is_constant() ? e : CoordEntry::pick(e.arg, b * k + e.coord);
            }
        out.entries.push_back(std::move(wide));
    }
    return out;
}

std::string to_string(const ProjectionAssignment& assignment) {
    std::ostringstream os;
    for (std::size_t i = 0; i < assignment.choices.size(); ++i) {
        const auto& c = assignment.choices[i];
        os << assignment.signature[i].name << " -> ";
        if (c.is_constant())
            os << "C";
        else
            os << "x" << *c.proj;
        os << "\n";
    }
    return os.str();
}

std::string to_string(const CoordAssignment& assignment) {
    std::ostringstream os;
    for (std::size_t i = 0; i < assignment.entries.size(); ++i) {
        os << assignment.signature[i].name << " -> (";
        for (std::size_t c = 0; c < assignment.k; ++c) {
            const auto& e = assignment.entries[i][c];
            if (c) os << ", ";
            if (e.is_constant())
                os << "C";
            else
                os << "x" << e.arg << "[" << e.coord << "]";
        }
        os << ")\n";
    }
    return os.str();
}

}  // namespace eqtop
