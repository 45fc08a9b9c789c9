#include "eqtop/finite_model.hpp"

#include <limits>
#include <set>

#include "eqtop/error.hpp"

namespace eqtop {

std::size_t checked_power(std::size_t base, std::size_t exponent) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
            throw Error("table of " + std::to_string(base) + "^" + std::to_string(exponent) + " entries is too large");
        out *= base;
    }
    return out;
}

std::size_t table_index(std::span<const Element> args, std::size_t size) {
    std::size_t idx = 0;
    for (Element a : args) idx = idx * size + a;
    return idx;
}

FiniteAlgebra::FiniteAlgebra(std::size_t size, std::vector<OpTable> ops) : size_(size), ops_(std::move(ops)) {
    if (size_ == 0) throw Error("an algebra needs a non-empty universe");
    std::set<std::string> names;
    for (const auto& op : ops_) {
        if (!names.insert(op.name).second) throw DuplicateSymbolError(op.name);
        if (op.table.size() != checked_power(size_, op.arity))
            throw Error("table of '" + op.name + "' has " + std::to_string(op.table.size()) + " entries, expected " +
                        std::to_string(checked_power(size_, op.arity)));
        for (Element e : op.table)
            if (e >= size_) throw Error("table of '" + op.name + "' has entry " + std::to_string(e) + " outside universe");
    }
}

const OpTable* FiniteAlgebra::find(std::string_view name) const {
    for (const auto& op : ops_)
        if (op.name == name) return &op;
    return nullptr;
}

const OpTable& FiniteAlgebra::op(std::string_view name) const {
    if (const OpTable* t = find(name)) return *t;
    throw UnknownSymbolError(std::string(name));
}

SimilarityType FiniteAlgebra::signature() const {
    SimilarityType sig;
    for (const auto& op : ops_) sig.add({op.name, op.arity});
    return sig;
}

Element FiniteAlgebra::apply(std::string_view name, std::span<const Element> args) const {
    const OpTable& t = op(name);
    if (args.size() != t.arity) throw ArityError(t.name, "wrong number of arguments for '" + t.name + "'");
    return t.table[table_index(args, size_)];
}

Element evaluate_term(const FiniteAlgebra& algebra, const Term& term, std::span<const Element> assignment) {
    if (term.is_var()) {
        if (term.var_index() > assignment.size()) throw MissingVariableError(term.var_index());
        return assignment[term.var_index() - 1];
    }
    const OpTable& t = algebra.op(term.symbol());
    if (t.arity != term.args().size())
        throw ArityError(t.name, "'" + t.name + "' applied to " + std::to_string(term.args().size()) + " arguments");
    std::size_t idx = 0;
    for (const auto& a : term.args()) idx = idx * algebra.size() + evaluate_term(algebra, a, assignment);
    return t.table[idx];
}

namespace {

constexpr Element kUndefined = std::numeric_limits<Element>::max();

/// Postfix program for a term over a fixed symbol numbering.
struct Program {
    struct Instr {
        bool is_var;
        std::uint32_t index;  // variable (0-based) or symbol number
    };
    std::vector<Instr> code;
};

void compile_into(const Term& t, const SimilarityType& sig, Program& out) {
    if (t.is_var()) {
        out.code.push_back({true, static_cast<std::uint32_t>(t.var_index() - 1)});
        return;
    }
    auto idx = sig.index_of(t.symbol());
    if (!idx) throw UnknownSymbolError(t.symbol());
    if (sig[*idx].arity != t.args().size())
        throw ArityError(t.symbol(), "'" + t.symbol() + "' applied to " + std::to_string(t.args().size()) +
                                         " arguments, arity is " + std::to_string(sig[*idx].arity));
    for (const auto& a : t.args()) compile_into(a, sig, out);
    out.code.push_back({false, static_cast<std::uint32_t>(*idx)});
}

Program compile(const Term& t, const SimilarityType& sig) {
    Program p;
    compile_into(t, sig, p);
    return p;
}

/// Tables laid out back to back in signature order.
struct FlatTables {
    std::size_t size = 0;
    std::vector<std::size_t> arity;
    std::vector<std::size_t> offset;
    std::vector<Element> cells;

    FlatTables(const SimilarityType& sig, std::size_t n) : size(n) {
        std::size_t total = 0;
        for (const auto& s : sig) {
            arity.push_back(s.arity);
            offset.push_back(total);
            total += checked_power(n, s.arity);
        }
        cells.assign(total, kUndefined);
    }
};

/// Evaluates a program; returns kUndefined when it reads an unset cell.
Element run(const Program& p, const FlatTables& tables, const Element* assignment, std::vector<Element>& stack) {
    stack.clear();
    for (const auto& ins : p.code) {
        if (ins.is_var) {
            stack.push_back(assignment[ins.index]);
            continue;
        }
        std::size_t n = tables.arity[ins.index];
        std::size_t idx = 0;
        for (std::size_t i = stack.size() - n; i < stack.size(); ++i) idx = idx * tables.size + stack[i];
        stack.resize(stack.size() - n);
        Element v = tables.cells[tables.offset[ins.index] + idx];
        if (v == kUndefined) return kUndefined;
        stack.push_back(v);
    }
    return stack.back();
}

struct CompiledEquation {
    Program lhs;
    Program rhs;
    std::size_t vars;
};

std::vector<CompiledEquation> compile_theory(const Theory& theory, const SimilarityType& sig) {
    std::vector<CompiledEquation> out;
    for (const auto& e : theory.equations) out.push_back({compile(e.lhs, sig), compile(e.rhs, sig), e.variable_count()});
    return out;
}

void check_signature(const FiniteAlgebra& algebra, const Theory& theory) {
    for (const auto& s : theory.signature) {
        const OpTable* t = algebra.find(s.name);
        if (!t) throw SignatureError("algebra has no table for '" + s.name + "'");
        if (t->arity != s.arity)
            throw SignatureError("algebra's '" + s.name + "' has arity " + std::to_string(t->arity) +
                                 ", theory declares " + std::to_string(s.arity));
    }
}

FlatTables flatten(const FiniteAlgebra& algebra, const SimilarityType& sig) {
    FlatTables flat(sig, algebra.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& table = algebra.op(sig[i].name).table;
        std::copy(table.begin(), table.end(), flat.cells.begin() + static_cast<std::ptrdiff_t>(flat.offset[i]));
    }
    return flat;
}

bool next_assignment(std::vector<Element>& a, std::size_t size) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (++a[i] < size) return true;
        a[i] = 0;
    }
    return false;
}

}  // namespace

Satisfaction satisfies(const FiniteAlgebra& algebra, const Theory& theory) {
    check_signature(algebra, theory);
    const auto compiled = compile_theory(theory, theory.signature);
    const FlatTables flat = flatten(algebra, theory.signature);
    std::vector<Element> stack;
    for (std::size_t e = 0; e < compiled.size(); ++e) {
        std::vector<Element> a(compiled[e].vars, 0);
        do {
            Element l = run(compiled[e].lhs, flat, a.data(), stack);
            Element r = run(compiled[e].rhs, flat, a.data(), stack);
            if (l != r) return {Counterexample{e, theory.equations[e], a, l, r}};
        } while (next_assignment(a, algebra.size()));
    }
    return {};
}

FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.ops().size() != b.ops().size()) throw SignatureError("product of algebras with different signatures");
    const std::size_t na = a.size(), nb = b.size(), n = na * nb;
    std::vector<OpTable> ops;
    for (const auto& ta : a.ops()) {
        const OpTable* tb = b.find(ta.name);
        if (!tb || tb->arity != ta.arity) throw SignatureError("'" + ta.name + "' missing or of different arity");
        OpTable t{ta.name, ta.arity, std::vector<Element>(checked_power(n, ta.arity))};
        std::vector<Element> args(ta.arity, 0), left(ta.arity), right(ta.arity);
        std::size_t idx = 0;
        do {
            for (std::size_t i = 0; i < ta.arity; ++i) {
                left[i] = static_cast<Element>(args[i] / nb);
                right[i] = static_cast<Element>(args[i] % nb);
            }
            Element x = ta.table[table_index(left, na)];
            Element y = tb->table[table_index(right, nb)];
            t.table[idx++] = static_cast<Element>(x * nb + y);
        } while (next_assignment(args, n));
        ops.push_back(std::move(t));
    }
    return FiniteAlgebra(n, std::move(ops));
}

std::vector<Element> projection_table(std::size_t size, std::size_t arity, std::size_t j) {
    if (j == 0 || j > arity) throw Error("projection index out of range");
    std::vector<Element> t(checked_power(size, arity));
    std::vector<Element> args(arity, 0);
    std::size_t idx = 0;
    do {
        t[idx++] = args[j - 1];
    } while (next_assignment(args, size));
    return t;
}

std::vector<Element> constant_table(std::size_t size, std::size_t arity, Element value) {
    return std::vector<Element>(checked_power(size, arity), value);
}

namespace {

void require_model(const FiniteAlgebra& m, const Theory& t, const char* which) {
    Satisfaction s = satisfies(m, t);
    if (!s.holds()) {
        std::string assignment;
        for (std::size_t i = 0; i < s.failure->assignment.size(); ++i)
            assignment += (i ? "," : "") + std::to_string(s.failure->assignment[i]);
        throw PreconditionError(std::string(which) + " does not satisfy " + t.name + ": " +
                                to_string(s.failure->equation) + " fails at (" + assignment + ")");
    }
}

/// `own` keeps its tables (renamed); every other symbol of `sig` gets the
/// first projection, the discriminator gets the given projection.
FiniteAlgebra expand(const FiniteAlgebra& own, const SimilarityType& own_sig,
                     const std::map<std::string, std::string>& renames, const SimilarityType& combined,
                     const std::string& discriminator, std::size_t disc_projection) {
    std::optional<Element> own_constant;
    for (const auto& s : own_sig)
        if (s.arity == 0) {
            own_constant = own.op(s.name).table[0];
            break;
        }
    std::map<std::string, const OpTable*> kept;
    for (const auto& s : own_sig) {
        auto it = renames.find(s.name);
        kept.emplace(it == renames.end() ? s.name : it->second, &own.op(s.name));
    }
    std::vector<OpTable> ops;
    for (const auto& s : combined) {
        if (auto it = kept.find(s.name); it != kept.end()) {
            ops.push_back({s.name, s.arity, it->second->table});
        } else if (s.name == discriminator) {
            ops.push_back({s.name, 2, projection_table(own.size(), 2, disc_projection)});
        } else if (s.arity == 0) {
            ops.push_back({s.name, 0, {own_constant.value_or(0)}});
        } else {
            ops.push_back({s.name, s.arity, projection_table(own.size(), s.arity, 1)});
        }
    }
    return FiniteAlgebra(own.size(), std::move(ops));
}

}  // namespace

FiniteAlgebra meet_model(const FiniteAlgebra& a, const Theory& sigma, const FiniteAlgebra& b, const Theory& gamma) {
    require_model(a, sigma, "left algebra");
    require_model(b, gamma, "right algebra");
    const MeetSignature ms = meet_signature(sigma, gamma);
    FiniteAlgebra left = expand(a, sigma.signature, {}, ms.combined, ms.discriminator, 1);
    FiniteAlgebra right = expand(b, gamma.signature, ms.gamma_renames, ms.combined, ms.discriminator, 2);
    return product(left, right);
}

std::vector<Element> decode_tuple(Element e, std::size_t base, std::size_t k) {
    std::vector<Element> t(k);
    for (std::size_t i = k; i-- > 0;) {
        t[i] = static_cast<Element>(e % base);
        e = static_cast<Element>(e / base);
    }
    return t;
}

Element encode_tuple(std::span<const Element> tuple, std::size_t base) {
    return static_cast<Element>(table_index(tuple, base));
}

FiniteAlgebra power_algebra(const FiniteAlgebra& b, std::size_t k) {
    if (k < 2) throw Error("power_algebra needs k >= 2");
    const std::size_t nb = b.size();
    const std::size_t n = checked_power(nb, k);
    std::vector<OpTable> ops;
    std::set<std::string> names{"H", "d"};

    {
        OpTable h{"H", k, std::vector<Element>(checked_power(n, k))};
        std::vector<Element> args(k, 0), out(k);
        std::size_t idx = 0;
        do {
            for (std::size_t i = 0; i < k; ++i) out[i] = decode_tuple(args[i], nb, k)[i];
            h.table[idx++] = encode_tuple(out, nb);
        } while (next_assignment(args, n));
        ops.push_back(std::move(h));
    }
    {
        OpTable d{"d", 1, std::vector<Element>(n)};
        for (Element e = 0; e < n; ++e) {
            auto t = decode_tuple(e, nb, k);
            std::vector<Element> shifted(t.begin() + 1, t.end());
            shifted.push_back(t[0]);
            d.table[e] = encode_tuple(shifted, nb);
        }
        ops.push_back(std::move(d));
    }
    for (const auto& op : b.ops()) {
        std::string name = "G_" + op.name;
        if (!names.insert(name).second) throw DuplicateSymbolError(name);
        OpTable g{name, op.arity, std::vector<Element>(checked_power(n, op.arity))};
        std::vector<Element> args(op.arity, 0), coord(op.arity), out(k);
        std::size_t idx = 0;
        do {
            std::vector<std::vector<Element>> tuples;
            for (Element a : args) tuples.push_back(decode_tuple(a, nb, k));
            for (std::size_t c = 0; c < k; ++c) {
                for (std::size_t i = 0; i < op.arity; ++i) coord[i] = tuples[i][c];
                out[c] = op.table[table_index(coord, nb)];
            }
            g.table[idx++] = encode_tuple(out, nb);
        } while (next_assignment(args, n));
        ops.push_back(std::move(g));
    }
    return FiniteAlgebra(n, std::move(ops));
}

namespace {

class ModelSearch {
public:
    ModelSearch(const Theory& theory, std::size_t size, SearchOptions options, SearchStats* stats)
        : theory_(theory), size_(size), tables_(theory.signature, size), stats_(stats) {
        if (size == 0) throw Error("model search needs size >= 1");
        for (const auto& d : validate(theory)) throw SignatureError(d.message);
        compiled_ = compile_theory(theory, theory.signature);
        for (std::size_t e = 0; e < compiled_.size(); ++e) {
            const std::size_t v = compiled_[e].vars;
            const std::size_t count = checked_power(size, v);
            std::vector<Element> a(v, 0);
            for (std::size_t i = 0; i < count; ++i) {
                instances_.push_back({static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(assignments_.size())});
                assignments_.insert(assignments_.end(), a.begin(), a.end());
                next_assignment(a, size);
            }
        }
        if (options.fix_first_constant) {
            for (std::size_t i = 0; i < theory.signature.size(); ++i)
                if (theory.signature[i].arity == 0) {
                    fixed_cell_ = tables_.offset[i];
                    break;
                }
        }
    }

    void run(const std::function<bool(const FiniteAlgebra&)>& visit) {
        visit_ = &visit;
        std::vector<std::uint32_t> pending;
        if (!filter(all_instances(), pending)) return;
        dfs(0, pending);
    }

private:
    struct Instance {
        std::uint32_t equation;
        std::uint32_t assignment;
    };

    std::vector<std::uint32_t> all_instances() const {
        std::vector<std::uint32_t> all(instances_.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

    /// Keeps undecided instances; false on the first violated one.
    bool filter(const std::vector<std::uint32_t>& in, std::vector<std::uint32_t>& out) {
        out.clear();
        for (std::uint32_t id : in) {
            const Instance& inst = instances_[id];
            const CompiledEquation& eq = compiled_[inst.equation];
            const Element* a = assignments_.data() + inst.assignment;
            Element l = eqtop::run(eq.lhs, tables_, a, stack_);
            if (l == kUndefined) {
                out.push_back(id);
                continue;
            }
            Element r = eqtop::run(eq.rhs, tables_, a, stack_);
            if (r == kUndefined) {
                out.push_back(id);
                continue;
            }
            if (l != r) return false;
        }
        return true;
    }

    bool dfs(std::size_t cell, const std::vector<std::uint32_t>& pending) {
        if (stats_) ++stats_->nodes;
        if (cell == tables_.cells.size()) {
            if (stats_) ++stats_->models;
            return (*visit_)(materialize());
        }
        const Element hi = (fixed_cell_ && *fixed_cell_ == cell) ? 1 : static_cast<Element>(size_);
        std::vector<std::uint32_t> next;
        for (Element v = 0; v < hi; ++v) {
            tables_.cells[cell] = v;
            if (filter(pending, next) && !dfs(cell + 1, next)) {
                tables_.cells[cell] = kUndefined;
                return false;
            }
        }
        tables_.cells[cell] = kUndefined;
        return true;
    }

    FiniteAlgebra materialize() const {
        std::vector<OpTable> ops;
        for (std::size_t i = 0; i < theory_.signature.size(); ++i) {
            auto begin = tables_.cells.begin() + static_cast<std::ptrdiff_t>(tables_.offset[i]);
            ops.push_back({theory_.signature[i].name, theory_.signature[i].arity,
                           std::vector<Element>(begin, begin + static_cast<std::ptrdiff_t>(
                                                                   checked_power(size_, tables_.arity[i])))});
        }
        return FiniteAlgebra(size_, std::move(ops));
    }

    const Theory& theory_;
    std::size_t size_;
    FlatTables tables_;
    SearchStats* stats_;
    std::vector<CompiledEquation> compiled_;
    std::vector<Instance> instances_;
    std::vector<Element> assignments_;
    std::optional<std::size_t> fixed_cell_;
    std::vector<Element> stack_;
    const std::function<bool(const FiniteAlgebra&)>* visit_ = nullptr;
};

}  // namespace

std::optional<FiniteAlgebra> search_models(const Theory& theory, std::size_t size, SearchOptions options,
                                           SearchStats* stats) {
    std::optional<FiniteAlgebra> found;
    search_all_models(
        theory, size,
        [&found](const FiniteAlgebra& m) {
            found = m;
            return false;
        },
        options, stats);
    return found;
}

void search_all_models(const Theory& theory, std::size_t size, const std::function<bool(const FiniteAlgebra&)>& visit,
                       SearchOptions options, SearchStats* stats) {
    ModelSearch search(theory, size, options, stats);
    search.run(visit);
}

std::optional<FiniteAlgebra> search_models_among(const Theory& theory, std::size_t size,
                                                 const std::vector<std::vector<std::vector<Element>>>& candidates) {
    const auto& sig = theory.signature;
    if (candidates.size() != sig.size()) throw Error("one candidate list per symbol is required");
    for (const auto& c : candidates)
        if (c.empty()) return std::nullopt;
    std::vector<std::size_t> choice(sig.size(), 0);
    while (true) {
        std::vector<OpTable> ops;
        for (std::size_t i = 0; i < sig.size(); ++i) ops.push_back({sig[i].name, sig[i].arity, candidates[i][choice[i]]});
        FiniteAlgebra m(size, std::move(ops));
        if (satisfies(m, theory).holds()) return m;
        std::size_t i = sig.size();
        while (i-- > 0) {
            if (++choice[i] < candidates[i].size()) break;
            choice[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) return std::nullopt;
    }
}

std::optional<FiniteAlgebra> search_projection_constant_model(const Theory& theory) {
    std::vector<std::vector<std::vector<Element>>> candidates;
    for (const auto& s : theory.signature) {
        std::vector<std::vector<Element>> tables;
        for (std::size_t j = 1; j <= s.arity; ++j) tables.push_back(projection_table(2, s.arity, j));
        tables.push_back(constant_table(2, s.arity, 0));
        tables.push_back(constant_table(2, s.arity, 1));
        candidates.push_back(std::move(tables));
    }
    return search_models_among(theory, 2, candidates);
}

}  // namespace eqtop
