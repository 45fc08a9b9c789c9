#include "eqtop/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "eqtop/error.hpp"

namespace eqtop {

namespace {

enum class Tok { Ident, Nat, LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Equals, Define, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Nat: return "natural number";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Equals: return "'='";
        case Tok::Define: return "':='";
        case Tok::End: return "end of input";
    }
    return "token";
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
            ++col;  // count code points, not UTF-8 continuation bytes
        }
        ++i;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        std::size_t l = line, cl = col, start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) advance();
            out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), l, cl});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance();
            out.push_back({Tok::Nat, std::string(text.substr(start, i - start)), l, cl});
            continue;
        }
        Tok kind;
        switch (c) {
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semi; break;
            case '=': kind = Tok::Equals; break;
            case ':':
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    advance();
                    advance();
                    out.push_back({Tok::Define, ":=", l, cl});
                    continue;
                }
                kind = Tok::Colon;
                break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
        advance();
        out.push_back({kind, std::string(1, c), l, cl});
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct RawTerm {
    std::string name;
    std::size_t line = 0;
    std::size_t column = 0;
    bool call = false;
    std::vector<RawTerm> args;
};

struct RawOp {
    Token name;
    std::size_t arity;
};

struct RawEq {
    RawTerm lhs;
    RawTerm rhs;
};

struct RawDefinition {
    Token symbol;
    std::optional<std::vector<Token>> params;
    RawTerm body;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    bool at_end() const { return peek().kind == Tok::End; }
    const Token& peek() const { return toks_[pos_]; }

    Token expect(Tok kind) {
        const Token& t = peek();
        if (t.kind != kind)
            throw ParseError("expected " + describe(kind) + ", found " +
                                 (t.kind == Tok::End ? describe(t.kind) : "'" + t.text + "'"),
                             t.line, t.column);
        return toks_[pos_++];
    }

    Token expect_keyword(std::string_view word) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || t.text != word)
            throw ParseError("expected '" + std::string(word) + "'", t.line, t.column);
        return toks_[pos_++];
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    RawTerm term() {
        Token name = expect(Tok::Ident);
        RawTerm t{name.text, name.line, name.column, false, {}};
        if (accept(Tok::LParen)) {
            t.call = true;
            t.args.push_back(term());
            while (accept(Tok::Comma)) t.args.push_back(term());
            expect(Tok::RParen);
        }
        return t;
    }

    Theory theory() {
        expect_keyword("theory");
        Token name = expect(Tok::Ident);
        expect(Tok::LBrace);
        std::vector<RawOp> ops;
        std::vector<RawEq> eqs;
        while (!accept(Tok::RBrace)) {
            const Token& kw = peek();
            if (kw.kind == Tok::Ident && kw.text == "op") {
                ++pos_;
                Token op = expect(Tok::Ident);
                expect(Tok::Colon);
                Token n = expect(Tok::Nat);
                expect(Tok::Semi);
                ops.push_back({op, std::stoul(n.text)});
            } else if (kw.kind == Tok::Ident && kw.text == "eq") {
                ++pos_;
                RawTerm lhs = term();
                expect(Tok::Equals);
                RawTerm rhs = term();
                expect(Tok::Semi);
                eqs.push_back({std::move(lhs), std::move(rhs)});
            } else {
                throw ParseError("expected 'op', 'eq' or '}'", kw.line, kw.column);
            }
        }

        Theory out;
        out.name = name.text;
        for (const auto& op : ops) {
            out.signature.add({op.name.text, op.arity});  // throws on a repeated name
        }
        for (const auto& eq : eqs) {
            std::map<std::string, std::size_t> vars;
            auto bind = [&vars](const RawTerm& v) -> std::size_t {
                auto it = vars.try_emplace(v.name, vars.size() + 1).first;
                return it->second;
            };
            Term lhs = resolve(eq.lhs, out.signature, bind);
            Term rhs = resolve(eq.rhs, out.signature, bind);
            out.equations.push_back({std::move(lhs), std::move(rhs)});
        }
        return out;
    }

    InterpretationSpec interpretation(const std::vector<Theory>& known) {
        expect_keyword("interpret");
        Token source = expect(Tok::Ident);
        expect_keyword("in");
        Token target = expect(Tok::Ident);
        const Theory* src = find(known, source);
        const Theory* tgt = find(known, target);
        if (!src) throw ParseError("unknown theory '" + source.text + "'", source.line, source.column);
        if (!tgt) throw ParseError("unknown theory '" + target.text + "'", target.line, target.column);

        expect(Tok::LBrace);
        std::vector<RawDefinition> defs;
        while (!accept(Tok::RBrace)) {
            RawDefinition d{expect(Tok::Ident), std::nullopt, {}};
            if (accept(Tok::LParen)) {
                d.params.emplace();
                d.params->push_back(expect(Tok::Ident));
                while (accept(Tok::Comma)) d.params->push_back(expect(Tok::Ident));
                expect(Tok::RParen);
            }
            expect(Tok::Define);
            d.body = term();
            expect(Tok::Semi);
            defs.push_back(std::move(d));
        }

        InterpretationSpec out{src->name, tgt->name, {}};
        for (const auto& d : defs) {
            const Symbol* s = src->signature.find(d.symbol.text);
            if (!s) throw UnknownSymbolError(d.symbol.text);
            for (const auto& [name, _] : out.terms)
                if (name == d.symbol.text) throw DuplicateSymbolError(d.symbol.text);
            std::map<std::string, std::size_t> params;
            if (d.params) {
                if (d.params->size() != s->arity)
                    throw ArityError(s->name, "definition of '" + s->name + "' lists " +
                                                  std::to_string(d.params->size()) + " parameters, arity is " +
                                                  std::to_string(s->arity));
                for (std::size_t i = 0; i < d.params->size(); ++i)
                    if (!params.try_emplace((*d.params)[i].text, i + 1).second)
                        throw ParseError("repeated parameter '" + (*d.params)[i].text + "'", (*d.params)[i].line,
                                         (*d.params)[i].column);
            }
            auto bind = [&](const RawTerm& v) -> std::size_t {
                if (d.params) {
                    auto it = params.find(v.name);
                    if (it == params.end())
                        throw ParseError("'" + v.name + "' is not a parameter of '" + s->name + "'", v.line, v.column);
                    return it->second;
                }
                std::size_t index = 0;
                if (v.name.size() > 1 && v.name[0] == 'x' && v.name.find_first_not_of("0123456789", 1) == std::string::npos)
                    index = std::stoul(v.name.substr(1));
                if (index == 0 || index > s->arity)
                    throw ParseError("variable '" + v.name + "' must be one of x1..x" + std::to_string(s->arity),
                                     v.line, v.column);
                return index;
            };
            out.terms.emplace_back(s->name, resolve(d.body, tgt->signature, bind));
        }
        return out;
    }

private:
    template <class Bind>
    Term resolve(const RawTerm& raw, const SimilarityType& sig, Bind& bind) {
        const Symbol* s = sig.find(raw.name);
        if (!raw.call) {
            if (!s) return Term::var(bind(raw));
            if (s->arity != 0)
                throw ArityError(s->name, std::to_string(raw.line) + ":" + std::to_string(raw.column) + ": '" +
                                              s->name + "' has arity " + std::to_string(s->arity) +
                                              " but is used without arguments");
            return Term::app(s->name);
        }
        if (!s) throw UnknownSymbolError(raw.name);
        if (s->arity != raw.args.size())
            throw ArityError(s->name, std::to_string(raw.line) + ":" + std::to_string(raw.column) + ": '" + s->name +
                                          "' has arity " + std::to_string(s->arity) + " but is applied to " +
                                          std::to_string(raw.args.size()) + " arguments");
        std::vector<Term> args;
        args.reserve(raw.args.size());
        for (const auto& a : raw.args) args.push_back(resolve(a, sig, bind));
        return Term::app(s->name, std::move(args));
    }

    static const Theory* find(const std::vector<Theory>& known, const Token& name) {
        for (const auto& t : known)
            if (t.name == name.text) return &t;
        return nullptr;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Theory parse_theory(std::string_view text) {
    Parser p(text);
    Theory t = p.theory();
    if (!p.at_end()) throw ParseError("trailing input after theory block", p.peek().line, p.peek().column);
    return t;
}

const Theory* Document::find_theory(std::string_view name) const {
    for (const auto& t : theories)
        if (t.name == name) return &t;
    return nullptr;
}

Document parse_document(std::string_view text) {
    Parser p(text);
    Document doc;
    while (!p.at_end()) {
        const Token& t = p.peek();
        if (t.kind == Tok::Ident && t.text == "theory") {
            Theory th = p.theory();
            if (doc.find_theory(th.name)) throw ParseError("theory '" + th.name + "' defined twice", t.line, t.column);
            doc.theories.push_back(std::move(th));
        } else if (t.kind == Tok::Ident && t.text == "interpret") {
            doc.interpretations.push_back(p.interpretation(doc.theories));
        } else {
            throw ParseError("expected 'theory' or 'interpret'", t.line, t.column);
        }
    }
    return doc;
}

}  // namespace eqtop
