#include "abduce/problem.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "abduce/calculus.hpp"
#include "abduce/error.hpp"

namespace abduce {

namespace {

struct Token {
    enum Kind { ident, punct, end } kind = end;
    std::string text;
    unsigned line = 0;
    unsigned column = 0;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    unsigned line = 1;
    unsigned col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_char(c) && c != '\'') {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Token::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '!' && i + 1 < src.size() && src[i + 1] == '=') {
            t.kind = Token::punct;
            t.text = "!=";
            advance(2);
        } else if (std::string_view("(),;|=~/[]").find(c) != std::string_view::npos) {
            t.kind = Token::punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw InputError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token e;
    e.line = line;
    e.column = col;
    out.push_back(e);
    return out;
}

struct RawTerm {
    std::string name;
    unsigned line = 0;
    unsigned column = 0;
    std::vector<RawTerm> args;
};

struct RawLit {
    RawTerm lhs;
    std::optional<RawTerm> rhs;  // empty: predicate atom
    bool positive = true;
};

struct RawDecl {
    std::string name;
    unsigned arity = 0;
    SymbolKind kind = SymbolKind::function;
    unsigned line = 0;
    unsigned column = 0;
};

struct RawProblem {
    std::vector<RawDecl> abducibles;
    std::vector<RawDecl> decls;
    std::vector<std::vector<RawLit>> clauses;
    std::map<std::string, unsigned> weights;
    std::vector<std::string> precedence;
};

bool is_variable_name(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])) != 0; }

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    RawProblem parse() {
        while (peek().kind != Token::end) statement();
        return std::move(out_);
    }

    std::vector<RawLit> lone_clause() {
        auto lits = clause();
        accept(";");
        if (peek().kind != Token::end) fail("trailing input after clause", peek());
        return lits;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what, const Token& at) const {
        throw InputError(what, at.line, at.column);
    }

    bool accept(const std::string& punct) {
        if (peek().kind == Token::punct && peek().text == punct) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(const std::string& punct) {
        if (!accept(punct)) {
            fail("expected '" + punct + "'" + (peek().kind == Token::end ? " before end of input" : ", got '" + peek().text + "'"),
                 peek());
        }
    }

    Token identifier(const char* what) {
        if (peek().kind != Token::ident) fail(std::string("expected ") + what, peek());
        return next();
    }

    unsigned number() {
        Token t = identifier("a number");
        for (char c : t.text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number, got '" + t.text + "'", t);
        }
        try {
            return static_cast<unsigned>(std::stoul(t.text));
        } catch (const std::exception&) {
            fail("number out of range", t);
        }
    }

    Token symbol_name() {
        Token t = identifier("a symbol name");
        if (is_variable_name(t.text)) fail("'" + t.text + "' is a variable name, not a symbol", t);
        return t;
    }

    void statement() {
        Token kw = identifier("a statement keyword");
        const std::string& k = kw.text;
        if (k == "abducibles" || k == "abducible") {
            do {
                Token t = symbol_name();
                out_.abducibles.push_back({t.text, 0, SymbolKind::abducible, t.line, t.column});
            } while (accept(","));
        } else if (k == "predicate" || k == "predicates" || k == "function" || k == "functions") {
            SymbolKind kind = k[0] == 'p' ? SymbolKind::predicate : SymbolKind::function;
            do {
                Token t = symbol_name();
                expect("/");
                unsigned arity = number();
                out_.decls.push_back({t.text, arity, kind, t.line, t.column});
            } while (accept(","));
        } else if (k == "weight") {
            Token t = symbol_name();
            expect("=");
            unsigned w = number();
            if (!out_.weights.emplace(t.text, w).second) fail("weight of '" + t.text + "' given twice", t);
        } else if (k == "precedence") {
            do {
                out_.precedence.push_back(symbol_name().text);
            } while (accept(","));
        } else if (k == "clause") {
            out_.clauses.push_back(clause());
        } else {
            fail("unknown statement '" + k + "'", kw);
        }
        expect(";");
    }

    std::vector<RawLit> clause() {
        std::vector<RawLit> lits;
        if (accept("[")) {
            expect("]");
            return lits;
        }
        do {
            lits.push_back(literal());
        } while (accept("|"));
        return lits;
    }

    RawLit literal() {
        RawLit l;
        if (accept("~")) {
            l.lhs = term();
            l.positive = false;
            return l;
        }
        l.lhs = term();
        if (accept("=")) {
            l.rhs = term();
        } else if (accept("!=")) {
            l.rhs = term();
            l.positive = false;
        }
        return l;
    }

    RawTerm term() {
        Token t = identifier("a term");
        RawTerm r{t.text, t.line, t.column, {}};
        if (accept("(")) {
            do {
                r.args.push_back(term());
            } while (accept(","));
            expect(")");
        }
        return r;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    RawProblem out_;
};

/// Declares through the signature, attaching a source position to conflicts.
SymbolId declare_at(Signature& sig, const std::string& name, unsigned arity, SymbolKind kind, unsigned line,
                    unsigned column) {
    try {
        return sig.declare(name, arity, kind);
    } catch (const InputError& e) {
        throw InputError(e.what(), line, column);
    }
}

class Builder {
public:
    explicit Builder(Signature& sig) : sig_(sig) {}

    void infer_predicates(const std::vector<RawLit>& lits) {
        for (const auto& l : lits) {
            if (l.rhs || is_variable_name(l.lhs.name) || sig_.find(l.lhs.name)) continue;
            declare_at(sig_, l.lhs.name, static_cast<unsigned>(l.lhs.args.size()), SymbolKind::predicate,
                       l.lhs.line, l.lhs.column);
        }
    }

    void infer_functions(const RawTerm& t) {
        if (is_variable_name(t.name)) return;
        if (!sig_.find(t.name)) {
            declare_at(sig_, t.name, static_cast<unsigned>(t.args.size()), SymbolKind::function, t.line, t.column);
        }
        for (const auto& a : t.args) infer_functions(a);
    }

    void infer_functions(const std::vector<RawLit>& lits) {
        for (const auto& l : lits) {
            if (l.rhs) {
                infer_functions(l.lhs);
                infer_functions(*l.rhs);
            } else {
                for (const auto& a : l.lhs.args) infer_functions(a);
            }
        }
    }

    Clause clause(const std::vector<RawLit>& lits) {
        vars_.clear();
        std::vector<Literal> out;
        for (const auto& l : lits) {
            if (!l.rhs) {
                out.push_back(Literal::atom(atom(l.lhs), l.positive));
                continue;
            }
            Term a = term(l.lhs);
            Term b = term(*l.rhs);
            out.emplace_back(a, b, l.positive);
        }
        return Clause(std::move(out));
    }

private:
    Term atom(const RawTerm& t) {
        if (is_variable_name(t.name)) throw InputError("a variable cannot stand as a literal", t.line, t.column);
        SymbolId id = *sig_.find(t.name);
        if (!sig_.is_predicate(id)) {
            throw InputError("'" + t.name + "' is not a predicate; write an equation", t.line, t.column);
        }
        check_arity(id, t);
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(term(a));
        return Term::app(id, args);
    }

    Term term(const RawTerm& t) {
        if (is_variable_name(t.name)) {
            if (!t.args.empty()) throw InputError("variable '" + t.name + "' applied to arguments", t.line, t.column);
            auto [it, fresh] = vars_.emplace(t.name, static_cast<VarId>(vars_.size()));
            return Term::variable(it->second);
        }
        SymbolId id = *sig_.find(t.name);
        if (sig_.is_predicate(id)) {
            throw InputError("predicate '" + t.name + "' used as a term (below a function or inside an equation)",
                             t.line, t.column);
        }
        check_arity(id, t);
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(term(a));
        return Term::app(id, args);
    }

    void check_arity(SymbolId id, const RawTerm& t) const {
        if (sig_.symbol(id).arity != t.args.size()) {
            throw InputError("arity conflict for '" + t.name + "': declared " + std::to_string(sig_.symbol(id).arity) +
                                 ", used with " + std::to_string(t.args.size()),
                             t.line, t.column);
        }
    }

    Signature& sig_;
    std::map<std::string, VarId> vars_;
};

/// Renumbers variables by first occurrence in the printed clause, until the
/// numbering no longer moves literals around.
// Renaming by first occurrence can reorder the literals and so need another
// pass; it may also cycle, in which case the least clause of the cycle wins.
Clause normalize_vars(Clause c) {
    std::vector<Clause> seen{c};
    for (;;) {
        AClause a;
        a.clause = seen.back();
        Clause next = canonical_vars(std::move(a)).clause;
        auto hit = std::find(seen.begin(), seen.end(), next);
        if (hit != seen.end()) return *std::min_element(hit, seen.end());
        seen.push_back(std::move(next));
    }
}

}  // namespace

OrderingConfig Problem::ordering_config() const {
    if (weights.empty() && precedence.empty()) return OrderingConfig::defaults(sig);
    return OrderingConfig::from_user(sig, weights, precedence);
}

Problem parse_problem(std::string_view text) {
    RawProblem raw = Parser(lex(text)).parse();
    Problem p;
    for (const auto& d : raw.abducibles) declare_at(p.sig, d.name, 0, SymbolKind::abducible, d.line, d.column);
    for (const auto& d : raw.decls) declare_at(p.sig, d.name, d.arity, d.kind, d.line, d.column);
    Builder b(p.sig);
    for (const auto& c : raw.clauses) b.infer_predicates(c);
    for (const auto& c : raw.clauses) b.infer_functions(c);
    for (const auto& c : raw.clauses) p.clauses.push_back(normalize_vars(b.clause(c)));
    p.weights = std::move(raw.weights);
    p.precedence = std::move(raw.precedence);
    return p;
}

Clause parse_clause(std::string_view text, const Signature& sig) {
    auto lits = Parser(lex(text)).lone_clause();
    Signature copy = sig;
    Builder b(copy);
    b.infer_predicates(lits);
    b.infer_functions(lits);
    if (copy.size() != sig.size()) {
        throw InputError("undeclared symbol '" + copy.name(static_cast<SymbolId>(sig.size())) + "'");
    }
    return normalize_vars(b.clause(lits));
}

std::string render_problem(const Problem& p) {
    std::ostringstream out;
    const Signature& sig = p.sig;
    if (!sig.abducibles().empty()) {
        out << "abducibles ";
        for (std::size_t i = 0; i < sig.abducibles().size(); ++i) {
            out << (i ? ", " : "") << sig.name(sig.abducibles()[i]);
        }
        out << ";\n";
    }
    for (SymbolId id = 1; id < sig.size(); ++id) {
        const Symbol& s = sig.symbol(id);
        if (s.kind == SymbolKind::abducible) continue;
        out << (s.kind == SymbolKind::predicate ? "predicate " : "function ") << s.name << '/' << s.arity << ";\n";
    }
    for (const auto& [name, w] : p.weights) out << "weight " << name << " = " << w << ";\n";
    if (!p.precedence.empty()) {
        out << "precedence ";
        for (std::size_t i = 0; i < p.precedence.size(); ++i) out << (i ? ", " : "") << p.precedence[i];
        out << ";\n";
    }
    for (const auto& c : p.clauses) out << "clause " << to_string(c, sig) << ";\n";
    return out.str();
}

}  // namespace abduce
