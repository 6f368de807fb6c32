#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abduce/error.hpp"

namespace abduce {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

enum class SymbolKind : std::uint8_t { function, predicate, abducible, top };

struct Symbol {
    std::string name;
    unsigned arity = 0;
    SymbolKind kind = SymbolKind::function;
};

/// Symbol table. Id 0 is always the truth constant.
///
/// Abducibles are kept in declaration order; the first declared abducible is
/// the greatest one in the term ordering, the last declared the smallest.
class Signature {
public:
    Signature();

    /// Declares a symbol, or returns the existing id when name, arity and
    /// kind agree. Throws InputError on any conflict.
    SymbolId declare(std::string_view name, unsigned arity, SymbolKind kind);

    std::optional<SymbolId> find(std::string_view name) const;
    const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
    const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
    std::size_t size() const { return symbols_.size(); }

    static constexpr SymbolId top() { return 0; }

    bool is_abducible(SymbolId id) const { return symbols_.at(id).kind == SymbolKind::abducible; }
    bool is_predicate(SymbolId id) const { return symbols_.at(id).kind == SymbolKind::predicate; }

    const std::vector<SymbolId>& abducibles() const { return abducibles_; }
    std::vector<SymbolId> predicates() const;

    /// Position of an abducible in declaration order.
    std::size_t abducible_index(SymbolId id) const { return abducible_index_.at(id); }

    /// True iff abducible a is smaller than abducible b in the term ordering.
    bool abducible_less(SymbolId a, SymbolId b) const {
        return abducible_index(a) > abducible_index(b);
    }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<std::string, SymbolId> by_name_;
    std::vector<SymbolId> abducibles_;
    std::unordered_map<SymbolId, std::size_t> abducible_index_;
};

namespace detail {
struct TermNode;
}

/// Immutable, perfectly shared first-order term.
///
/// Terms live in a process-wide append-only store; two terms are equal iff
/// they are the same node. Ordering operators are structural (never pointer
/// based) so containers of terms iterate deterministically.
class Term {
public:
    Term() = default;

    static Term variable(VarId index);
    static Term constant(SymbolId symbol);
    static Term app(SymbolId symbol, std::span<const Term> args);
    static Term app(SymbolId symbol, std::initializer_list<Term> args) {
        return app(symbol, std::span<const Term>(args.begin(), args.size()));
    }

    bool is_null() const { return node_ == nullptr; }
    bool is_variable() const;
    VarId var() const;
    SymbolId symbol() const;
    std::span<const Term> args() const;
    std::size_t arity() const { return args().size(); }

    bool is_ground() const;
    /// Number of symbol and variable occurrences.
    unsigned size() const;
    /// One more than the largest variable index occurring, 0 if ground.
    VarId var_bound() const;
    std::size_t hash() const;

    bool occurs(VarId x) const;
    void collect_vars(std::set<VarId>& out) const;

    friend bool operator==(Term a, Term b) { return a.node_ == b.node_; }
    friend bool operator!=(Term a, Term b) { return a.node_ != b.node_; }

    /// Structural total order: variables before applications, then by index
    /// or symbol, then arguments lexicographically.
    friend int compare(Term a, Term b);
    friend bool operator<(Term a, Term b) { return compare(a, b) < 0; }

private:
    explicit Term(const detail::TermNode* node) : node_(node) {}
    const detail::TermNode* node_ = nullptr;
};

struct TermHash {
    std::size_t operator()(Term t) const { return t.hash(); }
};

/// Positions are 1-based argument index paths; the empty path is the root.
using Position = std::vector<unsigned>;

Term subterm_at(Term t, std::span<const unsigned> p);
Term replace_at(Term t, std::span<const unsigned> p, Term replacement);

/// All positions of t in prefix order.
std::vector<Position> positions(Term t);

/// Finite map from variables to terms; identity bindings are never stored.
class Substitution {
public:
    Substitution() = default;

    void bind(VarId x, Term t);
    std::optional<Term> lookup(VarId x) const;
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<VarId, Term>& bindings() const { return map_; }

    /// Applies the bindings once (no chasing). Idempotent substitutions are
    /// what the unifier produces, so a single pass suffices there.
    Term apply(Term t) const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<VarId, Term> map_;
};

Term rename(Term t, VarId offset);

/// (Dis)equation. Stored oriented: the truth constant is always on the right,
/// otherwise the structurally greater side is on the left.
class Literal {
public:
    Literal() = default;
    Literal(Term lhs, Term rhs, bool positive);

    static Literal eq(Term a, Term b) { return Literal(a, b, true); }
    static Literal neq(Term a, Term b) { return Literal(a, b, false); }
    /// p(args) = T (positive) or p(args) != T.
    static Literal atom(Term predicate_term, bool positive);

    Term lhs() const { return lhs_; }
    Term rhs() const { return rhs_; }
    bool positive() const { return positive_; }
    bool negative() const { return !positive_; }

    /// p(t) ~ T with p a predicate symbol.
    bool is_predicate_atom() const;
    Literal complement() const { return Literal(lhs_, rhs_, !positive_); }

    bool is_ground() const { return lhs_.is_ground() && rhs_.is_ground(); }
    unsigned size() const { return lhs_.size() + rhs_.size(); }
    VarId var_bound() const { return std::max(lhs_.var_bound(), rhs_.var_bound()); }
    void collect_vars(std::set<VarId>& out) const;

    Literal map_terms(const std::function<Term(Term)>& f) const {
        return Literal(f(lhs_), f(rhs_), positive_);
    }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend int compare(const Literal& a, const Literal& b);
    friend bool operator<(const Literal& a, const Literal& b) { return compare(a, b) < 0; }

private:
    Term lhs_;
    Term rhs_;
    bool positive_ = true;
};

/// Finite multiset of literals, kept sorted. Duplicate literals are merged and
/// T != T literals dropped on construction.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Literal> literals);

    const std::vector<Literal>& literals() const { return literals_; }
    std::size_t size() const { return literals_.size(); }
    bool empty() const { return literals_.empty(); }
    auto begin() const { return literals_.begin(); }
    auto end() const { return literals_.end(); }
    const Literal& operator[](std::size_t i) const { return literals_[i]; }

    bool is_ground() const;
    VarId var_bound() const;
    std::set<VarId> vars() const;
    unsigned weight() const;

    /// Contains T = T, or some t = t.
    bool has_trivial_literal() const;

    /// Literal-wise complement as unit clauses.
    std::vector<Clause> complement() const;

    Clause without(std::size_t index) const;
    Clause map_terms(const std::function<Term(Term)>& f) const;

    friend bool operator==(const Clause&, const Clause&) = default;
    friend bool operator<(const Clause& a, const Clause& b) { return a.literals_ < b.literals_; }

private:
    std::vector<Literal> literals_;
};

Literal rename(const Literal& l, VarId offset);
Clause rename(const Clause& c, VarId offset);
Literal apply(const Substitution& s, const Literal& l);
Clause apply(const Substitution& s, const Clause& c);

enum class Flatness { a_flat, elementary, neither };

/// True iff t is a variable or an abducible constant.
bool is_flat_term(Term t, const Signature& sig);
bool is_a_flat(const Literal& l, const Signature& sig);
bool is_a_flat(const Clause& c, const Signature& sig);
Flatness classify(const Clause& c, const Signature& sig);

/// Only negative literals are negated predicate atoms.
bool is_quasi_positive(const Clause& c);

/// Predicate-headed term ("boolean" term).
bool is_boolean(Term t, const Signature& sig);

std::string to_string(Term t, const Signature& sig);
std::string to_string(const Literal& l, const Signature& sig);
std::string to_string(const Clause& c, const Signature& sig);

}  // namespace abduce

template <>
struct std::hash<abduce::Term> {
    std::size_t operator()(abduce::Term t) const noexcept { return t.hash(); }
};
