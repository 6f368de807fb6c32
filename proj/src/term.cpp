#include "abduce/term.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace abduce {

// ---------------------------------------------------------------------------
// Signature

Signature::Signature() {
    symbols_.push_back(Symbol{"$true", 0, SymbolKind::top});
    by_name_.emplace("$true", 0);
}

SymbolId Signature::declare(std::string_view name, unsigned arity, SymbolKind kind) {
    if (kind == SymbolKind::top) {
        throw InputError("the truth constant cannot be redeclared");
    }
    if (kind == SymbolKind::abducible && arity != 0) {
        throw InputError("abducible '" + std::string(name) + "' must be a constant");
    }
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
        const Symbol& s = symbols_[it->second];
        if (s.arity != arity) {
            throw InputError("arity conflict for '" + std::string(name) + "': " +
                             std::to_string(s.arity) + " vs " + std::to_string(arity));
        }
        if (s.kind != kind) {
            throw InputError("symbol '" + std::string(name) + "' declared with two different kinds");
        }
        return it->second;
    }
    auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{std::string(name), arity, kind});
    by_name_.emplace(std::string(name), id);
    if (kind == SymbolKind::abducible) {
        abducible_index_.emplace(id, abducibles_.size());
        abducibles_.push_back(id);
    }
    return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
    return std::nullopt;
}

std::vector<SymbolId> Signature::predicates() const {
    std::vector<SymbolId> out;
    for (SymbolId i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].kind == SymbolKind::predicate) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Term store

namespace detail {

struct TermNode {
    bool var;
    std::uint32_t tag;  // variable index or symbol id
    std::vector<Term> args;
    std::size_t hash;
    unsigned size;
    VarId var_bound;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct NodeKeyHash {
    using is_transparent = void;
    std::size_t operator()(const std::unique_ptr<TermNode>& n) const { return n->hash; }
    std::size_t operator()(const TermNode* n) const { return n->hash; }
};

struct NodeKeyEq {
    using is_transparent = void;
    static bool same(const TermNode& a, const TermNode& b) {
        return a.var == b.var && a.tag == b.tag && a.args == b.args;
    }
    bool operator()(const std::unique_ptr<TermNode>& a, const std::unique_ptr<TermNode>& b) const {
        return same(*a, *b);
    }
    bool operator()(const TermNode* a, const std::unique_ptr<TermNode>& b) const { return same(*a, *b); }
    bool operator()(const std::unique_ptr<TermNode>& a, const TermNode* b) const { return same(*a, *b); }
};

class TermStore {
public:
    const TermNode* intern(TermNode&& probe) {
        std::lock_guard lock(mutex_);
        if (auto it = nodes_.find(&probe); it != nodes_.end()) return it->get();
        auto node = std::make_unique<TermNode>(std::move(probe));
        const TermNode* raw = node.get();
        nodes_.insert(std::move(node));
        return raw;
    }

    static TermStore& instance() {
        static TermStore store;
        return store;
    }

private:
    std::mutex mutex_;
    std::unordered_set<std::unique_ptr<TermNode>, NodeKeyHash, NodeKeyEq> nodes_;
};

}  // namespace
}  // namespace detail

Term Term::variable(VarId index) {
    detail::TermNode probe{true, index, {}, detail::mix(0x51ed27, index), 1, index + 1};
    return Term(detail::TermStore::instance().intern(std::move(probe)));
}

Term Term::constant(SymbolId symbol) { return app(symbol, std::span<const Term>{}); }

Term Term::app(SymbolId symbol, std::span<const Term> args) {
    detail::TermNode probe{false, symbol, std::vector<Term>(args.begin(), args.end()), 0, 1, 0};
    std::size_t h = detail::mix(0xabc0de, symbol);
    for (Term a : args) {
        h = detail::mix(h, a.hash());
        probe.size += a.size();
        probe.var_bound = std::max(probe.var_bound, a.var_bound());
    }
    probe.hash = h;
    return Term(detail::TermStore::instance().intern(std::move(probe)));
}

bool Term::is_variable() const { return node_->var; }

VarId Term::var() const { return node_->tag; }

SymbolId Term::symbol() const { return node_->tag; }

std::span<const Term> Term::args() const { return node_->args; }

bool Term::is_ground() const { return node_->var_bound == 0; }

unsigned Term::size() const { return node_->size; }

VarId Term::var_bound() const { return node_->var_bound; }

std::size_t Term::hash() const { return node_->hash; }

bool Term::occurs(VarId x) const {
    if (x >= var_bound()) return false;
    if (is_variable()) return var() == x;
    return std::any_of(node_->args.begin(), node_->args.end(), [x](Term a) { return a.occurs(x); });
}

void Term::collect_vars(std::set<VarId>& out) const {
    if (is_ground()) return;
    if (is_variable()) {
        out.insert(var());
        return;
    }
    for (Term a : node_->args) a.collect_vars(out);
}

int compare(Term a, Term b) {
    if (a == b) return 0;
    if (a.is_variable() != b.is_variable()) return a.is_variable() ? -1 : 1;
    if (a.node_->tag != b.node_->tag) return a.node_->tag < b.node_->tag ? -1 : 1;
    auto aa = a.args();
    auto ba = b.args();
    if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
    for (std::size_t i = 0; i < aa.size(); ++i) {
        if (int c = compare(aa[i], ba[i]); c != 0) return c;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Positions

Term subterm_at(Term t, std::span<const unsigned> p) {
    for (unsigned i : p) {
        if (t.is_variable() || i == 0 || i > t.arity()) {
            throw InvalidPosition("position does not occur in term");
        }
        t = t.args()[i - 1];
    }
    return t;
}

Term replace_at(Term t, std::span<const unsigned> p, Term replacement) {
    if (p.empty()) return replacement;
    unsigned i = p.front();
    if (t.is_variable() || i == 0 || i > t.arity()) {
        throw InvalidPosition("position does not occur in term");
    }
    std::vector<Term> args(t.args().begin(), t.args().end());
    args[i - 1] = replace_at(args[i - 1], p.subspan(1), replacement);
    return Term::app(t.symbol(), args);
}

namespace {
void collect_positions(Term t, Position& prefix, std::vector<Position>& out) {
    out.push_back(prefix);
    if (t.is_variable()) return;
    for (unsigned i = 0; i < t.arity(); ++i) {
        prefix.push_back(i + 1);
        collect_positions(t.args()[i], prefix, out);
        prefix.pop_back();
    }
}
}  // namespace

std::vector<Position> positions(Term t) {
    std::vector<Position> out;
    Position prefix;
    collect_positions(t, prefix, out);
    return out;
}

// ---------------------------------------------------------------------------
// Substitutions

void Substitution::bind(VarId x, Term t) {
    if (t.is_variable() && t.var() == x) {
        map_.erase(x);
        return;
    }
    map_[x] = t;
}

std::optional<Term> Substitution::lookup(VarId x) const {
    if (auto it = map_.find(x); it != map_.end()) return it->second;
    return std::nullopt;
}

Term Substitution::apply(Term t) const {
    if (t.is_ground() || map_.empty()) return t;
    if (t.is_variable()) {
        auto it = map_.find(t.var());
        return it == map_.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (Term a : t.args()) {
        Term b = apply(a);
        changed |= (a != b);
        args.push_back(b);
    }
    return changed ? Term::app(t.symbol(), args) : t;
}

Term rename(Term t, VarId offset) {
    if (t.is_ground() || offset == 0) return t;
    if (t.is_variable()) return Term::variable(t.var() + offset);
    std::vector<Term> args;
    args.reserve(t.arity());
    for (Term a : t.args()) args.push_back(rename(a, offset));
    return Term::app(t.symbol(), args);
}

// ---------------------------------------------------------------------------
// Literals and clauses

namespace {
bool is_top(Term t) { return !t.is_variable() && t.symbol() == Signature::top(); }
}  // namespace

Literal::Literal(Term lhs, Term rhs, bool positive) : lhs_(lhs), rhs_(rhs), positive_(positive) {
    if (is_top(lhs_) && !is_top(rhs_)) {
        std::swap(lhs_, rhs_);
    } else if (!is_top(rhs_) && compare(lhs_, rhs_) < 0) {
        std::swap(lhs_, rhs_);
    }
}

Literal Literal::atom(Term predicate_term, bool positive) {
    return Literal(predicate_term, Term::constant(Signature::top()), positive);
}

bool Literal::is_predicate_atom() const { return is_top(rhs_) && !is_top(lhs_); }

void Literal::collect_vars(std::set<VarId>& out) const {
    lhs_.collect_vars(out);
    rhs_.collect_vars(out);
}

int compare(const Literal& a, const Literal& b) {
    if (int c = compare(a.lhs_, b.lhs_); c != 0) return c;
    if (int c = compare(a.rhs_, b.rhs_); c != 0) return c;
    if (a.positive_ != b.positive_) return a.positive_ ? -1 : 1;
    return 0;
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::erase_if(literals_, [](const Literal& l) {
        return l.negative() && is_top(l.lhs()) && is_top(l.rhs());
    });
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Clause::is_ground() const {
    return std::all_of(literals_.begin(), literals_.end(), [](const Literal& l) { return l.is_ground(); });
}

VarId Clause::var_bound() const {
    VarId b = 0;
    for (const auto& l : literals_) b = std::max(b, l.var_bound());
    return b;
}

std::set<VarId> Clause::vars() const {
    std::set<VarId> out;
    for (const auto& l : literals_) l.collect_vars(out);
    return out;
}

unsigned Clause::weight() const {
    unsigned w = 0;
    for (const auto& l : literals_) w += l.size();
    return w;
}

bool Clause::has_trivial_literal() const {
    return std::any_of(literals_.begin(), literals_.end(),
                       [](const Literal& l) { return l.positive() && l.lhs() == l.rhs(); });
}

std::vector<Clause> Clause::complement() const {
    std::vector<Clause> out;
    out.reserve(literals_.size());
    for (const auto& l : literals_) out.emplace_back(std::vector<Literal>{l.complement()});
    return out;
}

Clause Clause::without(std::size_t index) const {
    std::vector<Literal> rest;
    rest.reserve(literals_.size());
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i != index) rest.push_back(literals_[i]);
    }
    return Clause(std::move(rest));
}

Clause Clause::map_terms(const std::function<Term(Term)>& f) const {
    std::vector<Literal> out;
    out.reserve(literals_.size());
    for (const auto& l : literals_) out.push_back(l.map_terms(f));
    return Clause(std::move(out));
}

Literal rename(const Literal& l, VarId offset) {
    return Literal(rename(l.lhs(), offset), rename(l.rhs(), offset), l.positive());
}

Clause rename(const Clause& c, VarId offset) {
    if (offset == 0) return c;
    return c.map_terms([offset](Term t) { return rename(t, offset); });
}

Literal apply(const Substitution& s, const Literal& l) {
    return Literal(s.apply(l.lhs()), s.apply(l.rhs()), l.positive());
}

Clause apply(const Substitution& s, const Clause& c) {
    if (s.empty()) return c;
    return c.map_terms([&s](Term t) { return s.apply(t); });
}

// ---------------------------------------------------------------------------
// Classification

bool is_flat_term(Term t, const Signature& sig) {
    return t.is_variable() || (t.arity() == 0 && sig.is_abducible(t.symbol()));
}

bool is_boolean(Term t, const Signature& sig) {
    return !t.is_variable() && sig.is_predicate(t.symbol());
}

bool is_a_flat(const Literal& l, const Signature& sig) {
    if (is_flat_term(l.lhs(), sig) && is_flat_term(l.rhs(), sig)) return true;
    if (!l.is_predicate_atom() || !is_boolean(l.lhs(), sig)) return false;
    auto args = l.lhs().args();
    return std::all_of(args.begin(), args.end(), [&sig](Term a) { return is_flat_term(a, sig); });
}

bool is_a_flat(const Clause& c, const Signature& sig) {
    return std::all_of(c.begin(), c.end(), [&sig](const Literal& l) { return is_a_flat(l, sig); });
}

Flatness classify(const Clause& c, const Signature& sig) {
    if (!is_a_flat(c, sig)) return Flatness::neither;
    bool predicate_free = std::none_of(c.begin(), c.end(), [](const Literal& l) { return l.is_predicate_atom(); });
    return predicate_free ? Flatness::elementary : Flatness::a_flat;
}

bool is_quasi_positive(const Clause& c) {
    return std::all_of(c.begin(), c.end(), [](const Literal& l) { return l.positive() || l.is_predicate_atom(); });
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(Term t, const Signature& sig) {
    if (t.is_variable()) return "X" + std::to_string(t.var());
    std::string out = sig.name(t.symbol());
    if (t.arity() == 0) return out;
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ',';
        out += to_string(t.args()[i], sig);
    }
    out += ')';
    return out;
}

std::string to_string(const Literal& l, const Signature& sig) {
    if (l.is_predicate_atom()) return (l.positive() ? "" : "~") + to_string(l.lhs(), sig);
    return to_string(l.lhs(), sig) + (l.positive() ? " = " : " != ") + to_string(l.rhs(), sig);
}

std::string to_string(const Clause& c, const Signature& sig) {
    if (c.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += " | ";
        out += to_string(c[i], sig);
    }
    return out;
}

}  // namespace abduce
