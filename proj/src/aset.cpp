#include "abduce/aset.hpp"

#include <algorithm>
#include <sstream>

namespace abduce {

namespace {

bool is_abducible_term(Term t, const Signature& sig) {
    return !t.is_variable() && t.arity() == 0 && sig.is_abducible(t.symbol());
}

}  // namespace

ASet ASet::of(const std::vector<Literal>& literals, const Signature& sig) {
    ASet x;
    for (const auto& l : literals) x.add(l, sig);
    return x;
}

ASet::Diseq ASet::make_diseq(Term u, Term v) {
    if (u < v) std::swap(u, v);
    return {u, v};
}

SymbolId ASet::rep(SymbolId a) const {
    auto it = rep_.find(a);
    return it == rep_.end() ? a : it->second;
}

Term ASet::reduce(Term t) const {
    if (rep_.empty() || t.is_variable()) return t;
    if (t.arity() == 0) {
        auto it = rep_.find(t.symbol());
        return it == rep_.end() ? t : Term::constant(it->second);
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (Term a : t.args()) {
        Term b = reduce(a);
        changed |= a != b;
        args.push_back(b);
    }
    return changed ? Term::app(t.symbol(), args) : t;
}

Literal ASet::reduce(const Literal& l) const {
    if (rep_.empty()) return l;
    return Literal(reduce(l.lhs()), reduce(l.rhs()), l.positive());
}

Clause ASet::reduce(const Clause& c) const {
    if (rep_.empty()) return c;
    return c.map_terms([this](Term t) { return reduce(t); });
}

void ASet::add_equation(SymbolId a, SymbolId b) {
    SymbolId ra = rep(a);
    SymbolId rb = rep(b);
    if (ra == rb) return;
    // larger id = declared later = smaller in the ordering
    SymbolId keep = std::max(ra, rb);
    SymbolId drop = std::min(ra, rb);
    for (auto& [member, r] : rep_) {
        if (r == drop) r = keep;
    }
    rep_[drop] = keep;
    renormalize();
}

void ASet::insert_reduced(const Literal& l) {
    if (l.is_predicate_atom()) {
        preds_.insert(l);
    } else if (l.negative()) {
        diseqs_.insert(make_diseq(l.lhs(), l.rhs()));
    }
    // positive flat equations between identical terms are implicit
}

void ASet::renormalize() {
    auto old_diseqs = std::move(diseqs_);
    auto old_preds = std::move(preds_);
    diseqs_.clear();
    preds_.clear();
    for (const auto& [u, v] : old_diseqs) diseqs_.insert(make_diseq(reduce(u), reduce(v)));
    for (const auto& p : old_preds) preds_.insert(reduce(p));
}

void ASet::add(const Literal& l, const Signature& sig) {
    if (is_flat_term(l.lhs(), sig) && is_flat_term(l.rhs(), sig)) {
        if (l.negative()) {
            insert_reduced(reduce(l));
            return;
        }
        if (l.lhs() == l.rhs()) return;
        if (!is_abducible_term(l.lhs(), sig) || !is_abducible_term(l.rhs(), sig)) {
            throw InputError("positive equation with a variable cannot be a constraint: " + to_string(l, sig));
        }
        add_equation(l.lhs().symbol(), l.rhs().symbol());
        return;
    }
    if (!is_a_flat(l, sig)) throw InputError("not an A-flat literal: " + to_string(l, sig));
    insert_reduced(reduce(l));
}

bool ASet::contains(const Literal& l) const {
    Literal r = reduce(l);
    if (r.is_predicate_atom()) return preds_.count(r) != 0;
    if (r.positive()) return r.lhs() == r.rhs();
    return diseqs_.count(make_diseq(r.lhs(), r.rhs())) != 0;
}

bool ASet::includes(const ASet& y) const {
    for (const auto& [m, r] : y.rep_) {
        if (rep(m) != rep(r)) return false;
    }
    for (const auto& [u, v] : y.diseqs_) {
        if (!contains(Literal::neq(u, v))) return false;
    }
    return std::all_of(y.preds_.begin(), y.preds_.end(), [this](const Literal& p) { return contains(p); });
}

bool ASet::ground_consistent() const {
    for (const auto& [u, v] : diseqs_) {
        if (u == v) return false;
    }
    return std::none_of(preds_.begin(), preds_.end(),
                        [this](const Literal& p) { return preds_.count(p.complement()) != 0; });
}

void ASet::for_each_instance(const Signature& sig,
                             const std::function<bool(const Substitution&, const ASet&)>& f) const {
    std::set<VarId> var_set;
    collect_vars(var_set);
    if (var_set.empty()) {
        if (ground_consistent()) f(Substitution{}, *this);
        return;
    }
    std::vector<VarId> vars(var_set.begin(), var_set.end());

    std::vector<Term> domain;
    for (SymbolId a : sig.abducibles()) {
        if (rep(a) == a) domain.push_back(Term::constant(a));
    }
    if (domain.empty()) return;

    // disequations checked as soon as their last variable is assigned
    std::vector<std::vector<Diseq>> due(vars.size());
    for (const auto& d : diseqs_) {
        std::set<VarId> dv;
        d.first.collect_vars(dv);
        d.second.collect_vars(dv);
        if (dv.empty()) continue;
        auto last = std::lower_bound(vars.begin(), vars.end(), *dv.rbegin()) - vars.begin();
        due[static_cast<std::size_t>(last)].push_back(d);
    }

    Substitution sigma;
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (stop) return;
        if (i == vars.size()) {
            ASet inst = apply(sigma, sig);
            if (inst.ground_consistent() && !f(sigma, inst)) stop = true;
            return;
        }
        for (Term value : domain) {
            sigma.bind(vars[i], value);
            bool ok = std::all_of(due[i].begin(), due[i].end(),
                                  [&](const Diseq& d) { return sigma.apply(d.first) != sigma.apply(d.second); });
            if (ok) go(i + 1);
            if (stop) return;
        }
    };
    go(0);
}

bool ASet::satisfiable(const Signature& sig) const {
    if (!ground_consistent()) return false;
    if (is_ground()) return true;
    bool found = false;
    for_each_instance(sig, [&found](const Substitution&, const ASet&) {
        found = true;
        return false;
    });
    return found;
}

ASet ASet::unite(const ASet& other) const {
    ASet out = *this;
    for (const auto& [m, r] : other.rep_) {
        SymbolId a = out.rep(m);
        SymbolId b = out.rep(r);
        if (a == b) continue;
        SymbolId keep = std::max(a, b);
        SymbolId drop = std::min(a, b);
        for (auto& [member, rr] : out.rep_) {
            if (rr == drop) rr = keep;
        }
        out.rep_[drop] = keep;
    }
    if (out.rep_.size() != rep_.size()) out.renormalize();
    for (const auto& [u, v] : other.diseqs_) out.diseqs_.insert(make_diseq(out.reduce(u), out.reduce(v)));
    for (const auto& p : other.preds_) out.preds_.insert(out.reduce(p));
    return out;
}

ASet ASet::apply(const Substitution& s, const Signature& sig) const {
    if (s.empty() || is_ground()) return *this;
    std::set<VarId> vars;
    collect_vars(vars);
    for (VarId x : vars) {
        if (auto t = s.lookup(x); t && !t->is_variable() && !is_abducible_term(*t, sig)) {
            throw NotPure("substitution maps a constraint variable to " + to_string(*t, sig));
        }
    }
    ASet out;
    out.rep_ = rep_;
    for (const auto& [u, v] : diseqs_) out.diseqs_.insert(make_diseq(reduce(s.apply(u)), reduce(s.apply(v))));
    for (const auto& p : preds_) out.preds_.insert(reduce(abduce::apply(s, p)));
    return out;
}

ASet ASet::map_vars(const std::function<Term(VarId)>& f) const {
    if (is_ground()) return *this;
    std::function<Term(Term)> go = [&](Term t) -> Term {
        if (t.is_ground()) return t;
        if (t.is_variable()) return f(t.var());
        std::vector<Term> args;
        for (Term a : t.args()) args.push_back(go(a));
        return Term::app(t.symbol(), args);
    };
    ASet out;
    out.rep_ = rep_;
    for (const auto& [u, v] : diseqs_) out.diseqs_.insert(make_diseq(reduce(go(u)), reduce(go(v))));
    for (const auto& p : preds_) out.preds_.insert(reduce(p.map_terms(go)));
    return out;
}

ASet ASet::renamed(VarId offset) const {
    if (offset == 0) return *this;
    return map_vars([offset](VarId x) { return Term::variable(x + offset); });
}

std::vector<Literal> ASet::literals() const {
    std::vector<Literal> out;
    out.reserve(rep_.size() + diseqs_.size() + preds_.size());
    for (const auto& [m, r] : rep_) out.push_back(Literal::eq(Term::constant(m), Term::constant(r)));
    for (const auto& [u, v] : diseqs_) out.push_back(Literal::neq(u, v));
    out.insert(out.end(), preds_.begin(), preds_.end());
    return out;
}

bool ASet::is_ground() const {
    return std::all_of(diseqs_.begin(), diseqs_.end(),
                       [](const Diseq& d) { return d.first.is_ground() && d.second.is_ground(); }) &&
           std::all_of(preds_.begin(), preds_.end(), [](const Literal& p) { return p.is_ground(); });
}

VarId ASet::var_bound() const {
    VarId b = 0;
    for (const auto& [u, v] : diseqs_) b = std::max({b, u.var_bound(), v.var_bound()});
    for (const auto& p : preds_) b = std::max(b, p.var_bound());
    return b;
}

void ASet::collect_vars(std::set<VarId>& out) const {
    for (const auto& [u, v] : diseqs_) {
        u.collect_vars(out);
        v.collect_vars(out);
    }
    for (const auto& p : preds_) p.collect_vars(out);
}

unsigned ASet::weight() const {
    unsigned w = 2 * static_cast<unsigned>(rep_.size());
    for (const auto& [u, v] : diseqs_) w += u.size() + v.size();
    for (const auto& p : preds_) w += p.size();
    return w;
}

bool ASet::has_positive() const {
    return !rep_.empty() ||
           std::any_of(preds_.begin(), preds_.end(), [](const Literal& p) { return p.positive(); });
}

bool ASet::has_negative() const {
    return !diseqs_.empty() ||
           std::any_of(preds_.begin(), preds_.end(), [](const Literal& p) { return p.negative(); });
}

std::string to_string(const ASet& x, const Signature& sig) {
    std::vector<std::pair<SymbolId, SymbolId>> eqs(x.classes().begin(), x.classes().end());
    // greater abducible = smaller id
    std::sort(eqs.begin(), eqs.end(), [](const auto& p, const auto& q) {
        return std::tie(p.second, p.first) < std::tie(q.second, q.first);
    });
    std::vector<std::string> parts;
    for (const auto& [m, r] : eqs) parts.push_back(sig.name(m) + " = " + sig.name(r));
    for (auto [u, v] : x.diseqs()) {
        bool swap = !u.is_variable() && !v.is_variable() && v.symbol() < u.symbol();
        if (swap) std::swap(u, v);
        parts.push_back(to_string(u, sig) + " != " + to_string(v, sig));
    }
    for (const auto& p : x.preds()) parts.push_back(to_string(p, sig));
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
    out << '}';
    return out.str();
}

// ---------------------------------------------------------------------------
// Complete extensions

namespace {

/// Calls f on every restricted-growth string of length n.
bool for_each_rgs(std::size_t n, const std::function<bool(const std::vector<unsigned>&)>& f) {
    std::vector<unsigned> block(n, 0);
    std::function<bool(std::size_t, unsigned)> go = [&](std::size_t i, unsigned used) {
        if (i == n) return f(block);
        for (unsigned b = 0; b <= used && b < n; ++b) {
            block[i] = b;
            if (!go(i + 1, std::max(used, b + 1))) return false;
        }
        return true;
    };
    if (n == 0) return f(block);
    return go(0, 0);
}

void tuples(const std::vector<Term>& domain, unsigned arity, std::vector<Term>& prefix,
            std::vector<std::vector<Term>>& out) {
    if (prefix.size() == arity) {
        out.push_back(prefix);
        return;
    }
    for (Term d : domain) {
        prefix.push_back(d);
        tuples(domain, arity, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

void for_each_complete_extension(const ASet& x, const Signature& sig, const std::function<bool(const ASet&)>& f,
                                 std::size_t max_atoms) {
    if (!x.is_ground()) throw Error("complete extensions need a ground set");
    if (!x.ground_consistent()) return;
    const auto& abd = sig.abducibles();
    const auto preds = sig.predicates();

    for_each_rgs(abd.size(), [&](const std::vector<unsigned>& block) {
        std::map<SymbolId, unsigned> block_of;
        for (std::size_t i = 0; i < abd.size(); ++i) block_of[abd[i]] = block[i];
        for (const auto& [m, r] : x.classes()) {
            if (block_of[m] != block_of[r]) return true;
        }
        for (const auto& [u, v] : x.diseqs()) {
            if (block_of[u.symbol()] == block_of[v.symbol()]) return true;
        }

        ASet base;
        std::map<unsigned, SymbolId> first_in_block;
        for (SymbolId a : abd) {
            auto [it, fresh] = first_in_block.emplace(block_of[a], a);
            if (!fresh) base.add_equation(it->second, a);
        }
        std::vector<Term> reps;
        for (SymbolId a : abd) {
            if (base.rep(a) == a) reps.push_back(Term::constant(a));
        }
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = i + 1; j < reps.size(); ++j) base.add(Literal::neq(reps[i], reps[j]), sig);
        }

        std::vector<Term> atoms;
        for (SymbolId p : preds) {
            std::vector<std::vector<Term>> args;
            std::vector<Term> prefix;
            tuples(reps, sig.symbol(p).arity, prefix, args);
            for (const auto& a : args) atoms.push_back(Term::app(p, a));
        }
        if (atoms.size() > max_atoms) throw BoundExceeded("too many ground predicate atoms");

        // fixed valuations from x
        std::vector<int> forced(atoms.size(), -1);
        for (const auto& lit : x.preds()) {
            Literal r = base.reduce(lit);
            auto it = std::find(atoms.begin(), atoms.end(), r.lhs());
            if (it == atoms.end()) continue;
            auto k = static_cast<std::size_t>(it - atoms.begin());
            int want = r.positive() ? 1 : 0;
            if (forced[k] != -1 && forced[k] != want) return true;
            forced[k] = want;
        }

        const std::uint64_t total = std::uint64_t{1} << atoms.size();
        for (std::uint64_t bits = 0; bits < total; ++bits) {
            bool ok = true;
            for (std::size_t k = 0; k < atoms.size() && ok; ++k) {
                int v = static_cast<int>((bits >> k) & 1U);
                ok = forced[k] == -1 || forced[k] == v;
            }
            if (!ok) continue;
            ASet ext = base;
            for (std::size_t k = 0; k < atoms.size(); ++k) {
                ext.add(Literal::atom(atoms[k], ((bits >> k) & 1U) != 0), sig);
            }
            if (!f(ext)) return false;
        }
        return true;
    });
}

std::vector<ASet> complete_extensions(const ASet& x, const Signature& sig, std::size_t max_atoms) {
    std::vector<ASet> out;
    for_each_complete_extension(
        x, sig,
        [&out](const ASet& e) {
            out.push_back(e);
            return true;
        },
        max_atoms);
    return out;
}

}  // namespace abduce
