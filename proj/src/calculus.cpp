#include "abduce/calculus.hpp"

#include <algorithm>
#include <functional>

namespace abduce {

namespace {

bool is_top(Term t) { return !t.is_variable() && t.symbol() == Signature::top(); }

bool is_abducible_term(Term t, const Signature& sig) {
    return !t.is_variable() && t.arity() == 0 && sig.is_abducible(t.symbol());
}

void term_vars_in_order(Term t, std::vector<VarId>& order, std::set<VarId>& seen) {
    if (t.is_ground()) return;
    if (t.is_variable()) {
        if (seen.insert(t.var()).second) order.push_back(t.var());
        return;
    }
    for (Term a : t.args()) term_vars_in_order(a, order, seen);
}

AClause renamed(const AClause& c, VarId offset) {
    if (offset == 0) return c;
    AClause out = c;
    out.clause = rename(c.clause, offset);
    out.constraint = c.constraint.renamed(offset);
    return out;
}

std::vector<Literal> rest_of(const Clause& c, std::size_t skip) {
    std::vector<Literal> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != skip) out.push_back(c[i]);
    }
    return out;
}

std::vector<Literal> instantiate(const Substitution& s, std::vector<Literal> lits) {
    for (auto& l : lits) l = apply(s, l);
    return lits;
}

/// Both orientations of a literal's sides, the truth constant never first.
std::vector<std::pair<Term, Term>> orientations(const Literal& l) {
    std::vector<std::pair<Term, Term>> out;
    if (!is_top(l.lhs())) out.emplace_back(l.lhs(), l.rhs());
    if (l.lhs() != l.rhs() && !is_top(l.rhs())) out.emplace_back(l.rhs(), l.lhs());
    return out;
}

bool may_unify_heads(Term a, Term b, const Signature& sig) {
    if (a.is_variable() || b.is_variable()) return true;
    if (a.symbol() == b.symbol()) return true;
    return is_abducible_term(a, sig) && is_abducible_term(b, sig);
}

}  // namespace

AClause canonical_vars(AClause c) {
    std::vector<VarId> order;
    std::set<VarId> seen;
    for (const auto& l : c.clause) {
        term_vars_in_order(l.lhs(), order, seen);
        term_vars_in_order(l.rhs(), order, seen);
    }
    for (const auto& l : c.constraint.literals()) {
        term_vars_in_order(l.lhs(), order, seen);
        term_vars_in_order(l.rhs(), order, seen);
    }
    bool identity = true;
    for (std::size_t i = 0; i < order.size(); ++i) identity &= order[i] == i;
    if (identity) return c;
    std::map<VarId, VarId> to;
    Substitution s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        to[order[i]] = static_cast<VarId>(i);
        s.bind(order[i], Term::variable(static_cast<VarId>(i)));
    }
    c.clause = apply(s, c.clause);
    c.constraint = c.constraint.map_vars([&to](VarId x) { return Term::variable(to.at(x)); });
    return c;
}

std::string to_string(const AClause& c, const Signature& sig) {
    return "[" + to_string(c.clause, sig) + " | " + to_string(c.constraint, sig) + "]";
}

Calculus::Calculus(const Ordering& ordering, CalculusOptions options) : ord_(&ordering), opts_(std::move(options)) {}

bool Calculus::blocked(const Literal& instantiated) const {
    return opts_.restricted && is_a_flat(instantiated, signature());
}

bool Calculus::pure(const Substitution& s, const ASet& x) const {
    if (x.is_ground() || s.empty()) return true;
    std::set<VarId> vars;
    x.collect_vars(vars);
    for (VarId v : vars) {
        if (auto t = s.lookup(v); t && !t->is_variable() && !is_abducible_term(*t, signature())) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Superposition

std::vector<AClause> Calculus::superposition_at(const AClause& from, const AClause& into, std::size_t into_lit,
                                                int side, const Position& pos) const {
    std::vector<AClause> out;
    const Signature& sig = signature();
    const Literal& lit = into.clause[into_lit];
    const Term t = side == 0 ? lit.lhs() : lit.rhs();
    const Term s = side == 0 ? lit.rhs() : lit.lhs();
    const Term target = subterm_at(t, pos);
    if (is_top(target)) return out;
    if (target.is_variable()) {
        std::set<VarId> cv;
        into.constraint.collect_vars(cv);
        if (cv.count(target.var()) == 0) return out;
    }

    const auto from_sel = ord_->select(from.clause);
    for (std::size_t j : from_sel) {
        const Literal& eq = from.clause[j];
        if (eq.negative()) continue;
        for (const auto& [u, v] : orientations(eq)) {
            if (!may_unify_heads(u, target, sig)) continue;
            auto r = unify(u, target, sig);
            if (!r) continue;
            const Substitution& sigma = r.unifier.sigma;
            if (!pure(sigma, into.constraint) || !pure(sigma, from.constraint)) continue;

            Term us = sigma.apply(u);
            Term vs = sigma.apply(v);
            Term ts = sigma.apply(t);
            Term ss = sigma.apply(s);
            if (ord_->geq_a(vs, us) || ord_->geq_a(ss, ts)) continue;

            Literal lit_s = apply(sigma, lit);
            Literal eq_s = apply(sigma, eq);
            if (blocked(lit_s) || blocked(eq_s)) continue;
            if (!ord_->is_selected(apply(sigma, into.clause), lit_s)) continue;
            if (!ord_->is_selected(apply(sigma, from.clause), eq_s)) continue;

            std::vector<Literal> lits = instantiate(sigma, rest_of(into.clause, into_lit));
            auto d = instantiate(sigma, rest_of(from.clause, j));
            lits.insert(lits.end(), d.begin(), d.end());
            lits.emplace_back(sigma.apply(replace_at(t, pos, v)), ss, lit.positive());

            AClause c;
            c.clause = Clause(std::move(lits));
            c.constraint = into.constraint.unite(from.constraint).unite(r.unifier.equations).apply(sigma, sig);
            c.rule = "superposition";
            c.parents = {from.id, into.id};
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<AClause> Calculus::superposition(const AClause& from, const AClause& into) const {
    std::vector<AClause> out;
    if (std::none_of(from.clause.begin(), from.clause.end(), [](const Literal& l) { return l.positive(); })) {
        return out;
    }
    for (std::size_t i : ord_->select(into.clause)) {
        const Literal& lit = into.clause[i];
        for (int side = 0; side < 2; ++side) {
            Term t = side == 0 ? lit.lhs() : lit.rhs();
            if (is_top(t) || (side == 1 && lit.lhs() == lit.rhs())) continue;
            for (const auto& p : positions(t)) {
                auto part = superposition_at(from, into, i, side, p);
                std::move(part.begin(), part.end(), std::back_inserter(out));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unary rules

std::vector<AClause> Calculus::reflection(const AClause& c) const {
    std::vector<AClause> out;
    const Signature& sig = signature();
    for (std::size_t i : ord_->select(c.clause)) {
        const Literal& lit = c.clause[i];
        if (lit.positive()) continue;
        if (!may_unify_heads(lit.lhs(), lit.rhs(), sig)) continue;
        auto r = unify(lit.lhs(), lit.rhs(), sig);
        if (!r) continue;
        const Substitution& sigma = r.unifier.sigma;
        if (!pure(sigma, c.constraint)) continue;
        if (!ord_->is_selected(apply(sigma, c.clause), apply(sigma, lit))) continue;
        AClause d;
        d.clause = Clause(instantiate(sigma, rest_of(c.clause, i)));
        d.constraint = c.constraint.unite(r.unifier.equations).apply(sigma, sig);
        d.rule = "reflection";
        d.parents = {c.id};
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<AClause> Calculus::factorization(const AClause& c) const {
    std::vector<AClause> out;
    const Signature& sig = signature();
    const auto sel = ord_->select(c.clause);
    for (std::size_t i : sel) {
        const Literal& li = c.clause[i];
        if (li.negative()) continue;
        for (std::size_t j = 0; j < c.clause.size(); ++j) {
            const Literal& lj = c.clause[j];
            if (j == i || lj.negative()) continue;
            for (const auto& [t, s] : orientations(li)) {
                for (const auto& [u, v] : orientations(lj)) {
                    if (!may_unify_heads(t, u, sig)) continue;
                    auto r = unify(t, u, sig);
                    if (!r) continue;
                    const Substitution& sigma = r.unifier.sigma;
                    if (!pure(sigma, c.constraint)) continue;
                    Term ts = sigma.apply(t);
                    Term ss = sigma.apply(s);
                    Term us = sigma.apply(u);
                    Term vs = sigma.apply(v);
                    if (ord_->geq_a(ss, ts) || ord_->geq_a(vs, us)) continue;
                    Literal li_s = apply(sigma, li);
                    if (blocked(li_s)) continue;
                    if (!ord_->is_selected(apply(sigma, c.clause), li_s)) continue;

                    std::vector<Literal> lits;
                    for (std::size_t k = 0; k < c.clause.size(); ++k) {
                        if (k != i && k != j) lits.push_back(apply(sigma, c.clause[k]));
                    }
                    lits.push_back(li_s);
                    if (ss != vs) lits.push_back(Literal::neq(ss, vs));
                    AClause d;
                    d.clause = Clause(std::move(lits));
                    d.constraint = c.constraint.unite(r.unifier.equations).apply(sigma, sig);
                    d.rule = "factorization";
                    d.parents = {c.id};
                    out.push_back(std::move(d));
                }
            }
        }
    }
    return out;
}

std::vector<AClause> Calculus::assertion(const AClause& c) const {
    std::vector<AClause> out;
    const Signature& sig = signature();
    if (sig.abducibles().empty()) return out;
    for (std::size_t i : ord_->select(c.clause)) {
        const Literal& lit = c.clause[i];
        bool ok = lit.is_predicate_atom()
                      ? is_a_flat(lit, sig)
                      : lit.positive() && is_flat_term(lit.lhs(), sig) && is_flat_term(lit.rhs(), sig);
        if (!ok) continue;
        AClause d;
        d.clause = c.clause.without(i);
        d.constraint = c.constraint;
        d.constraint.add(lit.complement(), sig);
        d.rule = "assertion";
        d.parents = {c.id};
        out.push_back(std::move(d));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Substitutivity

std::optional<AClause> Calculus::substitutivity(const std::vector<std::optional<SubstPremise>>& premises,
                                                SymbolId p, bool positive) const {
    const Signature& sig = signature();
    if (!sig.is_predicate(p) || sig.symbol(p).arity != premises.size()) {
        throw Error("substitutivity premises do not match the arity of " + sig.name(p));
    }
    VarId fresh = 0;
    for (const auto& pr : premises) {
        if (pr) fresh = std::max(fresh, pr->clause->var_bound());
    }
    std::vector<Term> ts;
    std::vector<Term> ss;
    std::vector<Literal> lits;
    ASet x;
    AClause out;
    for (const auto& pr : premises) {
        if (!pr) {
            Term v = Term::variable(fresh++);
            ts.push_back(v);
            ss.push_back(v);
            continue;
        }
        const Literal& eq = pr->clause->clause[pr->literal];
        if (eq.negative()) throw Error("substitutivity premise literal must be positive");
        ts.push_back(pr->swap ? eq.rhs() : eq.lhs());
        ss.push_back(pr->swap ? eq.lhs() : eq.rhs());
        auto rest = rest_of(pr->clause->clause, pr->literal);
        lits.insert(lits.end(), rest.begin(), rest.end());
        x = x.unite(pr->clause->constraint);
        out.parents.push_back(pr->clause->id);
    }
    Literal constraint_atom = Literal::atom(Term::app(p, ss), positive);
    if (!is_a_flat(constraint_atom, sig)) return std::nullopt;
    lits.push_back(Literal::atom(Term::app(p, ts), positive));
    x.add(constraint_atom, sig);
    out.clause = Clause(std::move(lits));
    out.constraint = std::move(x);
    out.rule = "substitutivity";
    return out;
}

std::vector<AClause> Calculus::substitutivity_lazy(const AClause& c) const {
    std::vector<AClause> out;
    const Signature& sig = signature();
    if (opts_.restricted || sig.abducibles().empty()) return out;
    for (std::size_t i : ord_->select(c.clause)) {
        const Literal& eq = c.clause[i];
        if (eq.negative() || eq.lhs() == eq.rhs()) continue;
        if (!is_flat_term(eq.lhs(), sig) || !is_flat_term(eq.rhs(), sig)) continue;
        for (SymbolId p : opts_.substitutivity_predicates) {
            const unsigned n = sig.symbol(p).arity;
            for (unsigned k = 0; k < n; ++k) {
                for (bool swap : {false, true}) {
                    for (bool positive : {true, false}) {
                        std::vector<std::optional<SubstPremise>> premises(n);
                        premises[k] = SubstPremise{&c, i, swap};
                        if (auto d = substitutivity(premises, p, positive)) out.push_back(std::move(*d));
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Drivers

std::vector<AClause> Calculus::infer_unary(const AClause& c) const {
    std::vector<AClause> out = reflection(c);
    auto add = [&out](std::vector<AClause>&& part) { std::move(part.begin(), part.end(), std::back_inserter(out)); };
    add(factorization(c));
    add(assertion(c));
    add(substitutivity_lazy(c));
    add(superposition(renamed(c, c.var_bound()), c));
    return out;
}

std::vector<AClause> Calculus::infer_binary(const AClause& a, const AClause& b) const {
    AClause b2 = renamed(b, a.var_bound());
    std::vector<AClause> out = superposition(a, b2);
    auto more = superposition(b2, a);
    std::move(more.begin(), more.end(), std::back_inserter(out));
    return out;
}

// ---------------------------------------------------------------------------
// Redundancy

bool Calculus::is_tautology(const AClause& c) const {
    if (!c.constraint.satisfiable(signature())) return true;
    Clause reduced = c.constraint.reduce(c.clause);
    if (reduced.has_trivial_literal()) return true;
    for (const auto& l : reduced) {
        if (std::binary_search(reduced.begin(), reduced.end(), l.complement())) return true;
        if (c.constraint.contains(l)) return true;
    }
    return false;
}

namespace {

bool match_literal(const Literal& pattern, const Literal& target, Bindings& theta) {
    if (pattern.positive() != target.positive()) return false;
    Bindings saved = theta;
    if (match(pattern.lhs(), target.lhs(), theta) && match(pattern.rhs(), target.rhs(), theta)) return true;
    theta = saved;
    if (match(pattern.lhs(), target.rhs(), theta) && match(pattern.rhs(), target.lhs(), theta)) return true;
    theta = std::move(saved);
    return false;
}

// Matching where the pattern is read modulo X: abducibles and bound values
// are replaced by their representatives first. Targets are X-reduced already.
bool match_reduced(Term pattern, Term target, const ASet& x, Bindings& theta) {
    if (pattern.is_variable()) {
        auto [it, fresh] = theta.emplace(pattern.var(), target);
        return fresh || x.reduce(it->second) == target;
    }
    if (target.is_variable() || pattern.symbol() != target.symbol()) {
        return pattern.arity() == 0 && !target.is_variable() && x.reduce(pattern) == target;
    }
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match_reduced(pattern.args()[i], target.args()[i], x, theta)) return false;
    }
    return true;
}

bool match_literal_reduced(const Literal& pattern, const Literal& target, const ASet& x, Bindings& theta) {
    if (pattern.positive() != target.positive()) return false;
    Bindings saved = theta;
    if (match_reduced(pattern.lhs(), target.lhs(), x, theta) && match_reduced(pattern.rhs(), target.rhs(), x, theta)) {
        return true;
    }
    theta = saved;
    if (match_reduced(pattern.lhs(), target.rhs(), x, theta) && match_reduced(pattern.rhs(), target.lhs(), x, theta)) {
        return true;
    }
    theta = std::move(saved);
    return false;
}

}  // namespace

// One-sided matching never instantiates the specific clause, so the two
// clauses need no renaming apart even when their variables overlap.
bool Calculus::subsumes(const AClause& general, const AClause& specific) const {
    if (general.clause.size() > specific.clause.size()) return false;
    const ASet& x = specific.constraint;
    if (general.constraint.diseqs().size() > x.diseqs().size() ||
        general.constraint.preds().size() > x.preds().size()) {
        return false;
    }
    for (const auto& [m, r] : general.constraint.classes()) {
        if (x.rep(m) != x.rep(r)) return false;
    }

    const auto& dl = general.clause.literals();
    const auto& cl = specific.clause.literals();

    std::vector<Literal> ylits;
    for (const auto& [u, v] : general.constraint.diseqs()) ylits.push_back(Literal::neq(u, v));
    ylits.insert(ylits.end(), general.constraint.preds().begin(), general.constraint.preds().end());

    std::vector<Literal> xlits;
    for (const auto& [u, v] : x.diseqs()) xlits.push_back(Literal::neq(u, v));
    xlits.insert(xlits.end(), x.preds().begin(), x.preds().end());

    std::vector<bool> used(cl.size(), false);

    std::function<bool(std::size_t, Bindings&)> constraint_step = [&](std::size_t k, Bindings& theta) -> bool {
        if (k == ylits.size()) return true;
        for (const auto& m : xlits) {
            Bindings next = theta;
            if (match_literal_reduced(ylits[k], m, x, next) && constraint_step(k + 1, next)) return true;
        }
        return false;
    };

    std::function<bool(std::size_t, Bindings&)> clause_step = [&](std::size_t k, Bindings& theta) -> bool {
        if (k == dl.size()) return constraint_step(0, theta);
        for (std::size_t i = 0; i < cl.size(); ++i) {
            if (used[i]) continue;
            Bindings next = theta;
            if (!match_literal(dl[k], cl[i], next)) continue;
            used[i] = true;
            bool ok = clause_step(k + 1, next);
            used[i] = false;
            if (ok) return true;
        }
        return false;
    };
    Bindings theta;
    return clause_step(0, theta);
}

}  // namespace abduce
