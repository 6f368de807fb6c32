#include "abduce/aunify.hpp"

#include <algorithm>

namespace abduce {

namespace {

bool is_abducible_term(Term t, const Signature& sig) {
    return !t.is_variable() && t.arity() == 0 && sig.is_abducible(t.symbol());
}

using Equations = std::vector<std::pair<Term, Term>>;

/// Composes {x -> t} onto an idempotent substitution, keeping it idempotent.
void extend(Substitution& theta, VarId x, Term t) {
    Substitution single;
    single.bind(x, t);
    Substitution next;
    for (const auto& [y, u] : theta.bindings()) next.bind(y, single.apply(u));
    next.bind(x, t);
    theta = std::move(next);
}

}  // namespace

UnifyResult unify(const Equations& input, const Signature& sig) {
    Equations eqs = input;
    UnifyResult result;
    Substitution& theta = result.unifier.sigma;
    ASet& x = result.unifier.equations;

    // Every rule shrinks the problem; the fuel only guards against bugs.
    std::size_t fuel = 1;
    for (const auto& [a, b] : eqs) fuel += 4 * (a.size() + b.size());
    fuel *= fuel;

    auto first = [&eqs](auto pred) {
        return std::find_if(eqs.begin(), eqs.end(), [&](const auto& e) { return pred(e.first, e.second); });
    };

    while (!eqs.empty()) {
        if (fuel-- == 0) throw Error("A-unification did not terminate");

        // (T)
        if (auto it = first([](Term a, Term b) { return a == b; }); it != eqs.end()) {
            eqs.erase(it);
            continue;
        }
        // (E)
        if (auto it = first([&](Term a, Term b) { return is_abducible_term(a, sig) && is_abducible_term(b, sig); });
            it != eqs.end()) {
            x.add_equation(it->first.symbol(), it->second.symbol());
            eqs.erase(it);
            continue;
        }
        // (C)
        if (first([](Term a, Term b) { return !a.is_variable() && !b.is_variable() && a.symbol() != b.symbol(); }) !=
            eqs.end()) {
            result.status = UnifyStatus::clash;
            return result;
        }
        // (O)
        if (first([](Term a, Term b) {
                return (a.is_variable() && b.occurs(a.var())) || (b.is_variable() && a.occurs(b.var()));
            }) != eqs.end()) {
            result.status = UnifyStatus::occurs;
            return result;
        }
        // (R)
        if (auto it = first([](Term a, Term b) { return a.is_variable() || b.is_variable(); }); it != eqs.end()) {
            Term var = it->first.is_variable() ? it->first : it->second;
            Term val = it->first.is_variable() ? it->second : it->first;
            if (is_boolean(val, sig)) {
                result.status = UnifyStatus::clash;
                return result;
            }
            eqs.erase(it);
            Substitution single;
            single.bind(var.var(), val);
            for (auto& [a, b] : eqs) {
                a = single.apply(a);
                b = single.apply(b);
            }
            extend(theta, var.var(), val);
            continue;
        }
        // (D): only same-symbol applications remain
        auto it = eqs.begin();
        Term a = it->first;
        Term b = it->second;
        eqs.erase(it);
        Equations args;
        for (std::size_t i = 0; i < a.arity(); ++i) args.emplace_back(a.args()[i], b.args()[i]);
        eqs.insert(eqs.begin(), args.begin(), args.end());
    }
    result.status = UnifyStatus::ok;
    return result;
}

UnifyResult unify(Term t, Term s, const Signature& sig) { return unify(Equations{{t, s}}, sig); }

bool match(Term pattern, Term target, Bindings& theta) {
    if (pattern.is_variable()) {
        auto [it, fresh] = theta.emplace(pattern.var(), target);
        return fresh || it->second == target;
    }
    if (pattern.is_ground()) return pattern == target;
    if (target.is_variable() || pattern.symbol() != target.symbol()) return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match(pattern.args()[i], target.args()[i], theta)) return false;
    }
    return true;
}

Substitution to_substitution(const Bindings& b) {
    Substitution s;
    for (const auto& [x, t] : b) s.bind(x, t);
    return s;
}

bool more_general(const ASubstitution& lhs, const ASubstitution& rhs) {
    if (!rhs.equations.includes(lhs.equations)) return false;
    std::set<VarId> dom;
    for (const auto& [v, t] : lhs.sigma.bindings()) dom.insert(v);
    for (const auto& [v, t] : rhs.sigma.bindings()) dom.insert(v);

    Bindings theta;
    const ASet& e = rhs.equations;
    for (VarId v : dom) {
        Term x = Term::variable(v);
        Term pattern = e.reduce(lhs.sigma.apply(x));
        Term target = e.reduce(rhs.sigma.apply(x));
        if (!match(pattern, target, theta)) return false;
    }
    return true;
}

}  // namespace abduce
