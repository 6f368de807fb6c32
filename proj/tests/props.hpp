#pragma once

// Randomized property checks shared by the unit tests and the acceptance runner.

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abduce/aunify.hpp"
#include "abduce/ordering.hpp"
#include "support.hpp"
#include "term_gen.hpp"

namespace abduce::testing {

inline const char* kUnifySig = R"(
abducibles a, b, c;
function f/1, g/2, e/0;
)";

struct PropReport {
    int cases = 0;
    int checked = 0;  // cases where the property had something to say
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    void fail(std::string s) {
        if (failures.size() < 10) failures.push_back(std::move(s));
        else if (failures.size() == 10) failures.push_back("...");
    }
};

inline ASet partition_set(const Collapse& rho) {
    ASet x;
    for (auto [a, r] : rho)
        if (a != r) x.add_equation(a, r);
    return x;
}

/// Soundness, most-generality against ground witnesses, and failure
/// classification of A-unification on random pairs.
inline PropReport check_unification(int pairs, unsigned seed) {
    World w(kUnifySig);
    const Signature& sig = w.sig();
    std::mt19937 rng(seed);
    TermGen gen(w, rng);
    auto parts = collapse_maps(sig);

    std::vector<Term> pool;
    for (auto s : sig.abducibles()) pool.push_back(Term::constant(s));
    pool.push_back(w.c("e"));
    std::size_t leaves = pool.size();
    for (std::size_t i = 0; i < leaves; ++i) pool.push_back(w.f("f", {pool[i]}));

    PropReport r;
    for (int n = 0; n < pairs; ++n) {
        Term t = gen.term(3, 3);
        Term s = gen.term(3, 3);
        ++r.cases;
        UnifyResult u = unify(t, s, sig);
        auto show = [&] {
            std::ostringstream o;
            o << to_string(t, sig) << " =? " << to_string(s, sig);
            return o.str();
        };
        if (u) {
            const ASet& e = u.unifier.equations;
            if (e.reduce(u.unifier.sigma.apply(t)) != e.reduce(u.unifier.sigma.apply(s))) r.fail("unsound: " + show());
        } else {
            bool occurs_shape = false;
            // a variable unified against a proper term containing it
            if (t.is_variable() && s != t && s.occurs(t.var())) occurs_shape = true;
            if (s.is_variable() && s != t && t.occurs(s.var())) occurs_shape = true;
            if (occurs_shape && u.status != UnifyStatus::occurs) r.fail("expected occurs: " + show());
            bool clash_shape = !t.is_variable() && !s.is_variable() &&
                               !(sig.is_abducible(t.symbol()) && sig.is_abducible(s.symbol())) &&
                               t.symbol() != s.symbol();
            if (clash_shape && u.status != UnifyStatus::clash) r.fail("expected clash: " + show());
        }

        // ground witnesses (theta, X) over the variables of t and s
        std::set<VarId> vs;
        t.collect_vars(vs);
        s.collect_vars(vs);
        std::vector<VarId> vars(vs.begin(), vs.end());
        std::vector<std::size_t> idx(vars.size(), 0);
        bool witnessed = false;
        for (;;) {
            Substitution theta;
            for (std::size_t k = 0; k < vars.size(); ++k) theta.bind(vars[k], pool[idx[k]]);
            Term ti = theta.apply(t), si = theta.apply(s);
            for (const auto& rho : parts) {
                if (collapse(ti, rho) != collapse(si, rho)) continue;
                witnessed = true;
                if (!u) {
                    r.fail("missed unifier: " + show());
                    break;
                }
                ASubstitution ground{theta, partition_set(rho)};
                if (!more_general(u.unifier, ground)) r.fail("not most general: " + show());
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        if (witnessed || u) ++r.checked;
    }
    return r;
}

inline const char* kOrderSig = R"(
abducibles a, b, c, d;
function f/1, g/2, h/1, e/0;
)";

/// geq_a must never be refuted by a collapse of the abducibles combined with
/// a ground instantiation.
inline PropReport check_geq_a(int pairs, unsigned seed) {
    World w(kOrderSig);
    const Ordering& o = w.ord();
    std::mt19937 rng(seed);
    TermGen gen(w, rng);
    auto parts = collapse_maps(w.sig());
    std::vector<Term> pool;
    for (int i = 0; i < 6; ++i) pool.push_back(gen.ground(2));

    PropReport r;
    for (int n = 0; n < pairs; ++n) {
        Term t = gen.term(3, 2);
        Term s = gen.term(3, 2);
        // bias towards related pairs so that positive verdicts are common
        if (n % 3 == 0 && !s.is_variable() && s.arity() > 0) t = w.f("h", {s});
        if (n % 3 == 1) s = collapse(t, parts[gen.pick(parts.size())]);
        ++r.cases;
        if (!o.geq_a(t, s)) continue;
        ++r.checked;
        for (Term v0 : pool)
            for (Term v1 : pool) {
                Substitution sigma;
                sigma.bind(0, v0);
                sigma.bind(1, v1);
                for (const auto& rho : parts) {
                    Order c = o.compare(collapse(sigma.apply(t), rho), collapse(sigma.apply(s), rho));
                    if (c != Order::greater && c != Order::equal) {
                        r.fail(to_string(t, w.sig()) + " >=A " + to_string(s, w.sig()));
                        goto next;
                    }
                }
            }
    next:;
    }
    return r;
}

}  // namespace abduce::testing
