#include "abduce/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "abduce/implicates.hpp"

namespace abduce {

namespace {

struct Node {
    bool app = false;
    SymbolId symbol = 0;
    std::vector<int> args;
};

/// Naive congruence closure over a fixed finite universe.
class Congruence {
public:
    explicit Congruence(const std::vector<Node>* nodes) : nodes_(nodes), parent_(nodes->size()) {
        for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
    }

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        parent_[std::max(a, b)] = std::min(a, b);
        close();
    }

    bool equal(int a, int b) const { return find(a) == find(b); }

private:
    void close() {
        const auto& n = *nodes_;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n.size(); ++i) {
                if (!n[i].app || n[i].args.empty()) continue;
                for (std::size_t j = i + 1; j < n.size(); ++j) {
                    if (!n[j].app || n[j].symbol != n[i].symbol || n[j].args.size() != n[i].args.size()) continue;
                    int a = find(static_cast<int>(i));
                    int b = find(static_cast<int>(j));
                    if (a == b) continue;
                    bool same = true;
                    for (std::size_t k = 0; k < n[i].args.size() && same; ++k) {
                        same = find(n[i].args[k]) == find(n[j].args[k]);
                    }
                    if (same) {
                        parent_[std::max(a, b)] = std::min(a, b);
                        changed = true;
                    }
                }
            }
        }
    }

    const std::vector<Node>* nodes_;
    std::vector<int> parent_;
};

struct GLit {
    int lhs;
    int rhs;
    bool positive;
};

/// A ground problem: the universe, and every consistent way of picking one
/// literal per clause (as congruence + disequations).
class GroundSpace {
public:
    GroundSpace(const std::vector<Clause>& s, const std::vector<Term>& extra, const Signature& sig,
                std::size_t bound)
        : sig_(sig) {
        intern(Term::constant(Signature::top()));
        for (const auto& c : s) {
            if (!c.is_ground()) throw InputError("the oracle needs ground clauses: " + to_string(c, sig));
            for (const auto& l : c) {
                intern(l.lhs());
                intern(l.rhs());
            }
        }
        for (Term t : extra) intern(t);
        if (nodes_.size() > bound) {
            throw BoundExceeded("ground universe has " + std::to_string(nodes_.size()) + " terms, bound is " +
                                std::to_string(bound));
        }
        bound_ = bound;
        for (const auto& c : s) {
            std::vector<GLit> lits;
            for (const auto& l : c) lits.push_back(lit(l));
            clauses_.push_back(std::move(lits));
        }
        enumerate();
    }

    int index(Term t) const {
        auto it = index_.find(t);
        return it == index_.end() ? -1 : it->second;
    }

    /// Index of t, adding it (and its subterms) when needed.
    int intern(Term t) {
        if (auto it = index_.find(t); it != index_.end()) return it->second;
        Node n;
        if (!t.is_variable()) {
            n.app = true;
            n.symbol = t.symbol();
            for (Term a : t.args()) n.args.push_back(intern(a));
        }
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(n));
        index_.emplace(t, id);
        return id;
    }

    GLit lit(const Literal& l) { return GLit{intern(l.lhs()), intern(l.rhs()), l.positive()}; }

    bool satisfiable() const { return !branches_.empty(); }

    /// Every model of S satisfies c.
    bool entails(const Clause& c) const {
        std::vector<GLit> negated;
        for (const auto& l : c) {
            int a = index(l.lhs());
            int b = index(l.rhs());
            if (a < 0 || b < 0) throw Error("oracle: clause outside the prepared universe");
            negated.push_back(GLit{a, b, !l.positive()});
        }
        for (const auto& br : branches_) {
            if (consistent_with(br, negated)) return false;
        }
        return true;
    }

private:
    struct Branch {
        Congruence cc;
        std::vector<std::pair<int, int>> diseqs;
    };

    static bool ok(const Branch& b) {
        return std::none_of(b.diseqs.begin(), b.diseqs.end(),
                            [&b](const auto& d) { return b.cc.equal(d.first, d.second); });
    }

    static bool consistent_with(const Branch& base, const std::vector<GLit>& units) {
        Branch b = base;
        for (const auto& u : units) {
            if (u.positive) {
                b.cc.merge(u.lhs, u.rhs);
            } else {
                b.diseqs.emplace_back(u.lhs, u.rhs);
            }
        }
        return ok(b);
    }

    void enumerate() {
        std::set<std::vector<std::tuple<int, int, bool>>> seen;
        std::vector<std::tuple<int, int, bool>> chosen;
        std::function<void(std::size_t, const Branch&)> go = [&](std::size_t i, const Branch& b) {
            if (i == clauses_.size()) {
                auto key = chosen;
                std::sort(key.begin(), key.end());
                key.erase(std::unique(key.begin(), key.end()), key.end());
                if (seen.insert(key).second) branches_.push_back(b);
                return;
            }
            for (const auto& l : clauses_[i]) {
                Branch next = b;
                if (l.positive) {
                    next.cc.merge(l.lhs, l.rhs);
                } else {
                    next.diseqs.emplace_back(l.lhs, l.rhs);
                }
                if (!ok(next)) continue;
                chosen.emplace_back(l.lhs, l.rhs, l.positive);
                go(i + 1, next);
                chosen.pop_back();
            }
        };
        go(0, Branch{Congruence(&nodes_), {}});
    }

    const Signature& sig_;
    std::size_t bound_ = 0;
    std::vector<Node> nodes_;
    std::map<Term, int> index_;
    std::vector<std::vector<GLit>> clauses_;
    std::vector<Branch> branches_;
};

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

bool oracle_entails(const std::vector<Clause>& s, const Clause& c, const Signature& sig, const OracleOptions& opts) {
    if (!c.is_ground()) throw InputError("the oracle needs ground clauses: " + to_string(c, sig));
    std::vector<Term> extra;
    for (const auto& l : c) {
        extra.push_back(l.lhs());
        extra.push_back(l.rhs());
    }
    GroundSpace space(s, extra, sig, opts.universe_bound);
    return space.entails(c);
}

std::vector<Clause> oracle_implicates(const std::vector<Clause>& s, const Ordering& ord, std::size_t max_len,
                                      const OracleOptions& opts) {
    const Signature& sig = ord.signature();
    std::vector<Term> abd;
    for (SymbolId a : sig.abducibles()) abd.push_back(Term::constant(a));

    std::vector<Literal> pool;
    for (std::size_t i = 0; i < abd.size(); ++i) {
        for (std::size_t j = i + 1; j < abd.size(); ++j) {
            pool.push_back(Literal::eq(abd[i], abd[j]));
            pool.push_back(Literal::neq(abd[i], abd[j]));
        }
    }
    for (SymbolId p : sig.predicates()) {
        std::vector<std::vector<Term>> args;
        std::vector<Term> prefix;
        tuples(abd, sig.symbol(p).arity, prefix, args);
        for (const auto& a : args) {
            Term atom = Term::app(p, a);
            pool.push_back(Literal::atom(atom, true));
            pool.push_back(Literal::atom(atom, false));
        }
    }

    std::vector<Term> extra(abd);
    for (const auto& l : pool) extra.push_back(l.lhs());
    GroundSpace space(s, extra, sig, opts.universe_bound);
    if (!space.satisfiable()) return {Clause()};

    std::vector<std::vector<std::size_t>> entailed_sets;
    std::vector<Clause> found;
    std::size_t tried = 0;
    std::vector<std::size_t> pick;

    auto contains_entailed = [&entailed_sets](const std::vector<std::size_t>& cand) {
        return std::any_of(entailed_sets.begin(), entailed_sets.end(), [&](const std::vector<std::size_t>& e) {
            return std::includes(cand.begin(), cand.end(), e.begin(), e.end());
        });
    };

    for (std::size_t len = 1; len <= max_len; ++len) {
        std::function<void(std::size_t)> go = [&](std::size_t start) {
            if (pick.size() == len) {
                if (contains_entailed(pick)) return;
                std::vector<Literal> lits;
                for (std::size_t k : pick) lits.push_back(pool[k]);
                Clause cand(lits);
                if (!canonical_implicate(cand, sig)) return;  // tautology
                if (++tried > opts.candidate_bound) throw BoundExceeded("too many candidate implicates");
                if (space.entails(cand)) {
                    entailed_sets.push_back(pick);
                    found.push_back(cand);
                }
                return;
            }
            for (std::size_t k = start; k < pool.size(); ++k) {
                pick.push_back(k);
                go(k + 1);
                pick.pop_back();
            }
        };
        go(0);
    }
    return minimize(found, ord);
}

}  // namespace abduce
