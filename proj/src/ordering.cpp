#include "abduce/ordering.hpp"

#include <algorithm>
#include <limits>

namespace abduce {

Order invert(Order o) {
    switch (o) {
        case Order::greater: return Order::less;
        case Order::less: return Order::greater;
        default: return o;
    }
}

// ---------------------------------------------------------------------------
// Configuration

OrderingConfig OrderingConfig::defaults(const Signature& sig) {
    OrderingConfig cfg;
    const auto n = static_cast<SymbolId>(sig.size());
    cfg.weight.assign(n, 1);
    cfg.precedence.assign(n, 0);

    // T = 0, abducibles 1..k with the last declared smallest, then the rest.
    const auto& abd = sig.abducibles();
    for (std::size_t i = 0; i < abd.size(); ++i) {
        cfg.precedence[abd[i]] = static_cast<unsigned>(abd.size() - i);
    }
    std::vector<SymbolId> others;
    for (SymbolId id = 1; id < n; ++id) {
        if (!sig.is_abducible(id)) others.push_back(id);
    }
    auto next = static_cast<unsigned>(abd.size() + others.size());
    for (SymbolId id : others) cfg.precedence[id] = next--;
    return cfg;
}

OrderingConfig OrderingConfig::from_user(const Signature& sig, const std::map<std::string, unsigned>& weights,
                                         const std::vector<std::string>& ranking) {
    OrderingConfig cfg = defaults(sig);
    for (const auto& [name, w] : weights) {
        auto id = sig.find(name);
        if (!id) throw InputError("weight given for unknown symbol '" + name + "'");
        if (sig.is_abducible(*id)) throw InputError("abducible '" + name + "' has a fixed weight");
        if (w == 0) throw InputError("symbol weights must be positive ('" + name + "')");
        cfg.weight[*id] = w;
    }
    if (!ranking.empty()) {
        std::vector<SymbolId> ranked;
        for (const auto& name : ranking) {
            auto id = sig.find(name);
            if (!id) throw InputError("precedence given for unknown symbol '" + name + "'");
            if (sig.is_abducible(*id) || *id == Signature::top()) {
                throw InputError("symbol '" + name + "' has a fixed precedence");
            }
            if (std::find(ranked.begin(), ranked.end(), *id) != ranked.end()) {
                throw InputError("symbol '" + name + "' ranked twice");
            }
            ranked.push_back(*id);
        }
        // Unranked non-abducibles keep their relative order below the ranked ones.
        std::vector<SymbolId> rest;
        for (SymbolId id = 1; id < sig.size(); ++id) {
            if (!sig.is_abducible(id) && std::find(ranked.begin(), ranked.end(), id) == ranked.end()) {
                rest.push_back(id);
            }
        }
        std::sort(rest.begin(), rest.end(),
                  [&cfg](SymbolId a, SymbolId b) { return cfg.precedence[a] > cfg.precedence[b]; });
        auto next = static_cast<unsigned>(sig.abducibles().size() + ranked.size() + rest.size());
        for (SymbolId id : ranked) cfg.precedence[id] = next--;
        for (SymbolId id : rest) cfg.precedence[id] = next--;
    }
    // Predicates share the weight of the first predicate.
    auto preds = sig.predicates();
    for (SymbolId p : preds) {
        if (cfg.weight[p] != cfg.weight[preds.front()]) {
            throw InputError("all predicate symbols must have the same weight");
        }
    }
    cfg.validate(sig);
    return cfg;
}

void OrderingConfig::validate(const Signature& sig) const {
    if (weight.size() != sig.size() || precedence.size() != sig.size()) {
        throw InputError("ordering configuration does not match the signature");
    }
    if (variable_weight == 0) throw InputError("variable weight must be positive");
    if (weight[Signature::top()] != variable_weight) {
        throw InputError("the truth constant must weigh as much as a variable");
    }
    unsigned min_abducible = std::numeric_limits<unsigned>::max();
    unsigned max_abducible = 0;
    for (SymbolId a : sig.abducibles()) {
        if (weight[a] != variable_weight) throw InputError("abducibles must have the minimal constant weight");
        min_abducible = std::min(min_abducible, precedence[a]);
        max_abducible = std::max(max_abducible, precedence[a]);
    }
    for (SymbolId id = 0; id < sig.size(); ++id) {
        if (weight[id] == 0) throw InputError("symbol weights must be positive");
        if (sig.symbol(id).arity == 0 && weight[id] < variable_weight) {
            throw InputError("constant '" + sig.name(id) + "' is lighter than a variable");
        }
        if (id == Signature::top() || sig.is_abducible(id)) continue;
        if (!sig.abducibles().empty() && precedence[id] <= max_abducible) {
            throw InputError("symbol '" + sig.name(id) + "' must be above every abducible");
        }
    }
    if (!sig.abducibles().empty() && precedence[Signature::top()] >= min_abducible) {
        throw InputError("the truth constant must be minimal");
    }
    std::vector<unsigned> sorted = precedence;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("precedence must be total");
    }
}

// ---------------------------------------------------------------------------
// KBO

namespace {

using VarCount = std::map<VarId, int>;

void count_vars(Term t, VarCount& counts, int sign) {
    if (t.is_ground()) return;
    if (t.is_variable()) {
        counts[t.var()] += sign;
        return;
    }
    for (Term a : t.args()) count_vars(a, counts, sign);
}

/// Variable condition: every variable occurs in s at least as often as in t.
bool var_dominates(Term s, Term t) {
    if (t.is_ground()) return true;
    VarCount c;
    count_vars(s, c, 1);
    count_vars(t, c, -1);
    return std::all_of(c.begin(), c.end(), [](const auto& kv) { return kv.second >= 0; });
}

/// Dershowitz-Manna extension for a strict partial order given by `cmp`.
/// Elements are cancelled only when `same` says they are identical.
template <typename T, typename Cmp, typename Same>
Order multiset_compare(std::vector<T> m, std::vector<T> n, Cmp cmp, Same same) {
    for (auto it = m.begin(); it != m.end();) {
        auto jt = std::find_if(n.begin(), n.end(), [&](const T& x) { return same(*it, x); });
        if (jt != n.end()) {
            n.erase(jt);
            it = m.erase(it);
        } else {
            ++it;
        }
    }
    if (m.empty() && n.empty()) return Order::equal;
    auto dominated = [&](const std::vector<T>& big, const std::vector<T>& small, Order want) {
        return std::all_of(small.begin(), small.end(), [&](const T& y) {
            return std::any_of(big.begin(), big.end(), [&](const T& x) { return cmp(x, y) == want; });
        });
    };
    if (!m.empty() && dominated(m, n, Order::greater)) return Order::greater;
    if (!n.empty() && dominated(n, m, Order::greater)) return Order::less;
    return Order::incomparable;
}

}  // namespace

Ordering::Ordering(const Signature& sig, OrderingConfig config) : sig_(&sig), config_(std::move(config)) {
    config_.validate(sig);
}

unsigned Ordering::weight(Term t) const {
    if (t.is_variable()) return config_.variable_weight;
    unsigned w = config_.weight.at(t.symbol());
    for (Term a : t.args()) w += weight(a);
    return w;
}

Order Ordering::kbo(Term s, Term t, bool blind) const {
    if (s == t) return Order::equal;
    if (t.is_variable()) return s.occurs(t.var()) ? Order::greater : Order::incomparable;
    if (s.is_variable()) return t.occurs(s.var()) ? Order::less : Order::incomparable;

    const unsigned ws = weight(s);
    const unsigned wt = weight(t);
    Order r = Order::incomparable;
    if (ws > wt) {
        r = Order::greater;
    } else if (ws < wt) {
        r = Order::less;
    } else {
        const SymbolId f = s.symbol();
        const SymbolId g = t.symbol();
        auto lex = [&]() {
            for (std::size_t i = 0; i < s.arity(); ++i) {
                if (s.args()[i] == t.args()[i]) continue;
                Order o = kbo(s.args()[i], t.args()[i], blind);
                return (o == Order::greater || o == Order::less) ? o : Order::incomparable;
            }
            return Order::equal;
        };
        if (sig_->is_predicate(f) && sig_->is_predicate(g)) {
            std::vector<Term> sa(s.args().begin(), s.args().end());
            std::vector<Term> ta(t.args().begin(), t.args().end());
            r = multiset_compare(
                sa, ta, [&](Term x, Term y) { return kbo(x, y, blind); }, [](Term x, Term y) { return x == y; });
            if (r == Order::equal) {
                if (f != g) {
                    r = config_.precedence[f] > config_.precedence[g] ? Order::greater : Order::less;
                } else {
                    r = lex();
                }
            }
        } else if (f != g) {
            if (blind && sig_->is_abducible(f) && sig_->is_abducible(g)) return Order::incomparable;
            r = config_.precedence[f] > config_.precedence[g] ? Order::greater : Order::less;
        } else {
            r = lex();
        }
    }
    if (r == Order::greater) return var_dominates(s, t) ? Order::greater : Order::incomparable;
    if (r == Order::less) return var_dominates(t, s) ? Order::less : Order::incomparable;
    return Order::incomparable;
}

Order Ordering::compare(Term s, Term t) const { return kbo(s, t, false); }

Order Ordering::compare_blind(Term s, Term t) const { return kbo(s, t, true); }

bool Ordering::geq_a(Term t, Term s) const {
    if (t == s) return true;
    if (!s.is_variable() && s.symbol() == Signature::top()) return true;
    return compare_blind(t, s) == Order::greater;
}

bool Ordering::gt_a(Term t, Term s) const { return compare_blind(t, s) == Order::greater; }

Order Ordering::compare_literal(const Literal& l, const Literal& k, bool blind) const {
    using Bag = std::vector<Term>;
    auto encode = [](const Literal& x) {
        return x.positive() ? std::vector<Bag>{{x.lhs()}, {x.rhs()}} : std::vector<Bag>{{x.lhs(), x.rhs()}};
    };
    auto term_cmp = [&](Term x, Term y) { return kbo(x, y, blind); };
    auto term_same = [](Term x, Term y) { return x == y; };
    auto bag_cmp = [&](const Bag& x, const Bag& y) { return multiset_compare(x, y, term_cmp, term_same); };
    auto bag_same = [&](const Bag& x, const Bag& y) {
        return multiset_compare(x, y, term_cmp, term_same) == Order::equal;
    };
    return multiset_compare(encode(l), encode(k), bag_cmp, bag_same);
}

Order Ordering::compare(const Literal& l, const Literal& k) const { return compare_literal(l, k, false); }

Order Ordering::compare_blind(const Literal& l, const Literal& k) const { return compare_literal(l, k, true); }

Order Ordering::compare(const Clause& c, const Clause& d) const {
    return multiset_compare(
        c.literals(), d.literals(), [this](const Literal& x, const Literal& y) { return compare(x, y); },
        [](const Literal& x, const Literal& y) { return x == y; });
}

std::vector<std::size_t> Ordering::select(const Clause& c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].negative()) out.push_back(i);
    }
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < c.size() && !dominated; ++j) {
            dominated = j != i && compare_blind(c[j], c[i]) == Order::greater;
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

bool Ordering::is_selected(const Clause& c, const Literal& l) const {
    for (std::size_t i : select(c)) {
        if (c[i] == l) return true;
    }
    return false;
}

}  // namespace abduce
