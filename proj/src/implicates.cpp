#include "abduce/implicates.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace abduce {

namespace {

std::vector<Literal> complement_literals(const std::vector<Literal>& lits) {
    std::vector<Literal> out;
    out.reserve(lits.size());
    for (const auto& l : lits) out.push_back(l.complement());
    return out;
}

void require_flat_ground(const Clause& c, const Signature& sig) {
    if (!c.is_ground() || !is_a_flat(c, sig)) {
        throw InputError("not a ground A-flat clause: " + to_string(c, sig));
    }
}

/// Tries to add a literal to a ground A-set; false if it becomes inconsistent.
bool assume(ASet& x, const Literal& l, const Signature& sig) {
    x.add(l, sig);
    return x.ground_consistent();
}

}  // namespace

std::optional<Clause> canonical_implicate(const Clause& c, const Signature& sig) {
    require_flat_ground(c, sig);
    ASet x;
    for (const auto& l : c) {
        if (!assume(x, l.complement(), sig)) return std::nullopt;
    }
    return Clause(complement_literals(x.literals()));
}

std::vector<Clause> extract(const std::vector<AClause>& clauses, const Signature& sig) {
    std::set<Clause> out;
    for (const auto& c : clauses) {
        if (!c.is_empty()) continue;
        c.constraint.for_each_instance(sig, [&out](const Substitution&, const ASet& inst) {
            out.insert(Clause(complement_literals(inst.literals())));
            return true;
        });
    }
    return {out.begin(), out.end()};
}

std::vector<Clause> extract(const std::vector<AClausePtr>& clauses, const Signature& sig) {
    std::vector<AClause> plain;
    for (const auto& c : clauses) {
        if (c->is_empty()) plain.push_back(*c);
    }
    return extract(plain, sig);
}

bool entails_ground(const Clause& c, const Clause& d, const Signature& sig) {
    ASet base;
    for (const auto& l : d) {
        if (!assume(base, l.complement(), sig)) return true;  // d is valid
    }
    for (const auto& l : c) {
        ASet x = base;
        if (assume(x, l, sig)) return false;
    }
    return true;
}

bool entails_set(const std::vector<Clause>& premises, const Clause& goal, const Signature& sig) {
    ASet start;
    for (const auto& l : goal) {
        if (!assume(start, l.complement(), sig)) return true;
    }
    // search for a model of premises + goal^c
    std::function<bool(std::size_t, const ASet&)> model = [&](std::size_t i, const ASet& x) -> bool {
        if (i == premises.size()) return true;
        const Clause& c = premises[i];
        for (const auto& l : c) {
            if (x.contains(l)) return model(i + 1, x);
        }
        for (const auto& l : c) {
            ASet y = x;
            if (assume(y, l, sig) && model(i + 1, y)) return true;
        }
        return false;
    };
    return !model(0, start);
}

std::vector<Clause> minimize(const std::vector<Clause>& implicates, const Ordering& ord) {
    const Signature& sig = ord.signature();
    std::set<Clause> unique;
    for (const auto& c : implicates) {
        if (auto n = canonical_implicate(c, sig)) unique.insert(*n);
    }
    std::vector<Clause> sorted(unique.begin(), unique.end());
    std::sort(sorted.begin(), sorted.end(),
              [&ord](const Clause& a, const Clause& b) { return ord.compare(a, b) == Order::less; });
    std::vector<Clause> kept;
    for (const auto& c : sorted) {
        bool covered = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) { return entails_ground(k, c, sig); });
        if (covered) continue;
        std::erase_if(kept, [&](const Clause& k) { return entails_ground(c, k, sig); });
        kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

bool same_theory(const std::vector<Clause>& a, const std::vector<Clause>& b, const Signature& sig) {
    auto covered = [&sig](const std::vector<Clause>& from, const std::vector<Clause>& to) {
        return std::all_of(to.begin(), to.end(), [&](const Clause& d) {
            return std::any_of(from.begin(), from.end(), [&](const Clause& c) { return entails_ground(c, d, sig); });
        });
    };
    return covered(a, b) && covered(b, a);
}

std::string render_implicate(const Clause& c, const Ordering& ord) {
    if (c.empty()) return "[]";
    const Signature& sig = ord.signature();
    std::vector<Literal> lits(c.begin(), c.end());
    std::sort(lits.begin(), lits.end(),
              [&ord](const Literal& a, const Literal& b) { return ord.compare(a, b) == Order::less; });
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        const Literal& l = lits[i];
        if (i) out += " | ";
        if (l.is_predicate_atom()) {
            out += (l.positive() ? "" : "~") + to_string(l.lhs(), sig);
            continue;
        }
        Term a = l.lhs();
        Term b = l.rhs();
        if (ord.compare(b, a) == Order::greater) std::swap(a, b);
        out += to_string(a, sig) + (l.positive() ? " = " : " != ") + to_string(b, sig);
    }
    return out;
}

std::vector<std::string> render_implicates(const std::vector<Clause>& cs, const Ordering& ord) {
    std::vector<std::string> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(render_implicate(c, ord));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace abduce
