#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abduce/aset.hpp"
#include "abduce/aunify.hpp"
#include "abduce/ordering.hpp"
#include "abduce/term.hpp"

namespace abduce {

/// Constrained clause [C | X]: C holds whenever X does.
struct AClause {
    Clause clause;
    ASet constraint;
    unsigned id = 0;
    std::string rule = "input";
    std::vector<unsigned> parents;

    unsigned weight() const { return clause.weight() + constraint.weight(); }
    VarId var_bound() const { return std::max(clause.var_bound(), constraint.var_bound()); }
    bool is_empty() const { return clause.empty(); }

    /// Same clause and constraint (derivation info ignored).
    bool same_content(const AClause& o) const { return clause == o.clause && constraint == o.constraint; }
};

using AClausePtr = std::shared_ptr<const AClause>;

/// Renames variables to 0, 1, ... in order of first occurrence.
AClause canonical_vars(AClause c);

std::string to_string(const AClause& c, const Signature& sig);

/// Premise of the substitutivity rule: a clause with the index of a positive
/// equation t = s (the rule uses t in the conclusion and s in the
/// constraint), or nothing for a reflexivity variant x = x.
struct SubstPremise {
    const AClause* clause = nullptr;
    std::size_t literal = 0;
    bool swap = false;  // use s = t instead of t = s
};

struct CalculusOptions {
    /// Block inferences on A-flat literals except assertion and reflection.
    bool restricted = false;
    /// Predicates for which substitutivity instances are generated.
    std::vector<SymbolId> substitutivity_predicates;
};

/// Inference rules and redundancy tests.
///
/// All binary rules expect premises whose variables are disjoint; the
/// `infer_*` drivers take care of renaming.
class Calculus {
public:
    Calculus(const Ordering& ordering, CalculusOptions options);

    const Ordering& ordering() const { return *ord_; }
    const Signature& signature() const { return ord_->signature(); }
    const CalculusOptions& options() const { return opts_; }

    /// Superposition of `from` into `into` at every admissible position.
    std::vector<AClause> superposition(const AClause& from, const AClause& into) const;
    /// Superposition into literal `into_lit` at position `pos` of its side `side` (0 = lhs, 1 = rhs).
    std::vector<AClause> superposition_at(const AClause& from, const AClause& into, std::size_t into_lit,
                                          int side, const Position& pos) const;
    std::vector<AClause> reflection(const AClause& c) const;
    std::vector<AClause> factorization(const AClause& c) const;
    std::vector<AClause> assertion(const AClause& c) const;

    /// General substitutivity: one premise per argument of p; `nullopt`
    /// stands for a reflexivity variant with a fresh variable. Premises
    /// must be variable-disjoint.
    std::optional<AClause> substitutivity(const std::vector<std::optional<SubstPremise>>& premises, SymbolId p,
                                          bool positive) const;
    /// The lazy instances: one real premise with a selected flat equation,
    /// every other argument a reflexivity variant.
    std::vector<AClause> substitutivity_lazy(const AClause& c) const;

    /// All conclusions with c as sole premise (including c with itself).
    std::vector<AClause> infer_unary(const AClause& c) const;
    /// All conclusions between two distinct clauses, in both directions.
    std::vector<AClause> infer_binary(const AClause& a, const AClause& b) const;

    bool is_tautology(const AClause& c) const;
    bool subsumes(const AClause& general, const AClause& specific) const;

private:
    bool blocked(const Literal& instantiated) const;
    bool pure(const Substitution& s, const ASet& x) const;

    const Ordering* ord_;
    CalculusOptions opts_;
};

}  // namespace abduce
