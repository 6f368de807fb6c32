#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "abduce/term.hpp"

namespace abduce {

/// Closed set of A-flat literals, stored in reduced form.
///
/// Three parts:
///  - a partition of the abducibles, each class mapped to its smallest member
///    (the one declared last, i.e. the largest symbol id);
///  - disequations u != v between variables / representatives;
///  - predicate literals p(u1..un) ~ T over variables / representatives.
///
/// Every stored literal is already reduced, so two ASets with the same logical
/// content compare equal.
class ASet {
public:
    using Diseq = std::pair<Term, Term>;  // first >= second structurally

    ASet() = default;

    /// Builds a set from A-flat literals. Throws InputError on anything else.
    static ASet of(const std::vector<Literal>& literals, const Signature& sig);

    void add(const Literal& l, const Signature& sig);
    void add_equation(SymbolId a, SymbolId b);

    /// Representative of an abducible (the abducible itself when alone).
    SymbolId rep(SymbolId a) const;

    Term reduce(Term t) const;
    Literal reduce(const Literal& l) const;
    Clause reduce(const Clause& c) const;

    /// Membership in the closed set (reflexive equations included).
    bool contains(const Literal& l) const;
    /// Every member of y is a member of this set.
    bool includes(const ASet& y) const;

    /// Some ground instance over the abducibles is consistent.
    bool satisfiable(const Signature& sig) const;
    /// Consistency of the ground part only.
    bool ground_consistent() const;

    /// Calls `f(sigma, instance)` for each map var -> class representative
    /// whose instance is consistent. Stops early when f returns false.
    void for_each_instance(const Signature& sig,
                           const std::function<bool(const Substitution&, const ASet&)>& f) const;

    ASet unite(const ASet& other) const;

    /// Image under an X-pure substitution. Throws NotPure otherwise.
    ASet apply(const Substitution& s, const Signature& sig) const;
    ASet renamed(VarId offset) const;
    ASet map_vars(const std::function<Term(VarId)>& f) const;

    /// Representation as literals: oriented equations, disequations, predicate literals.
    std::vector<Literal> literals() const;

    bool empty() const { return rep_.empty() && diseqs_.empty() && preds_.empty(); }
    bool is_ground() const;
    VarId var_bound() const;
    void collect_vars(std::set<VarId>& out) const;
    unsigned weight() const;

    bool has_positive() const;
    bool has_negative() const;

    const std::map<SymbolId, SymbolId>& classes() const { return rep_; }
    const std::set<Diseq>& diseqs() const { return diseqs_; }
    const std::set<Literal>& preds() const { return preds_; }

    friend bool operator==(const ASet&, const ASet&) = default;
    friend bool operator<(const ASet& a, const ASet& b) {
        return std::tie(a.rep_, a.diseqs_, a.preds_) < std::tie(b.rep_, b.diseqs_, b.preds_);
    }

private:
    static Diseq make_diseq(Term u, Term v);
    void insert_reduced(const Literal& l);
    void renormalize();

    std::map<SymbolId, SymbolId> rep_;  // only non-trivial entries
    std::set<Diseq> diseqs_;
    std::set<Literal> preds_;
};

/// Canonical text: equations (descending representative), disequations, predicate literals.
std::string to_string(const ASet& x, const Signature& sig);

/// Complete consistent ground extensions of a ground consistent set: every
/// partition of the abducibles coarsening x and honouring its disequations,
/// times every valuation of the ground predicate atoms over representatives
/// that agrees with x. Stops early when f returns false.
/// Throws BoundExceeded when there are more than `max_atoms` ground atoms.
void for_each_complete_extension(const ASet& x, const Signature& sig, const std::function<bool(const ASet&)>& f,
                                 std::size_t max_atoms = 16);
std::vector<ASet> complete_extensions(const ASet& x, const Signature& sig, std::size_t max_atoms = 16);

}  // namespace abduce
