#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "abduce/aset.hpp"
#include "abduce/term.hpp"

namespace abduce {

/// A substitution together with the abducible equations it relies on.
struct ASubstitution {
    Substitution sigma;
    ASet equations;  // positive, ground, abducibles only
};

enum class UnifyStatus { ok, clash, occurs };

struct UnifyResult {
    UnifyStatus status = UnifyStatus::clash;
    ASubstitution unifier;

    explicit operator bool() const { return status == UnifyStatus::ok; }
};

/// Most general A-unifier of a system of equations.
///
/// Rules are tried in priority order (trivial, abducible pair, clash, occur
/// check, variable elimination, decomposition), each on the leftmost pending
/// equation it applies to, so the returned representative is reproducible.
/// Variables are never bound to predicate-headed terms (reported as a clash).
UnifyResult unify(const std::vector<std::pair<Term, Term>>& equations, const Signature& sig);
UnifyResult unify(Term t, Term s, const Signature& sig);

/// (lhs) is at least as general as (rhs): lhs.equations is included in
/// rhs.equations, and some theta makes x.rhs ~ x.lhs.theta modulo
/// rhs.equations for every variable bound by either side.
bool more_general(const ASubstitution& lhs, const ASubstitution& rhs);

/// Variable bindings that, unlike Substitution, remember identity bindings.
using Bindings = std::map<VarId, Term>;

/// Syntactic one-way matching: extends `theta` so that pattern.theta == target.
/// On failure `theta` may hold partial bindings.
bool match(Term pattern, Term target, Bindings& theta);
Substitution to_substitution(const Bindings& b);

}  // namespace abduce
