#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abduce/calculus.hpp"
#include "abduce/ordering.hpp"
#include "abduce/term.hpp"

namespace abduce {

/// Normal form of a ground A-flat clause: the complement of the reduced
/// A-set built from its complement. Returns nullopt for tautologies.
/// Throws InputError when the clause is not ground and A-flat.
std::optional<Clause> canonical_implicate(const Clause& c, const Signature& sig);

/// Implicates (X.sigma)^c for every [[] | X] and every map of var(X) to the
/// abducibles with a consistent instance. Canonical, sorted, duplicate-free.
std::vector<Clause> extract(const std::vector<AClausePtr>& clauses, const Signature& sig);
std::vector<Clause> extract(const std::vector<AClause>& clauses, const Signature& sig);

/// C |= D for ground A-flat clauses: each literal of C contradicts D^c.
bool entails_ground(const Clause& c, const Clause& d, const Signature& sig);

/// premises |= goal for ground A-flat clauses (case split over the premises).
bool entails_set(const std::vector<Clause>& premises, const Clause& goal, const Signature& sig);

/// Keeps the ordering-least representative of each equivalence class among
/// the entailment-minimal clauses. Output has no pair C != D with C |= D.
std::vector<Clause> minimize(const std::vector<Clause>& implicates, const Ordering& ord);

/// Two sets denote the same theory: each element of one is entailed by some
/// element of the other.
bool same_theory(const std::vector<Clause>& a, const std::vector<Clause>& b, const Signature& sig);

/// One implicate per line: each equation greater side first, literals in
/// ascending order joined by " | ". The empty clause renders as "[]".
std::string render_implicate(const Clause& c, const Ordering& ord);
/// Rendered and sorted lexicographically.
std::vector<std::string> render_implicates(const std::vector<Clause>& cs, const Ordering& ord);

}  // namespace abduce
