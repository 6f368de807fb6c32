#pragma once

#include <cstddef>
#include <vector>

#include "abduce/ordering.hpp"
#include "abduce/term.hpp"

namespace abduce {

/// Brute-force ground semantics, independent of the calculus.
///
/// Models are congruences over the finite universe of ground subterms of the
/// problem (plus the truth constant), found by case splitting over clause
/// literals with naive congruence closure.
struct OracleOptions {
    std::size_t universe_bound = 10;     // distinct ground subterms
    std::size_t candidate_bound = 200000; // clauses tried by oracle_implicates
};

/// S |= C. Throws BoundExceeded when the universe is too large and
/// InputError when S or C is not ground.
bool oracle_entails(const std::vector<Clause>& s, const Clause& c, const Signature& sig,
                    const OracleOptions& opts = {});

/// All prime ground A-flat implicates of S with at most `max_len` literals,
/// over the abducibles and declared predicates; {[]} if S is unsatisfiable.
std::vector<Clause> oracle_implicates(const std::vector<Clause>& s, const Ordering& ord, std::size_t max_len,
                                      const OracleOptions& opts = {});

}  // namespace abduce
