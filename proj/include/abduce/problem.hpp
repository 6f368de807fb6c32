#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "abduce/ordering.hpp"
#include "abduce/term.hpp"

namespace abduce {

/// A parsed problem file.
///
/// Grammar (statements end with ';', '%' starts a line comment):
///
///   abducibles a, b, c;
///   predicate p/2, q/1;
///   function f/2;
///   weight f = 3;
///   precedence f, g;          % greatest first
///   clause g(f(X)) = d | p(a) | ~q(b) | a != b;
///   clause [];
///
/// Identifiers starting with an uppercase letter are variables, scoped to
/// their clause. Undeclared symbols are inferred: an atom standing alone as a
/// literal is a predicate, anything else a function.
///
/// Ordering objects keep a pointer into `sig`, so a Problem must stay put
/// while one is alive.
struct Problem {
    Signature sig;
    std::vector<Clause> clauses;
    std::map<std::string, unsigned> weights;
    std::vector<std::string> precedence;

    OrderingConfig ordering_config() const;
};

/// Throws InputError (with line and column) on syntax errors, arity
/// conflicts, and predicates used below a function or inside an equation.
Problem parse_problem(std::string_view text);

/// One clause in file syntax (`[]` for the empty clause), over the symbols
/// of `sig` only; terms are built in the global store, so they compare
/// equal to terms of any problem sharing that signature.
Clause parse_clause(std::string_view text, const Signature& sig);

/// Text that parses back to the same problem.
std::string render_problem(const Problem& p);

}  // namespace abduce
