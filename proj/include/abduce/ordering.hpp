#pragma once

#include <map>
#include <string>
#include <vector>

#include "abduce/term.hpp"

namespace abduce {

enum class Order { greater, less, equal, incomparable };

Order invert(Order o);

/// Weights and precedence of a Knuth-Bendix ordering.
///
/// Only non-abducible symbols are user-tunable. Abducibles always get the
/// variable weight and sit just above the truth constant in the precedence,
/// in declaration order, so that f(t) > a holds for every abducible a and
/// every non-abducible f. Predicate symbols share one weight.
struct OrderingConfig {
    std::vector<unsigned> weight;      // indexed by SymbolId
    std::vector<unsigned> precedence;  // indexed by SymbolId, larger is greater
    unsigned variable_weight = 1;

    /// Weight 1 everywhere, non-abducible precedence by declaration order
    /// (earlier declared is greater).
    static OrderingConfig defaults(const Signature& sig);

    /// Starts from defaults(), applies user weights, and moves the symbols of
    /// `ranking` (greatest first) above every other non-abducible symbol.
    /// Throws InputError when a request conflicts with the fixed constraints.
    static OrderingConfig from_user(const Signature& sig, const std::map<std::string, unsigned>& weights,
                                    const std::vector<std::string>& ranking);

    /// Throws InputError unless the admissibility and abducible constraints hold.
    void validate(const Signature& sig) const;
};

/// The fixed reduction ordering and its abducible-renaming-safe variant.
///
/// The object keeps a pointer to the signature, which must outlive it.
class Ordering {
public:
    Ordering(const Signature& sig, OrderingConfig config);

    const Signature& signature() const { return *sig_; }
    const OrderingConfig& config() const { return config_; }

    /// KBO. Total on ground terms.
    Order compare(Term s, Term t) const;

    /// KBO that never orders two distinct abducibles against each other:
    /// `greater` is only returned when s > t holds after every renaming of
    /// abducibles and every ground instantiation.
    Order compare_blind(Term s, Term t) const;

    /// Sound under-approximation of "t is always at least s, whatever the
    /// abducible identifications and ground instances".
    bool geq_a(Term t, Term s) const;
    /// Strict counterpart of geq_a.
    bool gt_a(Term t, Term s) const;

    /// Literals compared as multisets {{t},{s}} (positive) or {{t,s}} (negative).
    Order compare(const Literal& l, const Literal& k) const;
    Order compare_blind(const Literal& l, const Literal& k) const;

    /// Multiset extension of the literal ordering.
    Order compare(const Clause& c, const Clause& d) const;

    /// Indices of selected literals: every negative literal if there is one,
    /// otherwise each positive literal not strictly dominated by another.
    std::vector<std::size_t> select(const Clause& c) const;
    bool is_selected(const Clause& c, const Literal& l) const;

    unsigned weight(Term t) const;

private:
    Order kbo(Term s, Term t, bool blind) const;
    Order compare_literal(const Literal& l, const Literal& k, bool blind) const;

    const Signature* sig_;
    OrderingConfig config_;
};

}  // namespace abduce
