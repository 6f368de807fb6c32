#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abduce/calculus.hpp"
#include "abduce/ordering.hpp"
#include "abduce/term.hpp"

namespace abduce {

enum class Mode { sa, sar };

/// Restriction on the constraint part of every kept clause. All set fields
/// must hold (conjunction). Each one describes a class of clauses closed
/// under subsumption, judged on X^c.
struct PFilter {
    std::optional<std::size_t> max_literals;
    bool positive_only = false;  // X^c positive: X holds negative literals only
    bool negative_only = false;  // X^c negative: X holds positive literals only
    std::optional<std::vector<Clause>> entails_one_of;  // X^c entails one of these

    bool trivial() const { return !max_literals && !positive_only && !negative_only && !entails_one_of; }
    bool accepts(const ASet& x, const Signature& sig) const;
};

struct SaturationConfig {
    Mode mode = Mode::sa;
    PFilter filter;
    std::size_t max_clauses = 100000;
    unsigned max_weight = 60;
    std::size_t max_iterations = 200000;
    /// Predicates for lazy substitutivity; empty means every declared predicate.
    std::optional<std::vector<SymbolId>> substitutivity_predicates;
};

enum class Status { saturated, limit_reached };

struct SaturationResult {
    std::vector<AClausePtr> clauses;  // final clause set, by id
    Status status = Status::saturated;
    std::size_t generated = 0;        // clauses kept over the whole run
    std::size_t iterations = 0;
    std::string limit;                // which limit tripped, if any
};

/// Receives one line-delimited trace record per event.
using EventSink = std::function<void(const std::string&)>;

SaturationResult saturate(const std::vector<Clause>& input, const Ordering& ord, const SaturationConfig& config,
                          const EventSink& sink = {});

struct PipelineResult {
    std::vector<Clause> implicates;  // C_A of the final set, minimized when asked
    std::vector<Clause> intermediate;  // C_A after the restricted stage
    Status status = Status::saturated;
    std::size_t generated = 0;
};

/// Restricted saturation, extraction, then full saturation of the extracted
/// implicates filtered to clauses entailing one of them. The configured
/// filter applies to the second stage only.
PipelineResult combine_pipeline(const std::vector<Clause>& input, const Ordering& ord, SaturationConfig limits,
                                bool prime = true, const EventSink& sink = {});

std::string to_string(Status s);

}  // namespace abduce
