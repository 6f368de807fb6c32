#include "abduce/saturation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "abduce/implicates.hpp"

namespace abduce {

std::string to_string(Status s) { return s == Status::saturated ? "saturated" : "limit-reached"; }

bool PFilter::accepts(const ASet& x, const Signature& sig) const {
    if (trivial()) return true;
    if (max_literals && x.literals().size() > *max_literals) return false;
    if (positive_only && x.has_positive()) return false;
    if (negative_only && x.has_negative()) return false;
    if (entails_one_of) {
        std::vector<Clause> instances;
        x.for_each_instance(sig, [&instances](const Substitution&, const ASet& inst) {
            std::vector<Literal> lits;
            for (const auto& l : inst.literals()) lits.push_back(l.complement());
            instances.emplace_back(std::move(lits));
            return true;
        });
        if (instances.empty()) return true;  // unsatisfiable constraint: a tautology anyway
        const auto& targets = *entails_one_of;
        if (instances.size() == 1) {
            return std::any_of(targets.begin(), targets.end(),
                               [&](const Clause& t) { return entails_ground(instances[0], t, sig); });
        }
        return std::any_of(targets.begin(), targets.end(),
                           [&](const Clause& t) { return entails_set(instances, t, sig); });
    }
    return true;
}

namespace {

std::string join_ids(const std::vector<unsigned>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
    }
    return out.empty() ? "-" : out;
}

/// Cheap necessary conditions for subsumption. Clause parts are matched
/// syntactically, so every symbol occurrence of the general clause must be
/// found in the specific one.
struct Features {
    unsigned positive = 0;
    unsigned negative = 0;
    std::size_t constraint = 0;
    std::vector<std::pair<SymbolId, unsigned>> symbols;  // sorted by id
};

void count_symbols(Term t, std::map<SymbolId, unsigned>& out) {
    if (t.is_variable()) return;
    ++out[t.symbol()];
    for (Term a : t.args()) count_symbols(a, out);
}

Features features_of(const AClause& c) {
    Features f;
    std::map<SymbolId, unsigned> counts;
    for (const auto& l : c.clause) {
        ++(l.positive() ? f.positive : f.negative);
        count_symbols(l.lhs(), counts);
        count_symbols(l.rhs(), counts);
    }
    f.constraint = c.constraint.diseqs().size() + c.constraint.preds().size();
    f.symbols.assign(counts.begin(), counts.end());
    return f;
}

// Queue key for the "lightest" pick. Clausal symbols count double: a clause
// that has moved literals into its constraint is closer to an implicate.
unsigned priority(const AClause& c) { return 2 * c.clause.weight() + c.constraint.weight(); }

bool may_subsume(const Features& g, const Features& s) {
    if (g.positive > s.positive || g.negative > s.negative || g.constraint > s.constraint) return false;
    auto it = s.symbols.begin();
    for (const auto& [sym, n] : g.symbols) {
        while (it != s.symbols.end() && it->first < sym) ++it;
        if (it == s.symbols.end() || it->first != sym || it->second < n) return false;
    }
    return true;
}

class Saturator {
public:
    Saturator(const Ordering& ord, const SaturationConfig& cfg, const EventSink& sink)
        : ord_(ord), sig_(ord.signature()), cfg_(cfg), sink_(sink), calc_(ord, make_options(ord, cfg)) {}

    SaturationResult run(const std::vector<Clause>& input) {
        for (const auto& c : input) {
            AClause a;
            a.clause = c;
            consider(std::move(a));
            if (stop_) break;
        }
        bool pick_light = false;
        while (!stop_ && !by_age_.empty()) {
            if (result_.iterations >= cfg_.max_iterations) {
                trip("max-iterations");
                break;
            }
            ++result_.iterations;
            unsigned id = pick_light ? by_weight_.begin()->second : *by_age_.begin();
            pick_light = !pick_light;
            AClausePtr given = passive_.at(id);
            remove_passive(id);
            activate(given);
        }
        for (const auto& [id, c] : active_) result_.clauses.push_back(c);
        for (const auto& [id, c] : passive_) result_.clauses.push_back(c);
        std::sort(result_.clauses.begin(), result_.clauses.end(),
                  [](const AClausePtr& a, const AClausePtr& b) { return a->id < b->id; });
        return std::move(result_);
    }

private:
    static CalculusOptions make_options(const Ordering& ord, const SaturationConfig& cfg) {
        CalculusOptions o;
        o.restricted = cfg.mode == Mode::sar;
        o.substitutivity_predicates = cfg.substitutivity_predicates.value_or(ord.signature().predicates());
        return o;
    }

    void emit(const std::string& event, const AClause& c, const std::string& extra = {}) {
        if (!sink_) return;
        std::ostringstream line;
        line << "event=" << event << " id=" << c.id << " rule=" << c.rule << " parents=" << join_ids(c.parents);
        if (!extra.empty()) line << ' ' << extra;
        line << " clause=" << to_string(c, sig_);
        sink_(line.str());
    }

    void trip(const std::string& what) {
        result_.status = Status::limit_reached;
        if (result_.limit.empty()) result_.limit = what;
    }

    bool subsumes(unsigned general, const AClause& specific, const Features& f) const {
        return may_subsume(features_.at(general), f) && calc_.subsumes(*clause(general), specific);
    }

    const AClausePtr& clause(unsigned id) const {
        auto it = active_.find(id);
        return it != active_.end() ? it->second : passive_.at(id);
    }

    bool subsumed_by_existing(const AClause& c, const Features& f) const {
        auto check = [&](const std::map<unsigned, AClausePtr>& pool) {
            return std::any_of(pool.begin(), pool.end(), [&](const auto& kv) { return subsumes(kv.first, c, f); });
        };
        return check(active_) || check(passive_);
    }

    void consider(AClause c) {
        if (cfg_.mode == Mode::sar) c = assert_away(std::move(c));
        c = canonical_vars(std::move(c));
        if (calc_.is_tautology(c)) return;
        if (!cfg_.filter.accepts(c.constraint, sig_)) return;
        if (c.weight() > cfg_.max_weight) {
            trip("max-weight");
            return;
        }
        Features f = features_of(c);
        if (subsumed_by_existing(c, f)) return;
        if (result_.generated >= cfg_.max_clauses) {
            trip("max-clauses");
            stop_ = true;
            return;
        }
        c.id = next_id_++;
        ++result_.generated;
        auto ptr = std::make_shared<const AClause>(std::move(c));
        features_.emplace(ptr->id, std::move(f));
        passive_.emplace(ptr->id, ptr);
        by_age_.insert(ptr->id);
        by_weight_.emplace(priority(*ptr), ptr->id);
        emit(ptr->rule.find("assertion") != std::string::npos ? "asserted" : "derived", *ptr);
    }

    // Restricted mode: a selected ground flat literal can only ever feed
    // assertion, and the asserted clause is equivalent to its premise, so the
    // premise is replaced. Literals with variables stay: their instances need
    // not be flat.
    AClause assert_away(AClause c) const {
        bool changed = false;
        for (;;) {
            std::optional<std::size_t> pick;
            for (std::size_t i : ord_.select(c.clause)) {
                const Literal& l = c.clause[i];
                if (l.is_ground() && is_a_flat(l, sig_) && (l.positive() || l.is_predicate_atom())) {
                    pick = i;
                    break;
                }
            }
            if (!pick) break;
            c.constraint.add(c.clause[*pick].complement(), sig_);
            c.clause = c.clause.without(*pick);
            changed = true;
        }
        if (changed) c.rule += "+assertion";
        return c;
    }

    void remove_passive(unsigned id) {
        auto it = passive_.find(id);
        by_age_.erase(id);
        by_weight_.erase({priority(*it->second), id});
        passive_.erase(it);
    }

    void activate(const AClausePtr& given) {
        const Features& gf = features_.at(given->id);
        for (const auto& [id, a] : active_) {
            if (subsumes(id, *given, gf)) {
                emit("subsumed", *given, "by=" + std::to_string(id));
                features_.erase(given->id);
                return;
            }
        }
        // backward subsumption
        std::vector<unsigned> doomed;
        for (const auto& [id, a] : active_) {
            if (may_subsume(gf, features_.at(id)) && calc_.subsumes(*given, *a)) doomed.push_back(id);
        }
        for (unsigned id : doomed) {
            emit("subsumed", *active_.at(id), "by=" + std::to_string(given->id));
            active_.erase(id);
            features_.erase(id);
        }
        doomed.clear();
        for (const auto& [id, p] : passive_) {
            if (may_subsume(gf, features_.at(id)) && calc_.subsumes(*given, *p)) doomed.push_back(id);
        }
        for (unsigned id : doomed) {
            emit("subsumed", *passive_.at(id), "by=" + std::to_string(given->id));
            remove_passive(id);
            features_.erase(id);
        }

        active_.emplace(given->id, given);
        std::vector<AClause> conclusions = calc_.infer_unary(*given);
        for (const auto& [id, a] : active_) {
            if (id == given->id) continue;
            auto more = calc_.infer_binary(*given, *a);
            std::move(more.begin(), more.end(), std::back_inserter(conclusions));
        }
        for (auto& c : conclusions) {
            consider(std::move(c));
            if (stop_) return;
        }
    }

    const Ordering& ord_;
    const Signature& sig_;
    const SaturationConfig& cfg_;
    const EventSink& sink_;
    Calculus calc_;

    std::map<unsigned, AClausePtr> active_;
    std::map<unsigned, AClausePtr> passive_;
    std::map<unsigned, Features> features_;
    std::set<unsigned> by_age_;
    std::set<std::pair<unsigned, unsigned>> by_weight_;
    unsigned next_id_ = 1;
    bool stop_ = false;
    SaturationResult result_;
};

}  // namespace

SaturationResult saturate(const std::vector<Clause>& input, const Ordering& ord, const SaturationConfig& config,
                          const EventSink& sink) {
    Saturator s(ord, config, sink);
    return s.run(input);
}

PipelineResult combine_pipeline(const std::vector<Clause>& input, const Ordering& ord, SaturationConfig limits,
                                bool prime, const EventSink& sink) {
    const Signature& sig = ord.signature();
    PipelineResult out;

    // The user filter waits for the second stage: restricted saturation only
    // promises an equivalent implicate set, and a filtered implicate can
    // follow from unfiltered ones.
    SaturationConfig first = limits;
    first.mode = Mode::sar;
    first.filter = PFilter{};
    auto r1 = saturate(input, ord, first, sink);
    out.intermediate = extract(r1.clauses, sig);
    out.generated = r1.generated;
    if (r1.status == Status::limit_reached) out.status = Status::limit_reached;

    SaturationConfig second = limits;
    second.mode = Mode::sa;
    second.filter.entails_one_of = out.intermediate;
    auto r2 = saturate(out.intermediate, ord, second, sink);
    out.generated += r2.generated;
    if (r2.status == Status::limit_reached) out.status = Status::limit_reached;

    out.implicates = extract(r2.clauses, sig);
    if (prime) out.implicates = minimize(out.implicates, ord);
    return out;
}

}  // namespace abduce
