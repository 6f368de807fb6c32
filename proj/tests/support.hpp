#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "abduce/ordering.hpp"
#include "abduce/problem.hpp"
#include "abduce/term.hpp"

namespace abduce::testing {

/// A parsed problem plus its default ordering, pinned in memory.
class World {
public:
    explicit World(std::string_view text)
        : problem_(std::make_unique<Problem>(parse_problem(text))),
          ord_(std::make_unique<Ordering>(problem_->sig, problem_->ordering_config())) {}

    const Signature& sig() const { return problem_->sig; }
    const Ordering& ord() const { return *ord_; }
    const std::vector<Clause>& clauses() const { return problem_->clauses; }
    const Problem& problem() const { return *problem_; }

    SymbolId id(std::string_view name) const {
        auto s = sig().find(name);
        if (!s) throw std::runtime_error("no symbol " + std::string(name));
        return *s;
    }
    Term c(std::string_view name) const { return Term::constant(id(name)); }
    Term f(std::string_view name, std::initializer_list<Term> args) const { return Term::app(id(name), args); }
    static Term x(VarId n) { return Term::variable(n); }

    Clause clause(std::string_view text) const { return parse_clause(text, sig()); }
    Literal lit(std::string_view text) const { return clause(text)[0]; }

private:
    std::unique_ptr<Problem> problem_;
    std::unique_ptr<Ordering> ord_;
};

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace abduce::testing
