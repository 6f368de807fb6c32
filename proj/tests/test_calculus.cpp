#include <gtest/gtest.h>

#include <random>

#include "abduce/calculus.hpp"
#include "abduce/implicates.hpp"
#include "abduce/oracle.hpp"
#include "support.hpp"

using namespace abduce;
using abduce::testing::World;

namespace {

AClause ac(const World& w, std::string_view clause, std::vector<std::string_view> constraint = {}) {
    AClause c;
    c.clause = w.clause(clause);
    std::vector<Literal> lits;
    for (auto l : constraint) lits.push_back(w.lit(l));
    c.constraint = ASet::of(lits, w.sig());
    return c;
}

std::string dump(const std::vector<AClause>& cs, const World& w) {
    std::string s;
    for (const auto& c : cs) s += "\n  " + to_string(c, w.sig());
    return s;
}

bool has(const std::vector<AClause>& cs, const AClause& want) {
    AClause cw = canonical_vars(want);
    for (const auto& c : cs)
        if (canonical_vars(c).same_content(cw)) return true;
    return false;
}

/// [C | X] read as the clause C | ~X.
Clause as_clause(const AClause& c) {
    std::vector<Literal> lits(c.clause.begin(), c.clause.end());
    for (const auto& l : c.constraint.literals()) lits.push_back(l.complement());
    return Clause(lits);
}

const char* kChain = R"(
abducibles a, b, c;
function g/1, f/1, d/0;
)";

}  // namespace

TEST(Calculus, SuperpositionChainExample) {
    World w(kChain);
    Calculus calc(w.ord(), {});
    auto r1 = calc.superposition(ac(w, "g(b) = b"), ac(w, "g(a) = d"));
    EXPECT_TRUE(has(r1, ac(w, "b = d", {"a = b"}))) << dump(r1, w);
    auto r2 = calc.superposition(ac(w, "d = c"), ac(w, "b = d", {"a = b"}));
    EXPECT_TRUE(has(r2, ac(w, "b = c", {"a = b"}))) << dump(r2, w);
}

TEST(Calculus, SuperpositionIntoConstraintVariable) {
    World w("abducibles a, b, c, d, e;");
    Calculus calc(w.ord(), {});
    auto r = calc.superposition(ac(w, "X = c", {"X != a"}), ac(w, "Y = d", {"Y != b"}));
    EXPECT_TRUE(has(r, ac(w, "c = d", {"X != a", "X != b"}))) << dump(r, w);
    // a variable absent from the constraint is not a superposition target
    auto none = calc.superposition(ac(w, "X = c", {"X != a"}), ac(w, "Y = d"));
    EXPECT_FALSE(has(none, ac(w, "c = d", {"X != a"}))) << dump(none, w);
}

TEST(Calculus, Reflection) {
    World w("abducibles a, b, c, d; function f/2, g/1, h/1;");
    Calculus calc(w.ord(), {});
    auto r = calc.reflection(ac(w, "f(a, b) != f(c, d)"));
    EXPECT_TRUE(has(r, ac(w, "[]", {"a = c", "b = d"}))) << dump(r, w);
    EXPECT_TRUE(calc.reflection(ac(w, "g(a) != h(a)")).empty());
    auto r2 = calc.reflection(ac(w, "g(a) != g(a) | a = b"));
    EXPECT_TRUE(has(r2, ac(w, "a = b"))) << dump(r2, w);
}

TEST(Calculus, Factorization) {
    World w("abducibles a, b, c; function f/1;");
    Calculus calc(w.ord(), {});
    auto r = calc.factorization(ac(w, "a = b | a = c"));
    EXPECT_TRUE(has(r, ac(w, "b != c | a = b")) || has(r, ac(w, "b != c | a = c"))) << dump(r, w);
    auto r2 = calc.factorization(ac(w, "f(X) = c | f(a) = c"));
    EXPECT_TRUE(has(r2, ac(w, "f(a) = c"))) << dump(r2, w);
}

TEST(Calculus, Assertion) {
    World w("abducibles a, b, c, i, j; predicate leq/2; function f/1;");
    Calculus calc(w.ord(), {});
    auto r = calc.assertion(ac(w, "b = c", {"a = b"}));
    EXPECT_TRUE(has(r, ac(w, "[]", {"a = b", "b != c"}))) << dump(r, w);
    auto r2 = calc.assertion(ac(w, "~leq(i, j)", {"a = b"}));
    EXPECT_TRUE(has(r2, ac(w, "[]", {"leq(i, j)", "a = b"}))) << dump(r2, w);
    EXPECT_TRUE(calc.assertion(ac(w, "f(a) = b")).empty());
}

TEST(Calculus, Substitutivity) {
    World w("abducibles a, b; predicate p/1;");
    Calculus calc(w.ord(), {false, {w.id("p")}});
    auto refl = calc.substitutivity({std::nullopt}, w.id("p"), true);
    ASSERT_TRUE(refl);
    EXPECT_TRUE(refl->same_content(ac(w, "p(X)", {"p(X)"})) || has({*refl}, ac(w, "p(X)", {"p(X)"})))
        << to_string(*refl, w.sig());
    EXPECT_TRUE(calc.is_tautology(*refl));

    auto lazy = calc.substitutivity_lazy(ac(w, "a = b"));
    EXPECT_TRUE(has(lazy, ac(w, "p(a)", {"p(b)"}))) << dump(lazy, w);
    EXPECT_TRUE(has(lazy, ac(w, "p(b)", {"p(a)"}))) << dump(lazy, w);
    EXPECT_TRUE(has(lazy, ac(w, "~p(a)", {"~p(b)"}))) << dump(lazy, w);
}

TEST(Calculus, Tautologies) {
    World w("abducibles a, b, c, d, e, f;");
    Calculus calc(w.ord(), {});
    EXPECT_TRUE(calc.is_tautology(ac(w, "a = b", {"a = b"})));
    EXPECT_TRUE(calc.is_tautology(ac(w, "c = d", {"a = b", "a != b"})));
    EXPECT_TRUE(calc.is_tautology(ac(w, "a != b", {"a != b"})));
    EXPECT_FALSE(calc.is_tautology(ac(w, "a != b")));
    EXPECT_TRUE(calc.is_tautology(ac(w, "a = c", {"a = b", "b = c"})));
    EXPECT_FALSE(calc.is_tautology(ac(w, "a = c", {"a = b"})));
}

TEST(Calculus, Subsumption) {
    World w("abducibles a, b, c, d, e, f; function g/2;");
    Calculus calc(w.ord(), {});
    EXPECT_TRUE(calc.subsumes(ac(w, "[]", {"a = b"}), ac(w, "c = d", {"a = b", "e != f"})));
    AClause c = ac(w, "g(X, a) = b | c = d", {"X != e"});
    EXPECT_TRUE(calc.subsumes(c, c));
    EXPECT_TRUE(calc.subsumes(ac(w, "g(X, a) = b", {"X != e"}), ac(w, "g(c, a) = b | a = f", {"c != e"})));
    EXPECT_FALSE(calc.subsumes(ac(w, "g(X, X) = b"), ac(w, "g(c, a) = b")));
    EXPECT_FALSE(calc.subsumes(ac(w, "c = d", {"a = b"}), ac(w, "c = d")));
    // constraint membership is judged modulo the target's equations
    EXPECT_TRUE(calc.subsumes(ac(w, "[]", {"a != c"}), ac(w, "[]", {"a = b", "b != c"})));
}

TEST(Calculus, RestrictedModeBlocksFlatLiterals) {
    World w("abducibles a, b, c; function f/1;");
    Calculus full(w.ord(), {});
    Calculus sar(w.ord(), {true, {}});
    AClause from = ac(w, "a = b");
    AClause into = ac(w, "f(a) = c");
    EXPECT_FALSE(full.superposition(from, into).empty());
    EXPECT_TRUE(sar.superposition(from, into).empty());
    EXPECT_FALSE(sar.assertion(ac(w, "a = b")).empty());
    EXPECT_FALSE(sar.reflection(ac(w, "f(a) != f(b)")).empty());
}

TEST(Calculus, AssertionRoundTrip) {
    World w("abducibles a, b, c, d; predicate p/1;");
    Calculus calc(w.ord(), {});
    for (auto text : {"a = b | c = d | ~p(a)", "a = b | p(c)", "c = d"}) {
        Clause original = w.clause(text);
        std::vector<AClause> frontier{ac(w, text)}, done;
        while (!frontier.empty()) {
            AClause c = frontier.back();
            frontier.pop_back();
            if (c.is_empty()) {
                done.push_back(c);
                continue;
            }
            for (auto& n : calc.assertion(c)) frontier.push_back(n);
        }
        ASSERT_FALSE(done.empty()) << text;
        for (const auto& d : done) {
            Clause back = as_clause(d);
            EXPECT_TRUE(entails_ground(back, original, w.sig()) && entails_ground(original, back, w.sig()))
                << text << " vs " << to_string(back, w.sig());
        }
    }
}

TEST(Calculus, GroundInferencesAreSound) {
    World w("abducibles a, b, c; predicate p/1; function f/1, g/2;");
    Calculus calc(w.ord(), {});
    std::mt19937 rng(41);
    std::vector<Term> pool{w.c("a"), w.c("b"), w.c("c")};
    pool.push_back(w.f("f", {w.c("a")}));
    pool.push_back(w.f("f", {w.c("b")}));
    pool.push_back(w.f("g", {w.c("a"), w.c("c")}));
    pool.push_back(w.f("g", {w.c("b"), w.c("c")}));
    auto lit = [&]() -> Literal {
        if (rng() % 5 == 0) return Literal::atom(w.f("p", {pool[rng() % 3]}), rng() % 2);
        return Literal(pool[rng() % pool.size()], pool[rng() % pool.size()], rng() % 3 != 0);
    };
    auto random_clause = [&] {
        std::vector<Literal> ls;
        int n = 1 + rng() % 2;
        for (int i = 0; i < n; ++i) ls.push_back(lit());
        AClause c;
        c.clause = Clause(ls);
        return c;
    };
    OracleOptions opts;
    opts.universe_bound = 64;
    int conclusions = 0;
    for (int round = 0; round < 150; ++round) {
        AClause p1 = random_clause(), p2 = random_clause();
        std::vector<Clause> premises{as_clause(p1), as_clause(p2)};
        auto out = calc.infer_binary(p1, p2);
        for (auto& c : calc.infer_unary(p1)) out.push_back(c);
        for (const auto& c : out) {
            Clause cc = as_clause(c);
            if (!cc.is_ground()) continue;
            ++conclusions;
            EXPECT_TRUE(oracle_entails(premises, cc, w.sig(), opts))
                << to_string(p1, w.sig()) << " , " << to_string(p2, w.sig()) << " |- " << to_string(c, w.sig());
        }
    }
    EXPECT_GT(conclusions, 50);
}
