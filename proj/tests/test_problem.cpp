#include <gtest/gtest.h>

#include <filesystem>

#include "abduce/error.hpp"
#include "abduce/problem.hpp"
#include "support.hpp"

using namespace abduce;

namespace {

std::vector<std::string> golden_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(GOLDEN_DIR))
        if (e.path().extension() == ".abd") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Problem, ParsesDeclarationsAndClauses) {
    Problem p = parse_problem(R"(
% comment
abducibles a, b;
predicate p/1;
function f/2;
clause f(X, a) = b | ~p(X) | a != b;
clause [];
)");
    ASSERT_EQ(p.clauses.size(), 2u);
    EXPECT_EQ(p.clauses[0].size(), 3u);
    EXPECT_TRUE(p.clauses[1].empty());
    EXPECT_EQ(p.sig.abducibles().size(), 2u);
    EXPECT_TRUE(p.sig.is_predicate(*p.sig.find("p")));
}

TEST(Problem, InfersSymbols) {
    Problem p = parse_problem("abducibles a; clause q(g(a, a));");
    ASSERT_TRUE(p.sig.find("q"));
    EXPECT_TRUE(p.sig.is_predicate(*p.sig.find("q")));
    EXPECT_EQ(p.sig.symbol(*p.sig.find("g")).arity, 2u);
}

TEST(Problem, VariablesAreClauseScoped) {
    Problem p = parse_problem("abducibles a; function f/1; clause f(X) = a; clause f(Y) = X;");
    EXPECT_EQ(p.clauses[0].var_bound(), 1u);
    EXPECT_EQ(p.clauses[1].var_bound(), 2u);
}

TEST(Problem, Errors) {
    EXPECT_THROW(parse_problem("abducibles a; clause f(a) = a; clause f(a, a) = a;"), InputError);
    EXPECT_THROW(parse_problem("abducibles a; predicate p/1; clause p(a) = a;"), InputError);
    EXPECT_THROW(parse_problem("abducibles a; predicate p/1; clause f(p(a)) = a;"), InputError);
    EXPECT_THROW(parse_problem("abducibles a; clause a = ;"), InputError);
    EXPECT_THROW(parse_problem("abducibles a; clause a = a"), InputError);
    EXPECT_THROW(parse_problem("abducibles a; function a/1;"), InputError);
    try {
        parse_problem("abducibles a;\nclause a = ;");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_GT(e.column(), 0u);
    }
}

TEST(Problem, WeightsAndPrecedence) {
    Problem p = parse_problem("abducibles a; function f/1, g/1; weight f = 3; precedence g, f; clause f(a) = g(a);");
    EXPECT_EQ(p.weights.at("f"), 3u);
    Ordering o(p.sig, p.ordering_config());
    Term fa = Term::app(*p.sig.find("f"), {Term::constant(*p.sig.find("a"))});
    Term ga = Term::app(*p.sig.find("g"), {Term::constant(*p.sig.find("a"))});
    EXPECT_EQ(o.compare(fa, ga), Order::greater);
    EXPECT_THROW(parse_problem("abducibles a; weight a = 2;").ordering_config(), InputError);
}

TEST(Problem, RenderParseFixpointOnGoldenCorpus) {
    auto files = golden_files();
    ASSERT_FALSE(files.empty());
    for (const auto& f : files) {
        Problem p1 = parse_problem(abduce::testing::read_text(f));
        std::string r1 = render_problem(p1);
        Problem p2 = parse_problem(r1);
        EXPECT_EQ(render_problem(p2), r1) << f;
        EXPECT_EQ(p2.clauses, p1.clauses) << f;
    }
}
