#include <gtest/gtest.h>

#include <random>

#include "abduce/error.hpp"
#include "support.hpp"
#include "term_gen.hpp"

using namespace abduce;
using abduce::testing::World;

namespace {

const char* kSig = R"(
abducibles a, b, c, d;
predicate p/1, leq/2;
function f/1, g/2, h/1;
)";

}  // namespace

TEST(Ordering, BasicVerdicts) {
    World w(kSig);
    const Ordering& o = w.ord();
    Term top = Term::constant(Signature::top());
    EXPECT_EQ(o.compare(w.f("f", {w.c("a")}), w.c("a")), Order::greater);
    EXPECT_EQ(o.compare(World::x(0), World::x(1)), Order::incomparable);
    EXPECT_EQ(o.compare(top, w.c("a")), Order::less);
    // declaration order among abducibles: a > b > c > d
    EXPECT_EQ(o.compare(w.c("a"), w.c("b")), Order::greater);
    EXPECT_EQ(o.compare(w.c("d"), w.c("c")), Order::less);
    // non-abducible terms dominate abducibles
    EXPECT_EQ(o.compare(w.f("h", {w.c("d")}), w.c("a")), Order::greater);
}

TEST(Ordering, GeqAFixedVerdicts) {
    World w(kSig);
    const Ordering& o = w.ord();
    EXPECT_TRUE(o.geq_a(w.f("f", {w.c("b")}), w.c("a")));
    EXPECT_FALSE(o.geq_a(w.f("f", {w.c("a")}), w.f("f", {w.c("b")})));
    Term top = Term::constant(Signature::top());
    for (Term t : {w.c("a"), World::x(0), w.f("g", {w.c("a"), World::x(2)})}) EXPECT_TRUE(o.geq_a(t, top));
    // distinct abducibles are never comparable under A
    EXPECT_FALSE(o.geq_a(w.c("a"), w.c("b")));
    EXPECT_FALSE(o.geq_a(w.c("b"), w.c("a")));
}

TEST(Ordering, Selection) {
    World w(kSig);
    const Ordering& o = w.ord();
    auto selected = [&](const Clause& c) {
        std::vector<Literal> out;
        for (auto i : o.select(c)) out.push_back(c[i]);
        return out;
    };
    Clause c1 = Clause({Literal::neq(w.c("a"), w.c("b")), Literal::eq(w.f("f", {w.c("a")}), w.c("c"))});
    EXPECT_EQ(selected(c1), std::vector<Literal>{Literal::neq(w.c("a"), w.c("b"))});
    Clause c2 = Clause({Literal::eq(w.f("f", {w.c("a")}), w.c("c")), Literal::eq(w.c("a"), w.c("b"))});
    EXPECT_EQ(selected(c2), std::vector<Literal>{Literal::eq(w.f("f", {w.c("a")}), w.c("c"))});
    Clause c3 = Clause({Literal::eq(w.c("a"), w.c("b")), Literal::eq(w.c("c"), w.c("d"))});
    EXPECT_EQ(selected(c3).size(), 2u);
}

TEST(Ordering, StrictPartialOrderTotalOnGround) {
    World w(kSig);
    const Ordering& o = w.ord();
    std::mt19937 rng(11);
    abduce::testing::TermGen gen(w, rng);
    for (int i = 0; i < 400; ++i) {
        Term s = gen.ground(3);
        Term t = gen.ground(3);
        Term u = gen.ground(3);
        Order st = o.compare(s, t);
        EXPECT_EQ(o.compare(t, s), invert(st));
        EXPECT_NE(st, Order::incomparable);
        EXPECT_EQ(st == Order::equal, s == t);
        if (st == Order::greater && o.compare(t, u) == Order::greater) EXPECT_EQ(o.compare(s, u), Order::greater);
    }
}

TEST(Ordering, StableUnderSubstitution) {
    World w(kSig);
    const Ordering& o = w.ord();
    std::mt19937 rng(12);
    abduce::testing::TermGen gen(w, rng);
    for (int i = 0; i < 400; ++i) {
        Term s = gen.term(3, 2);
        Term t = gen.term(3, 2);
        Order st = o.compare(s, t);
        if (st != Order::greater) continue;
        Substitution sigma;
        sigma.bind(0, gen.ground(2));
        sigma.bind(1, gen.ground(2));
        EXPECT_EQ(o.compare(sigma.apply(s), sigma.apply(t)), Order::greater)
            << to_string(s, w.sig()) << " vs " << to_string(t, w.sig());
    }
}

TEST(Ordering, GeqASoundAgainstCollapsesAndInstances) {
    World w(kSig);
    const Ordering& o = w.ord();
    std::mt19937 rng(13);
    abduce::testing::TermGen gen(w, rng);
    auto collapses = abduce::testing::collapse_maps(w.sig());
    for (int i = 0; i < 300; ++i) {
        Term t = gen.term(3, 2);
        Term s = gen.term(3, 2);
        if (!o.geq_a(t, s)) continue;
        for (int k = 0; k < 4; ++k) {
            Substitution sigma;
            sigma.bind(0, gen.ground(2));
            sigma.bind(1, gen.ground(2));
            for (const auto& rho : collapses) {
                Term tt = abduce::testing::collapse(sigma.apply(t), rho);
                Term ss = abduce::testing::collapse(sigma.apply(s), rho);
                Order r = o.compare(tt, ss);
                EXPECT_TRUE(r == Order::greater || r == Order::equal)
                    << to_string(t, w.sig()) << " >=A " << to_string(s, w.sig());
            }
        }
    }
}

TEST(Ordering, SelectionStableUnderReduction) {
    World w(kSig);
    const Ordering& o = w.ord();
    std::mt19937 rng(14);
    abduce::testing::TermGen gen(w, rng);
    auto collapses = abduce::testing::collapse_maps(w.sig());
    for (int i = 0; i < 200; ++i) {
        std::vector<Literal> lits;
        for (int k = 0; k < 3; ++k) lits.push_back(gen.literal(2, 0));
        Clause c(lits);
        const auto& rho = collapses[rng() % collapses.size()];
        Clause r = c.map_terms([&](Term t) { return abduce::testing::collapse(t, rho); });
        for (std::size_t k = 0; k < c.size(); ++k) {
            Literal img = c[k].map_terms([&](Term t) { return abduce::testing::collapse(t, rho); });
            if (img.lhs() == img.rhs() && img.negative()) continue;
            if (o.is_selected(r, img)) {
                EXPECT_TRUE(o.is_selected(c, c[k])) << to_string(c, w.sig());
            }
        }
    }
}

TEST(Ordering, UserConfigValidation) {
    World w(kSig);
    EXPECT_NO_THROW(OrderingConfig::from_user(w.sig(), {{"f", 3}}, {"h", "g"}));
    EXPECT_THROW(OrderingConfig::from_user(w.sig(), {{"a", 2}}, {}), InputError);
    EXPECT_THROW(OrderingConfig::from_user(w.sig(), {}, {"a"}), InputError);
    EXPECT_THROW(OrderingConfig::from_user(w.sig(), {{"p", 2}}, {}), InputError);
    EXPECT_THROW(OrderingConfig::from_user(w.sig(), {{"nope", 2}}, {}), InputError);
    auto cfg = OrderingConfig::from_user(w.sig(), {}, {"h", "f"});
    Ordering o(w.sig(), cfg);
    EXPECT_EQ(o.compare(w.f("h", {w.c("a")}), w.f("f", {w.c("a")})), Order::greater);
}
