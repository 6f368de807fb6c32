#include <gtest/gtest.h>

#include "abduce/implicates.hpp"
#include "abduce/saturation.hpp"
#include "support.hpp"

using namespace abduce;
using abduce::testing::World;

namespace {

World golden(const std::string& name) { return World(abduce::testing::read_text(std::string(GOLDEN_DIR) + "/" + name)); }

bool contains(const std::vector<Clause>& cs, const Clause& c, const Signature& sig) {
    auto want = canonical_implicate(c, sig);
    for (const auto& d : cs)
        if (canonical_implicate(d, sig) == want) return true;
    return false;
}

std::string dump(const std::vector<Clause>& cs, const World& w) {
    std::string s;
    for (const auto& c : cs) s += "\n  " + render_implicate(c, w.ord());
    return s;
}

}  // namespace

TEST(Saturation, EmptyInput) {
    World w("abducibles a, b;");
    auto r = saturate({}, w.ord(), {});
    EXPECT_EQ(r.status, Status::saturated);
    EXPECT_TRUE(r.clauses.empty());
}

TEST(Saturation, ChainExample) {
    World w = golden("chain.abd");
    auto r = saturate(w.clauses(), w.ord(), {});
    EXPECT_EQ(r.status, Status::saturated);
    auto imps = extract(r.clauses, w.sig());
    EXPECT_TRUE(contains(imps, w.clause("b = c | a != b"), w.sig())) << dump(imps, w);
}

TEST(Saturation, AssertionExample) {
    World w = golden("assertion.abd");
    auto r = saturate(w.clauses(), w.ord(), {});
    auto imps = extract(r.clauses, w.sig());
    EXPECT_TRUE(contains(imps, w.clause("a != b | c = a"), w.sig())) << dump(imps, w);
}

TEST(Saturation, RestrictedModeKeepsFlatLiteralsOutOfClauses) {
    World w = golden("redundant_literal.abd");
    SaturationConfig cfg;
    cfg.mode = Mode::sar;
    auto r = saturate(w.clauses(), w.ord(), cfg);
    EXPECT_EQ(r.status, Status::saturated);
    for (const auto& c : r.clauses) {
        for (std::size_t i : w.ord().select(c->clause)) {
            const Literal& l = c->clause[i];
            EXPECT_FALSE(l.is_ground() && l.positive() && is_a_flat(l, w.sig())) << to_string(*c, w.sig());
        }
    }
}

TEST(Saturation, RestrictedThenPipeline) {
    World w("abducibles a, b, c, d; clause a = b | c = d;");
    SaturationConfig cfg;
    cfg.mode = Mode::sar;
    auto r = saturate(w.clauses(), w.ord(), cfg);
    auto imps = extract(r.clauses, w.sig());
    EXPECT_TRUE(contains(imps, w.clause("a = b | c = d"), w.sig())) << dump(imps, w);
    auto p = combine_pipeline(w.clauses(), w.ord(), {});
    ASSERT_EQ(p.implicates.size(), 1u) << dump(p.implicates, w);
    EXPECT_TRUE(contains(p.implicates, w.clause("a = b | c = d"), w.sig()));
}

TEST(Saturation, FullModeFindsWhatRestrictedMisses) {
    World w = golden("sar_vs_sa.abd");
    SaturationConfig sar;
    sar.mode = Mode::sar;
    auto r = extract(saturate(w.clauses(), w.ord(), sar).clauses, w.sig());
    EXPECT_FALSE(contains(r, w.clause("b != d"), w.sig())) << dump(r, w);
    EXPECT_TRUE(contains(r, w.clause("a = c"), w.sig())) << dump(r, w);
    auto f = extract(saturate(w.clauses(), w.ord(), {}).clauses, w.sig());
    EXPECT_TRUE(contains(f, w.clause("b != d"), w.sig())) << dump(f, w);
}

TEST(Saturation, PositiveFilterIsHereditary) {
    World w = golden("chain.abd");
    SaturationConfig cfg;
    cfg.filter.positive_only = true;
    auto r = saturate(w.clauses(), w.ord(), cfg);
    for (const auto& c : r.clauses) EXPECT_FALSE(c->constraint.has_positive()) << to_string(*c, w.sig());
}

TEST(Saturation, LimitsAreReported) {
    World w = golden("monotone.abd");
    SaturationConfig cfg;
    cfg.max_clauses = 50;
    auto r = saturate(w.clauses(), w.ord(), cfg);
    EXPECT_EQ(r.status, Status::limit_reached);
    EXPECT_FALSE(r.limit.empty());
    EXPECT_EQ(to_string(Status::limit_reached), "limit-reached");
}

TEST(Saturation, TraceRecords) {
    World w = golden("chain.abd");
    std::vector<std::string> lines;
    saturate(w.clauses(), w.ord(), {}, [&](const std::string& s) { lines.push_back(s); });
    ASSERT_FALSE(lines.empty());
    bool derived = false;
    for (const auto& l : lines) {
        EXPECT_EQ(l.rfind("event=", 0), 0u) << l;
        if (l.rfind("event=derived", 0) == 0) {
            derived = true;
            EXPECT_NE(l.find(" rule="), std::string::npos);
            EXPECT_NE(l.find(" parents="), std::string::npos);
        }
    }
    EXPECT_TRUE(derived);
}

TEST(Saturation, Deterministic) {
    World w = golden("redundant_literal.abd");
    auto a = saturate(w.clauses(), w.ord(), {});
    auto b = saturate(w.clauses(), w.ord(), {});
    ASSERT_EQ(a.clauses.size(), b.clauses.size());
    for (std::size_t i = 0; i < a.clauses.size(); ++i) {
        EXPECT_TRUE(a.clauses[i]->same_content(*b.clauses[i]));
        EXPECT_EQ(a.clauses[i]->id, b.clauses[i]->id);
    }
}
