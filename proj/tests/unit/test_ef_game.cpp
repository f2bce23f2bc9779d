#include <gtest/gtest.h>

#include "atomkit/ef_game.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/rng.hpp"
#include "oracles/oracles.hpp"

using namespace atomkit;

namespace {

RelationalStructure random_structure(Rng& g, std::size_t n)
{
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < n; ++i)
        atoms.push_back("x" + std::to_string(i));
    RelationTable p{"P", 1, std::vector<unsigned char>(n)};
    RelationTable e{"E", 2, std::vector<unsigned char>(n * n)};
    for (auto& v : p.table)
        v = g() & 1;
    for (auto& v : e.table)
        v = uniform_below(g, 3) == 0;
    return RelationalStructure(atoms, {p, e});
}

bool minimax(const RelationalStructure& a, const RelationalStructure& b, std::size_t mu)
{
    std::vector<std::pair<std::size_t, std::size_t>> play;
    return oracle::ef_minimax(a, b, play, mu);
}

PartitionStructure single(std::size_t n) { return PartitionStructure({"u"}, {n}, {"u"}); }

} // namespace

TEST(Ef, IdenticalStructuresExistsWins)
{
    auto s = build_maddux(3);
    for (std::size_t mu = 1; mu <= 4; ++mu) {
        auto o = ef_decide(s, s, mu);
        EXPECT_EQ(o.winner, Player::Exists);
        EXPECT_TRUE(replay_ef_certificate(relational_view(s), relational_view(s), o));
    }
    auto [a, b] = build_partition_pair({{"u", 3}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    EXPECT_EQ(ef_decide(a, b, 5).winner, Player::Exists);
}

TEST(Ef, FourVersusThreeBlock)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    EXPECT_EQ(ef_decide(a, b, 3).winner, Player::Exists);
    EXPECT_EQ(ef_decide(a, b, 4).winner, Player::ForAll);
    for (std::size_t mu = 1; mu <= 5; ++mu)
        EXPECT_EQ(ef_decide(a, b, mu).winner == Player::Exists, oracle::ef_partition_closed_form(a, b, mu));
}

TEST(Ef, ThreeVersusTwoSingleBlock)
{
    auto o = ef_decide(single(2), single(3), 3);
    EXPECT_EQ(o.winner, Player::ForAll);
    EXPECT_EQ(ef_decide(single(2), single(3), 2).winner, Player::Exists);
    EXPECT_TRUE(replay_ef_certificate(relational_view(single(2)), relational_view(single(3)), o));
}

TEST(Ef, Errors)
{
    EXPECT_THROW(ef_decide(single(2), build_maddux(2), 2), DomainError);
    EXPECT_THROW(ef_decide(single(2), single(2), 0), ParameterError);
}

TEST(Ef, ReducedAndPlainSearchAgreeWithMinimax)
{
    Rng g(77);
    for (int trial = 0; trial < 120; ++trial) {
        auto a = random_structure(g, 1 + uniform_below(g, 4));
        auto b = trial % 4 == 0 ? a : random_structure(g, 1 + uniform_below(g, 4));
        for (std::size_t mu = 1; mu <= 3; ++mu) {
            bool expect = minimax(a, b, mu);
            auto red = ef_decide(a, b, mu, EfOptions{true});
            auto full = ef_decide(a, b, mu, EfOptions{false});
            EXPECT_EQ(red.winner == Player::Exists, expect) << "trial " << trial << " mu " << mu;
            EXPECT_EQ(full.winner, red.winner);
            EXPECT_TRUE(replay_ef_certificate(a, b, red, EfOptions{true}));
            EXPECT_TRUE(replay_ef_certificate(a, b, full, EfOptions{false}));
        }
    }
}

TEST(Ef, RoundMonotonicity)
{
    Rng g(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_structure(g, 2 + uniform_below(g, 3));
        auto b = random_structure(g, 2 + uniform_below(g, 3));
        bool lost = false;
        for (std::size_t mu = 1; mu <= 4; ++mu) {
            bool win = ef_decide(a, b, mu).winner == Player::Exists;
            if (lost)
                EXPECT_FALSE(win);
            lost = lost || !win;
        }
    }
}

TEST(Ef, TamperedCertificateFailsReplay)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    auto va = relational_view(a), vb = relational_view(b);
    auto o = ef_decide(va, vb, 3);
    ASSERT_EQ(o.winner, Player::Exists);
    ASSERT_FALSE(o.certificate.replies.empty());
    auto bad = o;
    bad.certificate.replies.erase(bad.certificate.replies.begin());
    EXPECT_FALSE(replay_ef_certificate(va, vb, bad));
    auto liar = o;
    liar.winner = Player::ForAll;
    EXPECT_FALSE(replay_ef_certificate(va, vb, liar));
}

TEST(Ef, TwinClasses)
{
    auto cls = twin_classes(relational_view(PartitionStructure({"u", "v"}, {3, 2}, {})));
    EXPECT_EQ(cls, (std::vector<std::uint32_t>{0, 0, 0, 1, 1}));
    // a directed path has no twins
    RelationTable e{"E", 2, std::vector<unsigned char>(9, 0)};
    e.table[0 * 3 + 1] = e.table[1 * 3 + 2] = 1;
    auto path = twin_classes(RelationalStructure({"p", "q", "r"}, {e}));
    EXPECT_EQ(path, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(PartitionStrategyTest, SurvivesEqualLargeBlocks)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 1}}, {{"u", 4}, {"v", 1}}, {"u"});
    auto run = replay_partition_strategy(ef_partition_strategy(a, b), 4);
    EXPECT_TRUE(run.survives);
}

TEST(PartitionStrategyTest, CopiesOnIdenticalPair)
{
    auto [a, b] = build_partition_pair({{"u", 2}, {"v", 2}}, {{"u", 2}, {"v", 2}}, {});
    auto st = ef_partition_strategy(a, b);
    for (std::size_t x = 0; x < a.atom_count(); ++x) {
        EXPECT_EQ(st.answer({}, {Side::A, x}), x);
        EXPECT_EQ(st.answer({}, {Side::B, x}), x);
    }
}

TEST(PartitionStrategyTest, ResignsWhereSearchSaysForAll)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    auto st = ef_partition_strategy(a, b);
    auto run = replay_partition_strategy(st, 4);
    EXPECT_FALSE(run.survives);
    EXPECT_TRUE(run.resigned);
    EXPECT_EQ(run.failed_round, 4u);
    EXPECT_EQ(ef_decide(a, b, 4).winner, Player::ForAll);
    EXPECT_TRUE(replay_partition_strategy(st, 3).survives);
    EXPECT_TRUE(replay_partition_strategy(st, 3, true).survives);
    EXPECT_FALSE(replay_partition_strategy(st, 4, true).survives);
}

TEST(PartitionStrategyTest, ReplaysOfPlayedAtoms)
{
    auto [a, b] = build_partition_pair({{"u", 3}}, {{"u", 2}}, {"u"});
    auto st = ef_partition_strategy(a, b);
    EfPlay play{{2, 1}};
    EXPECT_EQ(st.answer(play, {Side::A, 2}), 1u);
    EXPECT_EQ(st.answer(play, {Side::B, 1}), 2u);
    EXPECT_EQ(st.answer(play, {Side::A, 0}), 0u);
    EXPECT_EQ(st.answer({{0, 0}, {1, 1}}, {Side::A, 2}), std::nullopt);
    EXPECT_THROW(ef_partition_strategy(PartitionStructure({"u"}, {2}, {}), PartitionStructure({"u"}, {3}, {})),
                 DomainError);
}

TEST(PartitionBattery, ClosedFormAndStrategyAgreeOnRandomPairs)
{
    Rng g(2024);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t blocks = 1 + uniform_below(g, 3);
        UnitSizes sa, sb;
        std::set<std::string> large;
        for (std::size_t u = 0; u < blocks; ++u) {
            std::string name = "u" + std::to_string(u);
            std::size_t x = 1 + uniform_below(g, 4);
            std::size_t y = x;
            if (g() & 1) {
                large.insert(name);
                y = 1 + uniform_below(g, x);
            }
            sa.push_back({name, x});
            sb.push_back({name, y});
        }
        auto [a, b] = build_partition_pair(sa, sb, large);
        auto st = ef_partition_strategy(a, b);
        for (std::size_t mu = 1; mu <= 4; ++mu) {
            bool win = ef_decide(a, b, mu).winner == Player::Exists;
            EXPECT_EQ(win, oracle::ef_partition_closed_form(a, b, mu));
            EXPECT_EQ(replay_partition_strategy(st, mu, true).survives, win);
        }
    }
}
