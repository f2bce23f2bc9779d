#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "atomkit/graph.hpp"
#include "atomkit/io.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/rng.hpp"
#include "atomkit/vec.hpp"
#include "oracles/oracles.hpp"

using namespace atomkit;

namespace {

VecAtom random_vec(Rng& g, std::size_t alpha = 8)
{
    std::map<std::size_t, Rational> e;
    for (std::size_t i = 0; i < alpha; ++i)
        if (uniform_below(g, 2) == 0)
            e[i] = Rational(std::int64_t(uniform_below(g, 9)) - 4, std::int64_t(1 + uniform_below(g, 3)));
    return VecAtom(alpha, e);
}

std::multiset<Rational> values(const VecAtom& s)
{
    std::multiset<Rational> out;
    for (std::size_t i = 0; i < s.alpha(); ++i)
        out.insert(s[i]);
    return out;
}

} // namespace

// ---- partitions ------------------------------------------------------------------

TEST(PartitionPair, EqualSizesGiveIdenticalStructures)
{
    auto [a, b] = build_partition_pair({{"u", 3}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.atom_count(), 5u);
    EXPECT_EQ(a.atom_name(3), "v:0");
    EXPECT_EQ(a.atom_index("u:2"), 2u);
}

TEST(PartitionPair, LargeBlockMayDiffer)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 1}}, {{"v", 1}, {"u", 3}}, {"u"});
    EXPECT_EQ(a.sizes(), (std::vector<std::size_t>{4, 1}));
    EXPECT_EQ(b.sizes(), (std::vector<std::size_t>{3, 1}));
    EXPECT_EQ(b.units(), a.units());
    EXPECT_TRUE(a.is_large(0));
    EXPECT_FALSE(a.is_large(1));
}

TEST(PartitionPair, Errors)
{
    EXPECT_THROW(build_partition_pair({{"u", 4}}, {{"u", 3}}, {}), ParameterError);
    EXPECT_THROW(build_partition_pair({{"u", 2}}, {{"u", 3}}, {"u"}), ParameterError);
    EXPECT_THROW(build_partition_pair({{"u", 2}}, {{"w", 2}}, {}), ParameterError);
    EXPECT_THROW(PartitionStructure({"u"}, {0}, {}), ParameterError);
    EXPECT_THROW(PartitionStructure({"u"}, {1}, {"zz"}), ParameterError);
    auto [a, b] = build_partition_pair({{"u", 2}}, {{"u", 2}}, {});
    EXPECT_THROW(a.atom_index("u:2"), DomainError);
    EXPECT_THROW(a.atom_index("w:0"), DomainError);
    EXPECT_THROW(a.atom_index("u0"), DomainError);
}

TEST(PartitionPair, FileRoundTrip)
{
    auto [a, b] = build_partition_pair({{"u", 4}, {"v", 2}}, {{"u", 3}, {"v", 2}}, {"u"});
    for (const auto& p : {a, b})
        EXPECT_EQ(io::partition_from_json(io::parse(io::dump(io::to_json(p)))), p);
}

// ---- vector atoms ------------------------------------------------------------------

TEST(VecAtoms, Examples)
{
    VecAtom s(4, std::vector<Rational>{1, 2}), t(4, std::vector<Rational>{1, 5});
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_TRUE(equiv_i(s, s, i));
    EXPECT_TRUE(equiv_i(s, t, 1));
    EXPECT_FALSE(equiv_i(s, t, 0));
    EXPECT_EQ(swap_ij(s, 2, 2), s);
    EXPECT_EQ(swap_ij(s, 0, 1), VecAtom(4, std::vector<Rational>{2, 1}));
    EXPECT_TRUE(in_y(s));
    EXPECT_FALSE(in_y(VecAtom(4)));
    EXPECT_TRUE(in_y(VecAtom(4, std::vector<Rational>{3, 2, 2})));
    EXPECT_TRUE(in_y(VecAtom(4, std::vector<Rational>{Rational(1, 2), Rational(3, 4), Rational(3, 4)})));
}

TEST(VecAtoms, Errors)
{
    VecAtom s(3);
    EXPECT_THROW(equiv_i(s, s, 3), IndexError);
    EXPECT_THROW(swap_ij(s, 0, 5), IndexError);
    EXPECT_THROW(equiv_i(s, VecAtom(4), 0), DomainError);
    EXPECT_THROW(VecAtom(1), ParameterError);
    EXPECT_THROW(parse_rational("1/0"), ParameterError);
    EXPECT_THROW(parse_rational("x"), ParameterError);
    EXPECT_EQ(rational_text(parse_rational("6/4")), "3/2");
    EXPECT_EQ(rational_text(parse_rational("-2")), "-2");
}

TEST(VecAtoms, AlgebraicProperties)
{
    Rng g(31);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_vec(g), t = random_vec(g), u = random_vec(g);
        std::size_t i = uniform_below(g, 8), j = uniform_below(g, 8);
        // equivalence relation
        EXPECT_TRUE(equiv_i(s, s, i));
        EXPECT_EQ(equiv_i(s, t, i), equiv_i(t, s, i));
        auto t2 = s;
        t2.set(i, Rational(std::int64_t(uniform_below(g, 5))));
        EXPECT_TRUE(equiv_i(s, t2, i));
        if (equiv_i(s, t, i) && equiv_i(t, u, i))
            EXPECT_TRUE(equiv_i(s, u, i));
        // transpositions
        auto w = swap_ij(s, i, j);
        EXPECT_EQ(swap_ij(w, i, j), s);
        EXPECT_EQ(swap_ij(s, j, i), w);
        EXPECT_EQ(values(w), values(s));
        EXPECT_EQ(w[i], s[j]);
        if (i > 0 && j > 0)
            EXPECT_EQ(in_y(w), in_y(s));
    }
}

TEST(VecAtoms, YIsNotInvariantUnderSwapsThroughZero)
{
    // s=(1,2): in y; swapping 0 and 1 gives (2,1), not in y
    VecAtom s(3, std::vector<Rational>{1, 2});
    ASSERT_TRUE(in_y(s));
    EXPECT_FALSE(in_y(swap_ij(s, 0, 1)));
    Rng g(2);
    std::size_t broken = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto v = random_vec(g);
        v.set(0, 0);
        Rational rest = 0;
        for (std::size_t i = 2; i < v.alpha(); ++i)
            rest += v[i];
        v.set(1, 1 - rest); // now in y
        ASSERT_TRUE(in_y(v));
        broken += !in_y(swap_ij(v, 0, 1 + uniform_below(g, 7)));
    }
    EXPECT_GT(broken, 0u);
}

// ---- graphs ------------------------------------------------------------------------

TEST(Chromatic, Examples)
{
    EXPECT_EQ(chromatic_number(complete_graph(4)).chi, 4u);
    EXPECT_EQ(chromatic_number(cycle_graph(5)).chi, 3u);
    EXPECT_EQ(chromatic_number(Graph(6)).chi, 1u);
    EXPECT_EQ(chromatic_number(Graph(0)).chi, 0u);
    EXPECT_EQ(chromatic_number(petersen_graph()).chi, 3u);
    EXPECT_THROW(chromatic_number(complete_graph(17)), CapError);
    EXPECT_NO_THROW(chromatic_number(cycle_graph(17), 17));
}

TEST(Chromatic, WitnessAndBoundsOnRandomGraphs)
{
    Rng g(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto gr = random_graph(3 + uniform_below(g, 6), uniform_unit(g), g);
        auto r = chromatic_number(gr);
        EXPECT_EQ(r.chi, oracle::chromatic(gr));
        EXPECT_TRUE(is_proper_coloring(gr, r.coloring));
        EXPECT_LE(r.chi, gr.max_degree() + 1);
        EXPECT_TRUE(r.infeasibility_exhaustive);
        if (r.chi >= 2)
            EXPECT_FALSE(oracle::colourable(gr, r.chi - 1));
    }
}

TEST(Graphs, Errors)
{
    Graph g(3);
    EXPECT_THROW(g.add_edge(0, 3), DomainError);
    EXPECT_THROW(g.add_edge(1, 1), DomainError);
    EXPECT_THROW(cycle_graph(2), ParameterError);
    EXPECT_THROW(Graph(65), ParameterError);
    Rng r(1);
    EXPECT_THROW(random_graph(4, 1.5, r), ParameterError);
}

TEST(GraphSequence, Kinds)
{
    std::vector<std::size_t> chis;
    for (const auto& gr : graph_sequence({GraphKind::complete, {2, 3, 4, 5}}))
        chis.push_back(chromatic_number(gr).chi);
    EXPECT_EQ(chis, (std::vector<std::size_t>{2, 3, 4, 5}));
    for (const auto& gr : graph_sequence({GraphKind::odd_cycle, {3, 5, 7}}))
        EXPECT_EQ(chromatic_number(gr).chi, 3u);
    GraphSequenceParams p{GraphKind::random, {6, 8, 10}, 0.4, 99};
    EXPECT_EQ(graph_sequence(p), graph_sequence(p));
    EXPECT_THROW(graph_sequence({GraphKind::odd_cycle, {4}}), ParameterError);
}

TEST(ClassifyGraph, ThresholdBehaviour)
{
    EXPECT_EQ(classify_graph(complete_graph(6), 4).tag, GraphClass::good);
    auto c4 = classify_graph(cycle_graph(4), 3);
    EXPECT_EQ(c4.tag, GraphClass::bad);
    EXPECT_EQ(c4.chromatic.chi, 2u);
    EXPECT_TRUE(is_proper_coloring(cycle_graph(4), c4.chromatic.coloring));
    Rng g(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto gr = random_graph(1 + uniform_below(g, 8), 0.5, g);
        EXPECT_EQ(classify_graph(gr, 1).tag, GraphClass::good);
        bool was_bad = false;
        for (std::size_t t = 1; t <= 10; ++t) {
            bool bad = classify_graph(gr, t).tag == GraphClass::bad;
            if (was_bad)
                EXPECT_TRUE(bad);
            was_bad = bad;
        }
    }
}
