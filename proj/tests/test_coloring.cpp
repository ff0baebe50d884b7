#include <pcfcolor/coloring.hpp>
#include <pcfcolor/reductions.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace pcfcolor;

namespace {

// Straight multiset recomputation, sharing nothing with the checkers.
bool definition_holds(const Graph& g, const std::vector<int>& c, Variant variant)
{
    for (const Edge& e : g.edges())
        if (c[e.u] == c[e.v])
            return false;
    if (variant == Variant::proper)
        return true;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.neighbors(v).empty())
            continue;
        std::map<int, int> mult;
        for (Vertex w : g.neighbors(v))
            mult[c[w]]++;
        bool ok = false;
        for (auto [color, times] : mult)
            if (variant == Variant::pcf ? times == 1 : times % 2 == 1)
                ok = true;
        if (!ok)
            return false;
    }
    return true;
}

// Calls f on every coloring of n vertices with colors 1..k.
template <typename F>
void for_each_coloring(int n, int k, F f)
{
    std::vector<int> c(n, 1);
    while (true) {
        f(c);
        int i = n - 1;
        while (i >= 0 && c[i] == k)
            c[i--] = 1;
        if (i < 0)
            return;
        ++c[i];
    }
}

} // namespace

TEST(CheckProper, Examples)
{
    EXPECT_TRUE(check_proper(cycle_graph(4), Coloring::from_colors({1, 2, 1, 2})).verdict);

    auto k3 = check_proper(complete_graph(3), Coloring::from_colors({1, 1, 2}));
    EXPECT_FALSE(k3.verdict);
    ASSERT_EQ(k3.violations.size(), 1u);
    EXPECT_EQ(k3.violations[0].vertices, (std::vector<Vertex>{0, 1}));

    EXPECT_TRUE(check_proper(Graph(3, {}), Coloring::from_colors({1, 1, 1})).verdict);
}

TEST(CheckProper, RejectsPartialOrOutOfPaletteColorings)
{
    EXPECT_THROW(check_proper(path_graph(3), Coloring::from_colors({1, 0, 2})), ColoringError);
    EXPECT_THROW(check_proper(path_graph(3), Coloring::from_colors({1, 2})), ColoringError);
    EXPECT_THROW(check_pcf(path_graph(3), Coloring({1, 2, 3}, 2)), ColoringError);
}

TEST(CheckPcf, Examples)
{
    auto c6 = check_pcf(cycle_graph(6), Coloring::from_colors({1, 2, 3, 1, 2, 3}));
    EXPECT_TRUE(c6.verdict);
    EXPECT_EQ(c6.witness[0], 1);

    auto bad = check_pcf(path_graph(3), Coloring::from_colors({1, 2, 1}));
    EXPECT_FALSE(bad.verdict);
    ASSERT_EQ(bad.violations.size(), 1u);
    EXPECT_EQ(bad.violations[0].kind, Violation::Kind::no_unique_color);
    EXPECT_EQ(bad.violations[0].vertices, (std::vector<Vertex>{1}));
}

TEST(CheckPcf, NoThreeColoringOfC4Works)
{
    int tried = 0;
    for_each_coloring(4, 3, [&](const std::vector<int>& c) {
        ++tried;
        EXPECT_FALSE(check_pcf(cycle_graph(4), Coloring(c, 3)).verdict);
    });
    EXPECT_EQ(tried, 81);
}

TEST(CheckPcf, CorrectedSub1K4TableIsConflictFree)
{
    auto out = subdivide_k(complete_graph(4), 1);
    EXPECT_TRUE(check_pcf(out.graph, Coloring::from_colors({sub1K4_table.begin(), sub1K4_table.end()})).verdict);
}

TEST(CheckPcf, IsolatedVerticesPassVacuously)
{
    auto r = check_pcf(Graph(2, {}), Coloring::from_colors({1, 1}));
    EXPECT_TRUE(r.verdict);
    EXPECT_FALSE(r.witness[0]);
}

TEST(CheckOdd, Examples)
{
    auto star = check_odd(star_graph(3), Coloring::from_colors({1, 2, 2, 2}));
    EXPECT_TRUE(star.verdict);
    EXPECT_EQ(star.witness[0], 2);

    auto p3 = check_odd(path_graph(3), Coloring::from_colors({1, 2, 1}));
    EXPECT_FALSE(p3.verdict);
    EXPECT_EQ(p3.violations[0].kind, Violation::Kind::no_odd_color);
}

TEST(Checkers, AgreeWithMultisetDefinitionOnAllSmallInstances)
{
    for (int n = 1; n <= 5; ++n)
        for (unsigned long long m = 0; m < (1ULL << (n * (n - 1) / 2)); ++m) {
            Graph g = graph_from_mask(n, m);
            for (int k = 1; k <= 3; ++k)
                for_each_coloring(n, k, [&](const std::vector<int>& c) {
                    Coloring col(c, k);
                    for (Variant v : {Variant::proper, Variant::pcf, Variant::odd}) {
                        auto r = check(g, col, v);
                        ASSERT_EQ(r.verdict, definition_holds(g, c, v));
                        ASSERT_EQ(r.verdict, r.violations.empty());
                    }
                });
        }
}

TEST(Checkers, WitnessesAreSmallestAndVerify)
{
    Graph g = build_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto pcf = check_pcf(g, Coloring::from_colors({1, 3, 2, 2, 4}));
    ASSERT_TRUE(pcf.verdict);
    EXPECT_EQ(pcf.witness[0], 1);  // neighbors 1 and 4 are unique; 1 is smaller

    auto odd = check_odd(g, Coloring::from_colors({1, 3, 2, 2, 4}));
    ASSERT_TRUE(odd.verdict);
    EXPECT_EQ(odd.witness[0], 3);  // colors 3 and 4 are odd; 2 appears twice
}

TEST(Checkers, ImplicationChainAndDegreeTwoLemma)
{
    for (int n = 1; n <= 5; ++n)
        for (unsigned long long m = 0; m < (1ULL << (n * (n - 1) / 2)); ++m) {
            Graph g = graph_from_mask(n, m);
            for_each_coloring(n, 3, [&](const std::vector<int>& c) {
                Coloring col(c, 3);
                bool pcf = check_pcf(g, col).verdict;
                bool odd = check_odd(g, col).verdict;
                bool proper = check_proper(g, col).verdict;
                ASSERT_TRUE(!pcf || odd);
                ASSERT_TRUE(!odd || proper);
                if (odd) {
                    ASSERT_TRUE(degree_two_violations(g, col).empty());
                }
            });
        }
}

TEST(Restrict, Cases)
{
    Coloring c = Coloring::from_colors({4, 1, 3, 3, 2});
    EXPECT_EQ(restrict_coloring(c, {}).size(), 0);
    EXPECT_EQ(restrict_coloring(c, {0, 1, 2, 3, 4}), c);

    Coloring r = restrict_coloring(c, {3, 1, 2});
    EXPECT_EQ(r.colors, (std::vector<int>{1, 3, 3}));
    EXPECT_EQ(r.distinct_colors(), 2);
    EXPECT_EQ(r.k, 3);

    EXPECT_EQ(restrict_to_prefix(c, 2).colors, (std::vector<int>{4, 1}));
    EXPECT_THROW(restrict_coloring(c, {5}), ColoringError);
}

TEST(Variant, ParseRoundTrip)
{
    for (Variant v : {Variant::proper, Variant::pcf, Variant::odd})
        EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_THROW(parse_variant("conflict-free"), std::invalid_argument);
}
