#include <pcfcolor/reductions.hpp>
#include <pcfcolor/solver.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pcfcolor;

namespace {

constexpr Variant all_variants[] = {Variant::proper, Variant::pcf, Variant::odd};

Graph sub1(int n) { return subdivide_k(complete_graph(n), 1).graph; }

SolveOptions node_budget(std::uint64_t nodes, bool early = false)
{
    SolveOptions o;
    o.budget = Budget::nodes_only(nodes);
    o.early_pruning = early;
    return o;
}

} // namespace

TEST(Decide, Examples)
{
    EXPECT_EQ(decide_coloring(cycle_graph(4), 3, Variant::pcf).status, Status::unsat);

    auto c4 = decide_coloring(cycle_graph(4), 4, Variant::pcf);
    ASSERT_EQ(c4.status, Status::sat);
    EXPECT_EQ(c4.witness->distinct_colors(), 4);

    EXPECT_EQ(decide_coloring(star_graph(3), 2, Variant::odd).status, Status::sat);
    EXPECT_EQ(decide_coloring(sub1(4), 3, Variant::pcf).status, Status::unsat);
}

TEST(Decide, WitnessesPassTheirChecker)
{
    for (Variant v : all_variants)
        for (int k = 1; k <= 4; ++k) {
            auto r = decide_coloring(cycle_graph(5), k, v);
            if (r.status == Status::sat) {
                EXPECT_TRUE(check(cycle_graph(5), *r.witness, v).verdict);
            }
        }
}

TEST(Decide, BudgetExhaustionIsTimeoutNeverUnsat)
{
    auto r = decide_coloring(sub1(5), 4, Variant::pcf, node_budget(1000));
    EXPECT_EQ(r.status, Status::timeout);
    EXPECT_FALSE(r.witness);
    EXPECT_LE(r.stats.nodes, 1001u);
}

TEST(Decide, RejectsEmptyPalette)
{
    EXPECT_THROW(decide_coloring(path_graph(2), 0, Variant::proper), std::invalid_argument);
}

TEST(Decide, SymmetryBreakingStartsAtColorOne)
{
    auto order = branching_order(star_graph(3));
    EXPECT_EQ(order, (std::vector<Vertex>{0, 1, 2, 3}));
    auto r = decide_coloring(star_graph(3), 3, Variant::proper);
    EXPECT_EQ((*r.witness)[0], 1);
}

TEST(Oracle, Examples)
{
    auto p4 = brute_force_oracle(path_graph(4), 3, Variant::pcf);
    ASSERT_EQ(p4.status, Status::sat);
    EXPECT_EQ(p4.witness->colors, (std::vector<int>{1, 2, 3, 1}));

    EXPECT_EQ(brute_force_oracle(complete_graph(2), 1, Variant::proper).status, Status::unsat);
    EXPECT_EQ(brute_force_oracle(cycle_graph(6), 2, Variant::odd).status, Status::unsat);
}

TEST(Oracle, RefusesAboveCap)
{
    EXPECT_THROW(brute_force_oracle(path_graph(30), 3, Variant::proper), OracleRefusal);
    EXPECT_THROW(brute_force_oracle(path_graph(5), 2, Variant::proper, 16), OracleRefusal);
    EXPECT_NO_THROW(brute_force_oracle(path_graph(4), 2, Variant::proper, 16));
}

TEST(SolverVsOracle, RandomInstancesBothPruningModes)
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng() % 7);
        int k = 1 + static_cast<int>(rng() % 4);
        Graph g = graph_from_mask(n, rng());
        for (Variant v : all_variants) {
            Status expected = brute_force_oracle(g, k, v).status;
            EXPECT_EQ(decide_coloring(g, k, v).status, expected) << "t=" << t;
            EXPECT_EQ(decide_coloring(g, k, v, node_budget(1'000'000, true)).status, expected) << "t=" << t;
        }
    }
}

TEST(Enumerate, VisitsDistinctVerifiedSolutions)
{
    std::vector<Coloring> seen;
    Status s = enumerate_colorings(cycle_graph(6), 3, Variant::pcf, 100,
                                   [&](const Coloring& c) { seen.push_back(c); });
    EXPECT_EQ(s, Status::sat);
    ASSERT_FALSE(seen.empty());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        EXPECT_TRUE(check_pcf(cycle_graph(6), seen[i]).verdict);
        for (std::size_t j = 0; j < i; ++j)
            EXPECT_NE(seen[i], seen[j]);
    }
    EXPECT_EQ(enumerate_colorings(cycle_graph(4), 3, Variant::pcf, 5, [](const Coloring&) {}), Status::unsat);
    std::size_t calls = 0;
    enumerate_colorings(cycle_graph(6), 3, Variant::proper, 2, [&](const Coloring&) { ++calls; });
    EXPECT_EQ(calls, 2u);
}

TEST(Chromatic, Examples)
{
    for (int n = 3; n <= 5; ++n) {
        auto r = chromatic_number(sub1(n), Variant::pcf);
        ASSERT_EQ(r.status, Status::sat) << "n=" << n;
        EXPECT_EQ(r.value, n);
    }
    EXPECT_EQ(chromatic_number(star_graph(3), Variant::odd).value, 2);
    EXPECT_EQ(chromatic_number(cycle_graph(4), Variant::pcf).value, 4);
    EXPECT_EQ(chromatic_number(Graph(3, {}), Variant::pcf).value, 1);
    EXPECT_EQ(chromatic_number(Graph(0, {}), Variant::odd).value, 0);
}

TEST(Chromatic, TimeoutReportsBracket)
{
    auto r = chromatic_number(sub1(5), Variant::pcf, node_budget(500));
    EXPECT_EQ(r.status, Status::timeout);
    EXPECT_GE(r.lower, 2);
    EXPECT_LE(r.lower, 5);
    EXPECT_EQ(r.upper, 15);
}

TEST(Chromatic, MonotoneInPaletteAndOrderedAcrossVariants)
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + static_cast<int>(rng() % 6);
        Graph g = graph_from_mask(n, rng());
        int chi[3];
        for (int i = 0; i < 3; ++i) {
            auto r = chromatic_number(g, all_variants[i]);
            ASSERT_EQ(r.status, Status::sat);
            chi[i] = r.value;
            for (int k = chi[i]; k <= n; ++k)
                EXPECT_EQ(decide_coloring(g, k, all_variants[i]).status, Status::sat);
        }
        EXPECT_LE(chi[0], chi[2]);
        EXPECT_LE(chi[2], chi[1]);
    }
}

TEST(Chromatic, SmallValuesCharacterizedExhaustively)
{
    for (int n = 1; n <= 5; ++n)
        for (unsigned long long m = 0; m < (1ULL << (n * (n - 1) / 2)); ++m) {
            Graph g = graph_from_mask(n, m);
            auto prof = degree_profile(g);
            bool odd_or_zero = true;
            for (int d : prof.degrees)
                if (d % 2 == 0 && d != 0)
                    odd_or_zero = false;
            bool pcf2 = decide_coloring(g, 2, Variant::pcf).status == Status::sat;
            bool odd2 = decide_coloring(g, 2, Variant::odd).status == Status::sat;
            EXPECT_EQ(pcf2, prof.max_degree <= 1) << "n=" << n << " mask=" << m;
            EXPECT_EQ(odd2, is_bipartite(g) && odd_or_zero) << "n=" << n << " mask=" << m;
        }
}

TEST(Budget, FromEnvironment)
{
    setenv("PCFCOLOR_NODE_BUDGET", "1234", 1);
    setenv("PCFCOLOR_TIME_LIMIT", "2.5", 1);
    Budget b = Budget::from_environment();
    EXPECT_EQ(b.max_nodes, 1234u);
    EXPECT_DOUBLE_EQ(b.time_limit_seconds, 2.5);
    unsetenv("PCFCOLOR_NODE_BUDGET");
    unsetenv("PCFCOLOR_TIME_LIMIT");
    EXPECT_EQ(Budget::from_environment().max_nodes, Budget{}.max_nodes);
}
