#include <pcfcolor/harness.hpp>

#include <gtest/gtest.h>

#include <filesystem>

using namespace pcfcolor;

namespace {

HarnessConfig small_config()
{
    HarnessConfig cfg;
    cfg.budget = Budget::nodes_only(200'000);
    cfg.cnf_budget = Budget::nodes_only(200'000);
    cfg.reverse_samples = 3;
    return cfg;
}

} // namespace

TEST(Characterization, NoRefutationsUpToFourVertices)
{
    auto report = run_characterization_suite(4, small_config());
    EXPECT_EQ(report.cases.size(), 2u * (1 + 2 + 8 + 64));
    EXPECT_EQ(report.count(Verdict::refuted), 0);
    EXPECT_EQ(report.count(Verdict::timeout), 0);
    EXPECT_EQ(report.degree_two_violations(), 0);
    EXPECT_GT(report.witnesses_audited(), 0);
    EXPECT_THROW(run_characterization_suite(7), std::invalid_argument);
}

TEST(Lemmas, SmallRunVerifies)
{
    LemmaSuiteOptions lo;
    lo.max_n = 3;
    lo.samples = 10;
    lo.sandwich_max_n = 4;
    auto report = run_lemma_suite(lo, small_config());
    EXPECT_EQ(report.cases.size(), 4u * (1 + 2 + 8) + 10);
    // Edgeless graphs: every vertex gets a pendant, so chi_odd(H) = 2 > 1 = chi(G).
    // These are the only refutations, and each carries its counterexample.
    int refuted = 0;
    for (const auto& c : report.cases) {
        if (c.verdict == Verdict::verified)
            continue;
        ++refuted;
        EXPECT_EQ(c.verdict, Verdict::refuted);
        EXPECT_EQ(c.ref, "lemma:pendants-even-degree") << c.id;
        EXPECT_TRUE(c.details["graph"]["edges"].empty()) << c.id;
        EXPECT_EQ(c.details["chi_G"], 1);
        EXPECT_EQ(c.details["chi_H"], 2);
    }
    EXPECT_EQ(refuted, 3);
}

TEST(Audit, DegreeTwoViolationRefutesTheCase)
{
    CaseRecord rec;
    detail::audit(rec, path_graph(3), Coloring::from_colors({1, 2, 1}), "probe");
    EXPECT_EQ(rec.verdict, Verdict::refuted);
    EXPECT_EQ(rec.degree_two_violations, 1);
    EXPECT_EQ(rec.details["degree_two_counterexample"]["vertices"], nlohmann::json::array({1}));
}

TEST(Audit, DowngradeNeverUpgrades)
{
    CaseRecord rec;
    detail::downgrade(rec, Verdict::timeout);
    EXPECT_EQ(rec.verdict, Verdict::timeout);
    detail::downgrade(rec, Verdict::refuted);
    EXPECT_EQ(rec.verdict, Verdict::refuted);
    detail::downgrade(rec, Verdict::timeout);
    EXPECT_EQ(rec.verdict, Verdict::refuted);
}

TEST(Reductions, BipartiteP4BothVariants)
{
    auto instances = default_reduction_instances();
    instances.resize(1);
    ASSERT_EQ(instances[0].name, "P4");
    auto report = run_reduction_suite(instances, small_config());
    ASSERT_EQ(report.cases.size(), 2u);
    for (const auto& c : report.cases) {
        EXPECT_EQ(c.verdict, Verdict::verified) << c.id << " " << c.details.dump();
        EXPECT_EQ(c.details["gadget_vertices"], 48);
        EXPECT_GT(c.details["restrictions_valid"].get<int>(), 0);
    }
}

TEST(Reductions, UncolorableSourceEmitsCnfArtifact)
{
    auto dir = std::filesystem::temp_directory_path() / "pcfcolor_harness_test";
    std::filesystem::remove_all(dir);
    HarnessConfig cfg = small_config();
    cfg.artifact_dir = dir.string();
    ReductionInstance c4{"C4", cycle_graph(4), std::nullopt};
    auto report = run_reduction_suite({c4}, cfg);
    ASSERT_EQ(report.cases.size(), 2u);
    for (const auto& c : report.cases) {
        EXPECT_EQ(c.details["source_3"], "UNSAT");
        EXPECT_NE(c.verdict, Verdict::refuted) << c.id;
        ASSERT_EQ(c.artifact_paths.size(), 1u);
        EXPECT_TRUE(std::filesystem::exists(dir / c.artifact_paths[0]));
    }
    std::filesystem::remove_all(dir);
}

TEST(Report, SchemaAndDeterminism)
{
    HarnessConfig cfg = small_config();
    cfg.seed = 42;
    LemmaSuiteOptions lo;
    lo.max_n = 2;
    lo.samples = 6;
    lo.sandwich_max_n = 5;
    auto first = run_lemma_suite(lo, cfg).to_json();
    cfg.workers = 3;
    auto second = run_lemma_suite(lo, cfg).to_json();
    EXPECT_EQ(first.dump(), second.dump());

    cfg.seed = 43;
    EXPECT_NE(run_lemma_suite(lo, cfg).to_json().dump(), first.dump());

    EXPECT_EQ(first["suite"], "lemmas");
    EXPECT_EQ(first["seed"], 42);
    EXPECT_EQ(first["budgets"]["search"]["max_nodes"], 200'000);
    EXPECT_EQ(first["budgets"]["search"]["time_limit_seconds"], 0.0);
    ASSERT_TRUE(first["cases"].is_array());
    for (const auto& c : first["cases"]) {
        for (const char* key : {"id", "claim", "paper_ref", "verdict", "artifact_paths", "details"})
            EXPECT_TRUE(c.contains(key)) << key;
    }
    for (const char* key : {"cases", "verified", "refuted", "timeout", "witnesses_audited", "degree_two_violations"})
        EXPECT_TRUE(first["summary"].contains(key)) << key;
    EXPECT_EQ(first["summary"]["cases"], first["cases"].size());
}
