#include <gtest/gtest.h>

#include <ballgrow/distributed.hpp>
#include <ballgrow/metrics.hpp>

#include "support.hpp"

using namespace ballgrow;

namespace {

Dataset small_gauss(std::uint64_t seed, std::size_t outliers = 20) {
    GaussParams p{5, 200, 3, 0.1, outliers, 2.0, seed};
    return gen_gauss(p);
}

DistributedConfig make_config(std::size_t k, std::size_t t, std::uint64_t seed) {
    DistributedConfig cfg;
    cfg.k = k;
    cfg.t = t;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(SiteBudget, Values) {
    EXPECT_EQ(site_budget(100, 20, PartitionKind::random), 10u);
    EXPECT_EQ(site_budget(100, 1, PartitionKind::random), 100u);
    EXPECT_EQ(site_budget(100, 20, PartitionKind::adversarial), 100u);
    EXPECT_EQ(site_budget(7, 3, PartitionKind::random), 5u);
    EXPECT_EQ(site_budget(0, 5, PartitionKind::random), 0u);
    EXPECT_THROW(site_budget(1, 0, PartitionKind::random), std::invalid_argument);
}

TEST(RunDistributed, SingleSiteMatchesCentralized) {
    const auto data = small_gauss(3);
    auto cfg = make_config(5, 20, 11);
    const auto result = run_distributed(partition_random(data, 1, 4), cfg);
    SummaryParams p;
    p.k = 5;
    p.t = 20;
    p.seed = 11;
    const auto central = augmented_summary_outliers(data, p);
    ASSERT_EQ(result.summaries.size(), 1u);
    EXPECT_EQ(result.summaries[0].sigma, central.sigma);
    EXPECT_EQ(result.summaries[0].loss, central.loss);
    EXPECT_EQ(result.merged.size(), central.size());
}

TEST(RunDistributed, OneMessagePerSite) {
    const auto data = small_gauss(5);
    const auto result = run_distributed(partition_random(data, 6, 9), make_config(5, 20, 2));
    ASSERT_EQ(result.comm.messages.size(), 6u);
    std::size_t total = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(result.comm.messages[i].site, i);
        EXPECT_EQ(result.comm.messages[i].direction, Direction::site_to_coordinator);
        EXPECT_EQ(result.comm.messages[i].points, result.summaries[i].size());
        total += result.summaries[i].size();
    }
    EXPECT_EQ(result.comm.total_points, total);
    EXPECT_EQ(result.merged.size(), total);
    EXPECT_EQ(result.merged.total_weight(), data.size());
    EXPECT_LE(static_cast<double>(total), communication_bound(result, 2.0, true));
}

TEST(RunDistributed, ConcurrentEqualsSequential) {
    const auto data = small_gauss(8);
    const auto part = partition_random(data, 5, 1);
    auto cfg = make_config(5, 20, 21);
    const auto sequential = run_distributed(part, cfg);
    cfg.concurrent_sites = true;
    const auto concurrent = run_distributed(part, cfg);
    EXPECT_EQ(sequential.merged.coords, concurrent.merged.coords);
    EXPECT_EQ(sequential.merged.weights, concurrent.merged.weights);
    EXPECT_EQ(sequential.clustering.centers, concurrent.clustering.centers);
    EXPECT_EQ(sequential.outlier_ids, concurrent.outlier_ids);
}

TEST(RunDistributed, EmptySitesSendNothing) {
    std::vector<Point> rows = {{0, 0}, {0, 1}, {5, 5}};
    const auto data = Dataset::from_rows(rows);
    const auto result = run_distributed(partition_random(data, 8, 3), make_config(1, 1, 4));
    EXPECT_EQ(result.comm.messages.size(), 8u);
    EXPECT_EQ(result.merged.total_weight(), 3u);
}

TEST(RunDistributed, OutlierIdsComeFromTrimmedEntries) {
    const auto data = small_gauss(12);
    const auto result = run_distributed(partition_random(data, 4, 7), make_config(5, 20, 3));
    Weight trimmed = 0;
    for (auto e : result.clustering.outliers) {
        trimmed += result.merged.weights[e];
    }
    EXPECT_EQ(result.outlier_ids.size(), trimmed);
    EXPECT_LE(trimmed, 20u);
    EXPECT_TRUE(std::is_sorted(result.outlier_ids.begin(), result.outlier_ids.end()));
}

TEST(RunDistributed, AdversarialSitesGetFullBudget) {
    const auto data = small_gauss(14);
    const auto part = partition_adversarial(data, 4, AdversarialMode::outliers_to_one_site);
    const auto result = run_distributed(part, make_config(5, 20, 5));
    EXPECT_EQ(result.budgets, (std::vector<std::size_t>(4, 20)));
    const auto scores = outlier_metrics(result.summary_ids(), result.outlier_ids, data.truth_ids());
    EXPECT_EQ(scores.pre_rec, 1.0);
}

TEST(RunDistributed, BaselinesMatchBallGrowSize) {
    const auto data = small_gauss(16);
    const auto part = partition_random(data, 3, 2);
    auto cfg = make_config(5, 20, 6);
    const auto ball = run_distributed(part, cfg);
    for (auto algo : {SummaryAlgorithm::rand, SummaryAlgorithm::d2pp}) {
        cfg.algorithm = algo;
        const auto base = run_distributed(part, cfg);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_LE(base.summaries[i].size(), ball.summaries[i].size());
        }
        EXPECT_EQ(base.merged.total_weight(), data.size());
    }
    cfg.algorithm = SummaryAlgorithm::rand;
    cfg.baseline_size = 17;
    const auto fixed = run_distributed(part, cfg);
    EXPECT_EQ(fixed.summaries[0].size(), 17u);
}

TEST(RunDistributed, SiteErrorsNameTheSite) {
    const auto data = small_gauss(18);
    auto cfg = make_config(5, 20, 7);
    cfg.params.beta = 2.0;
    try {
        run_distributed(partition_random(data, 3, 1), cfg);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("site 0:", 0), 0u) << e.what();
    }
    cfg.params.beta = 0.45;
    cfg.solver.max_iters = 0;
    try {
        run_distributed(partition_random(data, 3, 1), cfg);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("coordinator:", 0), 0u) << e.what();
    }
}

TEST(AlgorithmNames, RoundTrip) {
    for (auto a : {SummaryAlgorithm::ball_grow, SummaryAlgorithm::rand, SummaryAlgorithm::d2pp}) {
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    }
    EXPECT_THROW(parse_algorithm("kmeans"), std::invalid_argument);
}
