#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include <ballgrow/dataset.hpp>

#include "support.hpp"

using namespace ballgrow;

namespace {

Dataset one_d(std::initializer_list<double> xs) {
    std::vector<Point> rows;
    for (double x : xs) {
        rows.push_back({x});
    }
    return Dataset::from_rows(rows);
}

std::multiset<PointId> all_ids(const SitePartition& p) {
    std::multiset<PointId> out;
    for (const auto& site : p.sites) {
        out.insert(site.ids.begin(), site.ids.end());
    }
    return out;
}

}  // namespace

TEST(Normalize, TwoValues) {
    const auto out = normalize(one_d({0, 2}));
    EXPECT_DOUBLE_EQ(out.point(0)[0], -1);
    EXPECT_DOUBLE_EQ(out.point(1)[0], 1);
}

TEST(Normalize, ConstantFeatureBecomesZero) {
    const auto out = normalize(one_d({5, 5, 5}));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(out.point(i)[0], 0.0);
    }
}

TEST(Normalize, ThreeValues) {
    // mean 2, population variance 2/3, so (x - 2) / sqrt(2/3) = {-sqrt(3/2), 0, sqrt(3/2)}
    const auto out = normalize(one_d({1, 2, 3}));
    EXPECT_NEAR(out.point(0)[0], -1.224744871391589, 1e-12);
    EXPECT_NEAR(out.point(1)[0], 0.0, 1e-12);
    EXPECT_NEAR(out.point(2)[0], 1.224744871391589, 1e-12);
}

TEST(Normalize, MomentsAndIdempotenceOnRandomData) {
    for (std::size_t trial = 0; trial < 30; ++trial) {
        Rng rng(trial);
        const auto data = testkit::random_points(rng, 1 + trial * 7, 1 + trial % 4);
        const auto once = normalize(data);
        const auto twice = normalize(once);
        const auto n = static_cast<double>(data.size());
        for (std::size_t j = 0; j < data.dim; ++j) {
            double mean = 0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                mean += once.point(i)[j];
            }
            mean /= n;
            double var = 0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                var += (once.point(i)[j] - mean) * (once.point(i)[j] - mean);
            }
            var /= n;
            EXPECT_NEAR(mean, 0, 1e-9);
            if (var > 0) {
                EXPECT_NEAR(std::sqrt(var), 1, 1e-9);
            }
        }
        for (std::size_t c = 0; c < once.coords.size(); ++c) {
            ASSERT_NEAR(once.coords[c], twice.coords[c], 1e-9);
        }
    }
}

TEST(GenGauss, PaperDefaultsShape) {
    GaussParams p;  // 100 centers x 10000 points, d=5, 5000 outliers, shift 2
    p.seed = 1;
    const auto data = gen_gauss(p);
    EXPECT_EQ(data.size(), 1000000u);
    EXPECT_EQ(data.dim, 5u);
    EXPECT_EQ(data.truth_outliers->size(), 5000u);
}

TEST(GenGauss, NoOutliers) {
    GaussParams p{3, 10, 2, 0.1, 0, 2.0, 5};
    const auto data = gen_gauss(p);
    EXPECT_TRUE(data.truth_outliers.has_value());
    EXPECT_TRUE(data.truth_outliers->empty());
}

TEST(GenGauss, Deterministic) {
    GaussParams p{4, 25, 3, 0.2, 7, 2.0, 99};
    const auto a = gen_gauss(p);
    const auto b = gen_gauss(p);
    EXPECT_EQ(a.coords, b.coords);
    EXPECT_EQ(a.truth_outliers, b.truth_outliers);
    p.seed = 100;
    EXPECT_NE(gen_gauss(p).coords, a.coords);
}

TEST(GenGauss, TooManyOutliers) {
    GaussParams p{2, 2, 2, 0.1, 5, 2.0, 1};
    EXPECT_THROW(gen_gauss(p), std::invalid_argument);
}

TEST(GenGauss, LabelsMatchShiftedPoints) {
    // Same draws with shift 0 give the unshifted positions; the points that
    // moved are exactly the labelled ones.
    GaussParams p{5, 40, 3, 0.1, 17, 2.0, 1234};
    const auto shifted = gen_gauss(p);
    p.shift_halfwidth = 0;
    const auto base = gen_gauss(p);
    EXPECT_EQ(shifted.truth_outliers, base.truth_outliers);
    std::set<std::size_t> truth(shifted.truth_outliers->begin(), shifted.truth_outliers->end());
    ASSERT_EQ(truth.size(), 17u);
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        const bool moved = squared_distance(shifted.point(i), base.point(i)) > 0;
        EXPECT_EQ(moved, truth.count(i) == 1) << "point " << i;
    }
}

TEST(PartitionRandom, SingleSiteIsIdentity) {
    GaussParams p{2, 10, 2, 0.1, 3, 2.0, 8};
    const auto data = gen_gauss(p);
    const auto part = partition_random(data, 1, 5);
    ASSERT_EQ(part.sites.size(), 1u);
    EXPECT_EQ(part.sites[0].coords, data.coords);
    EXPECT_EQ(part.sites[0].ids, data.ids);
    EXPECT_EQ(part.sites[0].truth_outliers, data.truth_outliers);
    EXPECT_EQ(part.kind, PartitionKind::random);
}

TEST(PartitionRandom, CompleteAndDisjoint) {
    for (std::size_t s : {1u, 2u, 3u, 7u, 40u}) {
        GaussParams p{3, 10, 2, 0.1, 4, 2.0, s};
        const auto data = gen_gauss(p);
        const auto part = partition_random(data, s, s * 13);
        const auto ids = all_ids(part);
        EXPECT_EQ(ids, std::multiset<PointId>(data.ids.begin(), data.ids.end()));
        std::size_t truth = 0;
        for (const auto& site : part.sites) {
            site.validate();
            truth += site.truth_outliers->size();
        }
        EXPECT_EQ(truth, 4u);
    }
}

TEST(PartitionRandom, SiteSizesConcentrate) {
    // 3 * sqrt(n p (1-p)) with n = 10000, p = 1/4 is about 130.
    Dataset data;
    data.dim = 1;
    for (std::size_t i = 0; i < 10000; ++i) {
        const double x = static_cast<double>(i);
        data.push_back(std::span<const double>(&x, 1), i);
    }
    const double slack = 3 * std::sqrt(10000 * 0.25 * 0.75);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto part = partition_random(data, 4, seed);
        bool ok = true;
        for (const auto& site : part.sites) {
            ok = ok && std::fabs(static_cast<double>(site.size()) - 2500) <= slack;
        }
        good += ok;
    }
    EXPECT_GE(good, 99);
}

TEST(PartitionRandom, MoreSitesThanPoints) {
    const auto data = one_d({1, 2, 3});
    const auto part = partition_random(data, 10, 1);
    EXPECT_EQ(part.sites.size(), 10u);
    EXPECT_EQ(part.total_size(), 3u);
}

TEST(PartitionAdversarial, OutliersToOneSite) {
    GaussParams p{4, 25, 2, 0.1, 10, 2.0, 77};
    const auto data = gen_gauss(p);
    const auto part = partition_adversarial(data, 5, AdversarialMode::outliers_to_one_site);
    EXPECT_EQ(part.kind, PartitionKind::adversarial);
    EXPECT_EQ(part.sites[0].truth_ids(), data.truth_ids());
    for (std::size_t i = 1; i < part.sites.size(); ++i) {
        EXPECT_TRUE(part.sites[i].truth_outliers->empty());
    }
    EXPECT_EQ(all_ids(part), std::multiset<PointId>(data.ids.begin(), data.ids.end()));
}

TEST(PartitionAdversarial, ContiguousBlocks) {
    const auto data = one_d({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto part = partition_adversarial(data, 2, AdversarialMode::contiguous_blocks);
    ASSERT_EQ(part.sites.size(), 2u);
    EXPECT_EQ(part.sites[0].ids, (std::vector<PointId>{0, 1, 2, 3, 4}));
    EXPECT_EQ(part.sites[1].ids, (std::vector<PointId>{5, 6, 7, 8, 9}));

    const auto uneven = partition_adversarial(data, 3, AdversarialMode::contiguous_blocks);
    EXPECT_EQ(uneven.sites[0].size(), 4u);
    EXPECT_EQ(uneven.sites[1].size(), 3u);
    EXPECT_EQ(uneven.sites[2].size(), 3u);
}

TEST(PartitionAdversarial, SingleSiteIdentity) {
    GaussParams p{2, 5, 2, 0.1, 2, 2.0, 3};
    const auto data = gen_gauss(p);
    for (auto mode : {AdversarialMode::outliers_to_one_site, AdversarialMode::contiguous_blocks}) {
        const auto part = partition_adversarial(data, 1, mode);
        EXPECT_EQ(part.sites[0].ids, data.ids);
        EXPECT_EQ(part.sites[0].coords, data.coords);
    }
}

TEST(PartitionAdversarial, RequiresLabels) {
    const auto data = one_d({1, 2});
    EXPECT_THROW(partition_adversarial(data, 2, AdversarialMode::outliers_to_one_site), std::invalid_argument);
}

TEST(Dataset, ValidateRejectsNonFinite) {
    auto data = one_d({1, 2});
    data.coords[1] = std::nan("");
    EXPECT_THROW(data.validate(), std::invalid_argument);
}
