#include <sstream>

#include <gtest/gtest.h>

#include <ballgrow/experiment.hpp>

using namespace ballgrow;

namespace {

ExperimentSpec small_spec(SummaryAlgorithm algo = SummaryAlgorithm::ball_grow) {
    ExperimentSpec spec;
    spec.data.gauss = GaussParams{4, 100, 3, 0.1, 10, 2.0, 5};
    spec.algorithm = algo;
    spec.k = 4;
    spec.t = 10;
    spec.s = 3;
    spec.repeats = 10;
    spec.base_seed = 40;
    return spec;
}

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Experiment, TenRepeatsGiveTenRowsAndAggregate) {
    const auto spec = small_spec();
    const auto data = load_dataset(spec.data);
    const auto rows = run_experiment(spec, data);
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        EXPECT_EQ(rows[r].seed, 40 + r);
    }
    const auto csv = experiment_csv(rows);
    EXPECT_EQ(count_lines(csv), 12u);
    EXPECT_NE(csv.find("\naggregate,,ball_grow,"), std::string::npos);
}

TEST(Experiment, SameSeedSameBytes) {
    const auto spec = small_spec();
    const auto data = load_dataset(spec.data);
    const auto a = run_experiment(spec, data);
    const auto b = run_experiment(spec, load_dataset(spec.data));
    EXPECT_EQ(experiment_csv(a), experiment_csv(b));
    EXPECT_EQ(experiment_json(spec, a), experiment_json(spec, b));
    EXPECT_EQ(experiment_json(spec, a).find("wall"), std::string::npos);
}

TEST(Experiment, TinyDatasetRuns) {
    ExperimentSpec spec;
    spec.data.gauss = GaussParams{1, 5, 2, 0.1, 0, 2.0, 1};
    spec.k = 1;
    spec.t = 1;
    spec.s = 1;
    const auto rows = run_experiment(spec, load_dataset(spec.data));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].pre_rec.has_value());
    EXPECT_EQ(rows[0].summary_size, 5u);
}

TEST(Compare, NeedsTwoMatchingSpecs) {
    const auto spec = small_spec();
    const auto data = load_dataset(spec.data);
    EXPECT_THROW(compare_experiments({spec}, data), std::invalid_argument);
    auto other = small_spec(SummaryAlgorithm::rand);
    other.k = 5;
    EXPECT_THROW(compare_experiments({spec, other}, data), std::invalid_argument);
    other = small_spec(SummaryAlgorithm::rand);
    other.data.gauss->seed = 6;
    EXPECT_THROW(compare_experiments({spec, other}, data), std::invalid_argument);
}

TEST(Compare, OneRowPerSpec) {
    auto a = small_spec();
    auto b = small_spec(SummaryAlgorithm::rand);
    a.repeats = b.repeats = 2;
    const auto rows = compare_experiments({a, b}, load_dataset(a.data));
    ASSERT_EQ(rows.size(), 2u);
    const auto csv = compare_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "algo,summarySize,l1_loss,l2_loss,preRec,prec,recall,comm_points");
    EXPECT_EQ(count_lines(csv), 3u);
}

TEST(SpecJson, RoundTrip) {
    auto spec = small_spec(SummaryAlgorithm::d2pp);
    spec.partition = "contiguous_blocks";
    spec.objective = Objective::median;
    spec.augmented = false;
    spec.beta = 0.3;
    const auto back = spec_from_json(to_json(spec));
    EXPECT_EQ(to_json(back).dump(), to_json(spec).dump());
    EXPECT_TRUE(back.data == spec.data);
}

TEST(SpecJson, SeedIsRequired) {
    auto j = to_json(small_spec());
    j.erase("seed");
    EXPECT_THROW(spec_from_json(j), std::exception);
}

TEST(SpecJson, InvalidValuesRejected) {
    auto j = to_json(small_spec());
    j["partition"] = "sideways";
    EXPECT_THROW(spec_from_json(j), std::invalid_argument);
    j = to_json(small_spec());
    j["algorithm"] = "nope";
    EXPECT_THROW(spec_from_json(j), std::invalid_argument);
}
