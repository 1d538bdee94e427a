#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <ballgrow/io.hpp>
#include <ballgrow/summary.hpp>

#include "support.hpp"

using namespace ballgrow;

namespace {

class TempFiles : public ::testing::Test {
protected:
    std::filesystem::path dir;

    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("ballgrow_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        const auto path = (dir / name).string();
        std::ofstream(path) << text;
        return path;
    }
};

}  // namespace

TEST_F(TempFiles, ThreeRows) {
    const auto data = load_delimited(write("a.csv", "0,0\n1,1\n2,2"));
    EXPECT_EQ(data.size(), 3u);
    EXPECT_EQ(data.dim, 2u);
    EXPECT_FALSE(data.truth_outliers.has_value());
    EXPECT_EQ(data.point(2)[1], 2.0);
}

TEST_F(TempFiles, HeaderSkipped) {
    LoadOptions opt;
    opt.has_header = true;
    const auto data = load_delimited(write("a.csv", "0,0\n1,1\n2,2"), opt);
    EXPECT_EQ(data.size(), 2u);
    EXPECT_EQ(data.point(0)[0], 1.0);
}

TEST_F(TempFiles, LabelColumnMarksOutliers) {
    LoadOptions opt;
    opt.has_header = true;
    opt.label_column = "cls";
    const auto path = write("l.csv", "x,y,cls\n0,0,n\n1,1,o\n2,2,n\n3,3,o\n");
    const auto data = load_delimited(path, opt);
    EXPECT_EQ(data.dim, 2u);
    EXPECT_EQ(*data.truth_outliers, (std::vector<std::size_t>{1, 3}));

    LoadOptions by_index;
    by_index.label_column = "2";
    const auto data2 = load_delimited(write("l2.csv", "0 0 n\n1 1 o\n2 2 n\n3 3 o\n"), by_index);
    EXPECT_EQ(*data2.truth_outliers, (std::vector<std::size_t>{1, 3}));
}

TEST_F(TempFiles, WhitespaceDelimited) {
    const auto data = load_delimited(write("w.txt", "1.5  2\t3\n\n4 5 6\n"));
    EXPECT_EQ(data.size(), 2u);
    EXPECT_EQ(data.dim, 3u);
    EXPECT_EQ(data.point(0)[0], 1.5);
}

TEST_F(TempFiles, RaggedRowNamesLine) {
    const auto path = write("r.csv", "0,0\n1,1\n2\n");
    try {
        load_delimited(path);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST_F(TempFiles, NonNumericCell) {
    EXPECT_THROW(load_delimited(write("n.csv", "0,0\n1,abc\n")), ParseError);
    EXPECT_THROW(load_delimited(write("i.csv", "0,inf\n")), ParseError);
}

TEST_F(TempFiles, EmptyFile) {
    EXPECT_THROW(load_delimited(write("e.csv", "")), std::runtime_error);
    EXPECT_THROW(load_delimited((dir / "missing.csv").string()), std::runtime_error);
}

TEST_F(TempFiles, WriteReadRoundTripIsExact) {
    for (std::size_t trial = 0; trial < 10; ++trial) {
        Rng rng(trial);
        const auto data = testkit::random_points(rng, 5 + trial * 11, 1 + trial % 3);
        const auto path = (dir / "rt.csv").string();
        write_delimited(path, data);
        const auto back = load_delimited(path);
        EXPECT_EQ(back.coords, data.coords);
    }
}

TEST_F(TempFiles, TruthSidecar) {
    GaussParams p{2, 10, 2, 0.1, 4, 2.0, 5};
    const auto data = gen_gauss(p);
    const auto path = (dir / "t.truth").string();
    write_truth(path, data);
    EXPECT_EQ(read_truth(path, data.size()), *data.truth_outliers);
    EXPECT_THROW(read_truth(write("bad.truth", "3\n99\n"), 10), ParseError);
}

TEST_F(TempFiles, SummaryFileKeepsEntries) {
    GaussParams p{3, 40, 2, 0.1, 5, 2.0, 9};
    const auto data = gen_gauss(p);
    SummaryParams params;
    params.k = 3;
    params.t = 2;
    params.seed = 4;
    const auto summary = augmented_summary_outliers(data, params);
    const auto path = (dir / "s.csv").string();
    write_summary(path, summary);
    const auto back = read_summary(path);
    ASSERT_EQ(back.size(), summary.size());
    EXPECT_EQ(back.dim, summary.dim);
    for (std::size_t e = 0; e < back.size(); ++e) {
        EXPECT_EQ(back.entries[e].coords, summary.entries[e].coords);
        EXPECT_EQ(back.entries[e].weight, summary.entries[e].weight);
        EXPECT_EQ(back.entries[e].provenance, summary.entries[e].provenance);
        EXPECT_EQ(back.entries[e].id, summary.entries[e].id);
    }
}
