// Generates a small gauss dataset, splits it over four sites, and runs the
// one-round protocol with augmented ball-growing summaries.

#include <iostream>

#include <ballgrow/ballgrow.hpp>

int main() {
    using namespace ballgrow;

    GaussParams gauss;
    gauss.num_centers = 10;
    gauss.pts_per_center = 1000;
    gauss.num_outliers = 50;
    gauss.seed = 7;
    const auto data = gen_gauss(gauss);

    const auto partition = partition_random(data, 4, 1);

    DistributedConfig cfg;
    cfg.k = 10;
    cfg.t = 50;
    cfg.seed = 1;
    const auto result = run_distributed(partition, cfg);

    const auto scores = outlier_metrics(result.summary_ids(), result.outlier_ids, data.truth_ids());
    std::cout << "summary size " << result.merged.size() << ", communication " << result.comm.total_points
              << " points\n";
    std::cout << "l1 " << objective_loss(data, result.clustering.centers, result.outlier_ids, 1) << ", l2 "
              << objective_loss(data, result.clustering.centers, result.outlier_ids, 2) << '\n';
    std::cout << "preRec " << scores.pre_rec.value_or(0) << ", prec " << scores.prec.value_or(0) << ", recall "
              << scores.recall.value_or(0) << '\n';
}
