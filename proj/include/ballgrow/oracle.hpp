#ifndef BALLGROW_ORACLE_HPP
#define BALLGROW_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "solver.hpp"

namespace ballgrow {

struct OracleLimits {
    std::size_t max_entries = 16;
    std::size_t max_k = 3;
    std::size_t max_t = 3;
    /// Above this many labelings the exhaustive partition search is skipped.
    double max_partition_labelings = 5e6;
};

/**
 * Exhaustive (k,t) clustering for tiny inputs.
 *
 * Outliers are counted on the expanded input: an entry of weight w stands for
 * w identical points, any number of which may be discarded.
 *
 * 1. Every subset of at most k entry locations is tried as the center set;
 *    for fixed centers the farthest t unit copies are discarded, which is
 *    optimal for that center set.
 * 2. For the means objective each such configuration is refined by moving
 *    centers to the centroids of the induced clusters.
 * 3. For the means objective, when small enough, every split of the
 *    outlier budget over entries and every partition of the kept entries into
 *    at most k groups is enumerated with centroid centers. This makes the
 *    means result the exact optimum.
 *
 * `outliers` lists entries with at least one discarded copy and
 * `outlier_weight` the number of discarded copies.
 */
inline ClusteringResult brute_force_discrete(const WeightedSet& q, std::size_t k, std::size_t t, Objective objective,
                                             const OracleLimits& limits = {}) {
    const std::size_t n = q.size();
    if (n == 0 || k == 0) {
        throw std::invalid_argument("brute_force_discrete: empty input or k = 0");
    }
    if (n > limits.max_entries || k > limits.max_k || t > limits.max_t) {
        throw std::invalid_argument("brute_force_discrete: instance exceeds the exhaustive-search size guard");
    }
    const int power = objective_power(objective);

    ClusteringResult best;
    best.objective = objective;
    best.cost = std::numeric_limits<double>::infinity();

    // Evaluates kept weights `kept`, labels, centers; costs summed in entry order.
    auto consider = [&](const std::vector<double>& kept, const std::vector<std::int64_t>& labels,
                        const std::vector<Point>& centers) {
        double cost = 0;
        for (std::size_t e = 0; e < n; ++e) {
            if (kept[e] > 0) {
                cost += kept[e] * powered_distance(q.point(e), centers[static_cast<std::size_t>(labels[e])], power);
            }
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.centers = centers;
            best.assignment.assign(n, -1);
            best.outliers.clear();
            best.outlier_weight = 0;
            for (std::size_t e = 0; e < n; ++e) {
                const auto dropped = q.weights[e] - static_cast<Weight>(kept[e]);
                if (dropped > 0) {
                    best.outliers.push_back(e);
                    best.outlier_weight += dropped;
                }
                if (kept[e] > 0) {
                    best.assignment[e] = labels[e];
                }
            }
        }
    };

    auto refine_to_centroids = [&](const std::vector<double>& kept, std::vector<std::int64_t> labels,
                                   std::size_t groups) {
        std::vector<Point> centers;
        std::vector<std::int64_t> remap(groups, -1);
        for (std::size_t g = 0; g < groups; ++g) {
            bool nonempty = false;
            for (std::size_t e = 0; e < n; ++e) {
                if (kept[e] > 0 && labels[e] == static_cast<std::int64_t>(g)) {
                    nonempty = true;
                    break;
                }
            }
            if (!nonempty) {
                continue;
            }
            std::vector<std::int64_t> masked(n, -1);
            for (std::size_t e = 0; e < n; ++e) {
                if (kept[e] > 0) {
                    masked[e] = labels[e];
                }
            }
            remap[g] = static_cast<std::int64_t>(centers.size());
            centers.push_back(detail::weighted_centroid(q, masked, static_cast<std::int64_t>(g), kept));
        }
        for (std::size_t e = 0; e < n; ++e) {
            labels[e] = kept[e] > 0 ? remap[static_cast<std::size_t>(labels[e])] : 0;
        }
        if (centers.empty()) {
            centers.push_back(Point(q.point(0).begin(), q.point(0).end()));
        }
        consider(kept, labels, centers);
    };

    // Stage 1 and 2: discrete centers.
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
        if (!chosen.empty()) {
            std::vector<Point> centers;
            for (auto e : chosen) {
                centers.emplace_back(q.point(e).begin(), q.point(e).end());
            }
            std::vector<detail::Nearest> nearest(n);
            for (std::size_t e = 0; e < n; ++e) {
                nearest[e] = detail::nearest_center(q.point(e), centers);
            }
            std::vector<std::size_t> order(n);
            for (std::size_t e = 0; e < n; ++e) {
                order[e] = e;
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return nearest[a].dist > nearest[b].dist; });
            std::vector<double> kept(n);
            std::vector<std::int64_t> labels(n);
            Weight budget = t;
            for (auto e : order) {
                const Weight drop = std::min(budget, q.weights[e]);
                budget -= drop;
                kept[e] = static_cast<double>(q.weights[e] - drop);
                labels[e] = static_cast<std::int64_t>(nearest[e].index);
            }
            consider(kept, labels, centers);
            if (objective == Objective::means) {
                refine_to_centroids(kept, labels, centers.size());
            }
        }
        if (chosen.size() == k) {
            return;
        }
        for (std::size_t e = start; e < n; ++e) {
            chosen.push_back(e);
            choose(e + 1);
            chosen.pop_back();
        }
    };
    choose(0);

    if (objective != Objective::means) {
        return best;
    }

    // Stage 3: exhaustive partitions (means only), when affordable.
    double outlier_splits = 1;
    for (std::size_t j = 1; j <= t; ++j) {
        outlier_splits = outlier_splits * static_cast<double>(n + j) / static_cast<double>(j);
    }
    double labelings = outlier_splits;
    for (std::size_t e = 1; e < n; ++e) {
        labelings *= static_cast<double>(k);
    }
    if (labelings > limits.max_partition_labelings) {
        return best;
    }

    std::vector<double> kept(n);
    std::vector<std::int64_t> labels(n, 0);
    std::function<void(std::size_t, std::int64_t)> label_from = [&](std::size_t e, std::int64_t used) {
        if (e == n) {
            refine_to_centroids(kept, labels, static_cast<std::size_t>(std::max<std::int64_t>(used, 1)));
            return;
        }
        if (kept[e] <= 0) {
            labels[e] = 0;
            label_from(e + 1, used);
            return;
        }
        // Restricted growth: an entry may open at most one new group.
        const auto limit = std::min<std::int64_t>(used + 1, static_cast<std::int64_t>(k));
        for (std::int64_t g = 0; g < limit; ++g) {
            labels[e] = g;
            label_from(e + 1, std::max(used, g + 1));
        }
    };
    std::function<void(std::size_t, Weight)> split_budget = [&](std::size_t e, Weight budget) {
        if (e == n) {
            label_from(0, 0);
            return;
        }
        const Weight most = std::min(budget, q.weights[e]);
        for (Weight drop = 0; drop <= most; ++drop) {
            kept[e] = static_cast<double>(q.weights[e] - drop);
            split_budget(e + 1, budget - drop);
        }
    };
    split_budget(0, t);
    return best;
}

}  // namespace ballgrow

#endif  // BALLGROW_ORACLE_HPP
