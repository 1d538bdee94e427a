#ifndef BALLGROW_SOLVER_HPP
#define BALLGROW_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dataset.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "summary.hpp"

namespace ballgrow {

/// Weighted points fed to second-level clustering.
struct WeightedSet {
    std::size_t dim = 0;
    std::vector<double> coords;
    std::vector<Weight> weights;
    std::vector<PointId> ids;

    std::size_t size() const { return weights.size(); }
    bool empty() const { return weights.empty(); }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }

    Weight total_weight() const { return std::accumulate(weights.begin(), weights.end(), Weight{0}); }

    void append(const Summary& summary) {
        if (summary.entries.empty()) {
            return;
        }
        if (dim == 0) {
            dim = summary.dim;
        } else if (summary.dim != dim) {
            throw std::invalid_argument("weighted set: dimension mismatch");
        }
        for (const auto& e : summary.entries) {
            coords.insert(coords.end(), e.coords.begin(), e.coords.end());
            weights.push_back(e.weight);
            ids.push_back(e.id);
        }
    }

    static WeightedSet from_summary(const Summary& summary) {
        WeightedSet out;
        out.dim = summary.dim;
        out.append(summary);
        return out;
    }

    /// Every point with weight one.
    static WeightedSet from_dataset(const Dataset& data) {
        WeightedSet out;
        out.dim = data.dim;
        out.coords = data.coords;
        out.weights.assign(data.size(), 1);
        out.ids = data.ids;
        return out;
    }
};

struct ClusteringResult {
    std::vector<Point> centers;
    std::vector<std::size_t> outliers;      ///< entry indices, ascending
    std::vector<std::int64_t> assignment;   ///< center index per entry, -1 for outliers
    Weight outlier_weight = 0;
    double cost = 0;
    std::size_t iterations = 0;
    std::vector<double> cost_history;
    Objective objective = Objective::means;
};

struct SolverConfig {
    std::size_t k = 1;
    std::size_t t = 0;
    Objective objective = Objective::means;
    std::size_t max_iters = 100;
    double rel_tol = 1e-4;
    std::uint64_t seed = 0;
    /// Independent seedings; the lowest final cost wins (ties go to the earliest).
    std::size_t restarts = 10;

    void validate() const {
        if (k < 1) {
            throw std::invalid_argument("solver: k must be at least 1");
        }
        if (max_iters < 1) {
            throw std::invalid_argument("solver: max_iters must be at least 1");
        }
        if (restarts < 1) {
            throw std::invalid_argument("solver: restarts must be at least 1");
        }
        if (!(rel_tol >= 0)) {
            throw std::invalid_argument("solver: rel_tol must be non-negative");
        }
    }
};

namespace detail {

/// Index drawn with probability mass[i] / sum(mass); npos when the mass is zero.
inline std::size_t weighted_pick(std::span<const double> mass, Rng& rng) {
    double total = 0;
    for (double m : mass) {
        total += m;
    }
    if (!(total > 0)) {
        return npos;
    }
    const double target = rng.uniform01() * total;
    double cumulative = 0;
    std::size_t pick = npos;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] <= 0) {
            continue;
        }
        cumulative += mass[i];
        pick = i;
        if (cumulative > target) {
            break;
        }
    }
    return pick;
}

inline Nearest nearest_center(std::span<const double> x, const std::vector<Point>& centers) {
    Nearest best;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = distance(x, centers[c]);
        if (d < best.dist) {
            best.dist = d;
            best.index = c;
        }
    }
    return best;
}

/// Weighted centroid of the entries labelled `label`, with per-entry weights `w`.
inline Point weighted_centroid(const WeightedSet& q, std::span<const std::int64_t> labels, std::int64_t label,
                               std::span<const double> w) {
    Point c(q.dim, 0.0);
    double total = 0;
    for (std::size_t e = 0; e < q.size(); ++e) {
        if (labels[e] != label) {
            continue;
        }
        const auto p = q.point(e);
        for (std::size_t j = 0; j < q.dim; ++j) {
            c[j] += w[e] * p[j];
        }
        total += w[e];
    }
    for (auto& v : c) {
        v /= total;
    }
    return c;
}

}  // namespace detail

/**
 * Weighted D^p seeding over summary entries. The first center is drawn with
 * probability proportional to weight, each later one proportional to
 * weight * d(entry, chosen)^p. Stops once every entry coincides with a chosen
 * center, so at most the number of distinct entry locations is returned.
 */
inline std::vector<Point> d2_seed(const WeightedSet& q, std::size_t k, std::uint64_t seed, Objective objective) {
    if (q.empty()) {
        throw std::invalid_argument("d2_seed: empty input");
    }
    const int p = objective_power(objective);
    Rng rng(seed, Stream::solver);
    std::vector<Point> centers;
    std::vector<double> mindist(q.size(), 1.0);
    std::vector<double> mass(q.size());
    while (centers.size() < k) {
        for (std::size_t e = 0; e < q.size(); ++e) {
            mass[e] = static_cast<double>(q.weights[e]) * mindist[e];
        }
        const auto pick = detail::weighted_pick(mass, rng);
        if (pick == detail::npos) {
            break;
        }
        const auto chosen = q.point(pick);
        centers.emplace_back(chosen.begin(), chosen.end());
        for (std::size_t e = 0; e < q.size(); ++e) {
            const double d = powered_distance(q.point(e), chosen, p);
            mindist[e] = centers.size() == 1 ? d : std::min(mindist[e], d);
        }
    }
    return centers;
}

namespace detail {

struct TrimmedAssignment {
    std::vector<Nearest> nearest;
    std::vector<char> outlier;
    Weight outlier_weight = 0;
    double cost = 0;
};

inline double trimmed_cost(const WeightedSet& q, const std::vector<Nearest>& nearest, const std::vector<char>& outlier,
                           int power) {
    double cost = 0;
    for (std::size_t e = 0; e < q.size(); ++e) {
        if (!outlier[e]) {
            cost += static_cast<double>(q.weights[e]) * apply_power(nearest[e].dist, power);
        }
    }
    return cost;
}

/**
 * Marks entries as outliers in decreasing-distance order (ties by entry
 * index) until the next entry would push the outlier weight past t.
 * When `previous` is given and keeping that outlier set is cheaper under the
 * current centers, it is kept instead.
 */
inline TrimmedAssignment assign_and_trim(const WeightedSet& q, const std::vector<Point>& centers, Weight t, int power,
                                         const std::vector<char>* previous) {
    TrimmedAssignment out;
    out.nearest.resize(q.size());
    for (std::size_t e = 0; e < q.size(); ++e) {
        out.nearest[e] = nearest_center(q.point(e), centers);
    }

    std::vector<std::size_t> order(q.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.nearest[a].dist > out.nearest[b].dist; });
    out.outlier.assign(q.size(), 0);
    for (auto e : order) {
        if (out.outlier_weight + q.weights[e] > t) {
            break;
        }
        out.outlier[e] = 1;
        out.outlier_weight += q.weights[e];
    }
    out.cost = trimmed_cost(q, out.nearest, out.outlier, power);

    if (previous != nullptr) {
        const double kept = trimmed_cost(q, out.nearest, *previous, power);
        if (kept < out.cost) {
            out.outlier = *previous;
            out.cost = kept;
            out.outlier_weight = 0;
            for (std::size_t e = 0; e < q.size(); ++e) {
                if (out.outlier[e]) {
                    out.outlier_weight += q.weights[e];
                }
            }
        }
    }
    return out;
}

inline ClusteringResult finish_result(const WeightedSet& q, std::vector<Point> centers, const TrimmedAssignment& a,
                                      Objective objective) {
    ClusteringResult out;
    out.objective = objective;
    out.centers = std::move(centers);
    out.assignment.resize(q.size());
    for (std::size_t e = 0; e < q.size(); ++e) {
        if (a.outlier[e]) {
            out.assignment[e] = -1;
            out.outliers.push_back(e);
        } else {
            out.assignment[e] = static_cast<std::int64_t>(a.nearest[e].index);
        }
    }
    out.outlier_weight = a.outlier_weight;
    out.cost = a.cost;
    return out;
}

inline ClusteringResult kmeans_mm_once(const WeightedSet& q, const SolverConfig& cfg, std::uint64_t seed) {
    const int power = objective_power(cfg.objective);
    auto centers = d2_seed(q, cfg.k, seed, cfg.objective);

    std::vector<double> history;
    detail::TrimmedAssignment current;
    std::vector<char> previous_outliers;
    for (std::size_t iter = 0;; ++iter) {
        current = detail::assign_and_trim(q, centers, cfg.t, power, iter == 0 ? nullptr : &previous_outliers);
        history.push_back(current.cost);
        if (history.size() >= 2) {
            const double prev = history[history.size() - 2];
            if (prev - current.cost <= cfg.rel_tol * prev) {
                break;
            }
        }
        if (history.size() >= cfg.max_iters) {
            break;
        }
        previous_outliers = current.outlier;

        std::vector<std::int64_t> labels(q.size());
        std::vector<double> w(q.size());
        std::vector<std::size_t> members(centers.size(), 0);
        for (std::size_t e = 0; e < q.size(); ++e) {
            labels[e] = current.outlier[e] ? -1 : static_cast<std::int64_t>(current.nearest[e].index);
            w[e] = static_cast<double>(q.weights[e]);
            if (!current.outlier[e]) {
                ++members[current.nearest[e].index];
            }
        }
        std::vector<char> used_for_reseed(q.size(), 0);
        std::vector<Point> updated(centers.size());
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (members[c] > 0) {
                updated[c] = detail::weighted_centroid(q, labels, static_cast<std::int64_t>(c), w);
                continue;
            }
            std::size_t best = detail::npos;
            double best_cost = -1;
            for (std::size_t e = 0; e < q.size(); ++e) {
                if (current.outlier[e] || used_for_reseed[e]) {
                    continue;
                }
                const double cost = w[e] * apply_power(current.nearest[e].dist, power);
                if (cost > best_cost) {
                    best_cost = cost;
                    best = e;
                }
            }
            if (best == detail::npos) {
                updated[c] = centers[c];
            } else {
                used_for_reseed[best] = 1;
                const auto p = q.point(best);
                updated[c].assign(p.begin(), p.end());
            }
        }
        centers = std::move(updated);
    }

    auto out = finish_result(q, std::move(centers), current, cfg.objective);
    out.iterations = history.size();
    out.cost_history = std::move(history);
    return out;
}

}  // namespace detail

/**
 * Weighted k-means-- on a summary.
 *
 * Seeds with `d2_seed`, then alternates: assign each entry to its nearest
 * center, trim the farthest entries up to total weight t, and move every
 * center to the weighted centroid of its cluster (also for the median
 * objective). An empty cluster is re-seeded at the non-outlier entry with the
 * largest weighted assignment cost. Stops when the relative cost decrease
 * drops below `rel_tol` or after `max_iters` assignments.
 *
 * The returned centers are those of the last assignment, so `cost` is exactly
 * the trimmed cost of `assignment`. Under the means objective the recorded
 * cost sequence is non-increasing.
 *
 * The whole procedure runs `cfg.restarts` times; restart r seeds with
 * cfg.seed + r * 0x9e3779b97f4a7c15 and the lowest final cost is kept, ties
 * going to the earliest restart.
 */
inline ClusteringResult kmeans_mm(const WeightedSet& q, const SolverConfig& cfg) {
    cfg.validate();
    if (q.empty()) {
        throw std::invalid_argument("kmeans_mm: empty input");
    }
    ClusteringResult best;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto run = detail::kmeans_mm_once(q, cfg, cfg.seed + r * 0x9e3779b97f4a7c15ULL);
        if (r == 0 || run.cost < best.cost) {
            best = std::move(run);
        }
    }
    return best;
}

/// Trimmed cost of an existing result's assignment re-evaluated with power p:
/// sum over non-outlier entries of w * d(entry, assigned center)^p.
inline double assignment_cost(const WeightedSet& q, const ClusteringResult& result, int power) {
    double cost = 0;
    for (std::size_t e = 0; e < q.size(); ++e) {
        const auto c = result.assignment[e];
        if (c >= 0) {
            cost += static_cast<double>(q.weights[e]) *
                    powered_distance(q.point(e), result.centers[static_cast<std::size_t>(c)], power);
        }
    }
    return cost;
}

}  // namespace ballgrow

#endif  // BALLGROW_SOLVER_HPP
