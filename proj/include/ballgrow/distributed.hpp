#ifndef BALLGROW_DISTRIBUTED_HPP
#define BALLGROW_DISTRIBUTED_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "solver.hpp"
#include "summary.hpp"

/**
 * @file distributed.hpp
 *
 * In-process coordinator model. Every site summarizes its shard on its own
 * and sends one message to the coordinator, which merges the summaries in site
 * order and runs k-means-- on the union.
 */

namespace ballgrow {

enum class SummaryAlgorithm { ball_grow, rand, d2pp };

inline const char* to_string(SummaryAlgorithm a) {
    switch (a) {
        case SummaryAlgorithm::ball_grow: return "ball_grow";
        case SummaryAlgorithm::rand: return "rand";
        case SummaryAlgorithm::d2pp: return "d2pp";
    }
    return "unknown";
}

inline SummaryAlgorithm parse_algorithm(const std::string& name) {
    if (name == "ball_grow" || name == "ball-grow") return SummaryAlgorithm::ball_grow;
    if (name == "rand") return SummaryAlgorithm::rand;
    if (name == "d2pp" || name == "kmeans++") return SummaryAlgorithm::d2pp;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

enum class Direction { site_to_coordinator, coordinator_to_site };

struct Message {
    Direction direction = Direction::site_to_coordinator;
    std::size_t site = 0;
    std::size_t points = 0;
};

struct CommLog {
    std::vector<Message> messages;
    std::size_t total_points = 0;

    void record(Direction direction, std::size_t site, std::size_t points) {
        messages.push_back({direction, site, points});
        total_points += points;
    }
};

struct DistributedConfig {
    std::size_t k = 1;
    std::size_t t = 0;
    /// alpha, beta and objective are taken from here; k, t and seed are set per site.
    SummaryParams params;
    bool augmented = true;
    SummaryAlgorithm algorithm = SummaryAlgorithm::ball_grow;
    /// Per-site sample size for rand/d2pp; 0 matches the ball-growing summary size of that site.
    std::size_t baseline_size = 0;
    SolverConfig solver;
    std::uint64_t seed = 0;
    bool concurrent_sites = false;
};

/// Outlier parameter handed to each site: min(t, ceil(2t/s)) for random shards, t otherwise.
inline std::size_t site_budget(std::size_t t, std::size_t s, PartitionKind kind) {
    if (s == 0) {
        throw std::invalid_argument("site_budget: site count must be at least 1");
    }
    if (kind == PartitionKind::adversarial) {
        return t;
    }
    return std::min(t, (2 * t + s - 1) / s);
}

struct DistributedResult {
    ClusteringResult clustering;
    CommLog comm;
    std::vector<Summary> summaries;
    std::vector<std::size_t> budgets;
    WeightedSet merged;
    std::vector<PointId> outlier_ids;  ///< global ids of points mapped to outlier entries, ascending

    std::vector<PointId> summary_ids() const {
        std::vector<PointId> out;
        for (const auto& s : summaries) {
            for (const auto& e : s.entries) {
                out.push_back(e.id);
            }
        }
        return out;
    }
};

/// Summary built by one site from its shard only.
inline Summary build_site_summary(const Dataset& shard, const DistributedConfig& cfg, std::size_t site,
                                  std::size_t budget) {
    if (shard.empty()) {
        Summary empty;
        empty.dim = shard.dim;
        empty.objective = cfg.params.objective;
        return empty;
    }
    SummaryParams params = cfg.params;
    params.k = cfg.k;
    params.t = budget;
    params.seed = cfg.seed + site;
    auto ball = [&] { return cfg.augmented ? augmented_summary_outliers(shard, params) : summary_outliers(shard, params); };
    if (cfg.algorithm == SummaryAlgorithm::ball_grow) {
        return ball();
    }
    std::size_t m = cfg.baseline_size;
    if (m == 0) {
        m = ball().size();
    }
    m = std::clamp<std::size_t>(m, 1, shard.size());
    if (cfg.algorithm == SummaryAlgorithm::rand) {
        return rand_summary(shard, m, params.seed, params.objective);
    }
    return d2_summary(shard, m, params.seed, params.objective);
}

/**
 * Runs the one-round protocol on a partition.
 *
 * Sites may run concurrently; the merge is a fold over site index, so the
 * result does not depend on scheduling.
 */
inline DistributedResult run_distributed(const SitePartition& partition, const DistributedConfig& cfg) {
    const std::size_t s = partition.sites.size();
    if (s == 0) {
        throw std::invalid_argument("run_distributed: partition has no sites");
    }
    DistributedResult out;
    out.budgets.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        out.budgets[i] = site_budget(cfg.t, s, partition.kind);
    }

    auto site_task = [&](std::size_t i) {
        try {
            return build_site_summary(partition.sites[i], cfg, i, out.budgets[i]);
        } catch (const std::exception& e) {
            throw std::runtime_error("site " + std::to_string(i) + ": " + e.what());
        }
    };

    out.summaries.resize(s);
    if (cfg.concurrent_sites) {
        std::vector<std::future<Summary>> inbox;
        inbox.reserve(s);
        for (std::size_t i = 0; i < s; ++i) {
            inbox.push_back(std::async(std::launch::async, site_task, i));
        }
        for (std::size_t i = 0; i < s; ++i) {
            out.summaries[i] = inbox[i].get();
        }
    } else {
        for (std::size_t i = 0; i < s; ++i) {
            out.summaries[i] = site_task(i);
        }
    }

    for (std::size_t i = 0; i < s; ++i) {
        out.comm.record(Direction::site_to_coordinator, i, out.summaries[i].size());
        out.merged.append(out.summaries[i]);
    }
    if (out.merged.dim == 0) {
        for (const auto& site : partition.sites) {
            out.merged.dim = std::max(out.merged.dim, site.dim);
        }
    }
    if (out.merged.empty()) {
        throw std::invalid_argument("run_distributed: all sites are empty");
    }

    SolverConfig solver = cfg.solver;
    solver.k = cfg.k;
    solver.t = cfg.t;
    solver.seed = cfg.seed;
    try {
        out.clustering = kmeans_mm(out.merged, solver);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("coordinator: ") + e.what());
    }

    std::size_t offset = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const auto& shard = partition.sites[i];
        const auto& summary = out.summaries[i];
        for (std::size_t x = 0; x < shard.size(); ++x) {
            if (out.clustering.assignment[offset + summary.sigma[x]] < 0) {
                out.outlier_ids.push_back(shard.ids[x]);
            }
        }
        offset += summary.size();
    }
    std::sort(out.outlier_ids.begin(), out.outlier_ids.end());
    return out;
}

/**
 * Explicit-constant communication bound for ball-growing summaries:
 * sum over sites of r_i * alpha * kappa_i + 8 * budget_i, with a further
 * 8 * budget_i per site when augmented (the extra centers number at most
 * the residual size).
 */
inline double communication_bound(const DistributedResult& result, double alpha, bool augmented) {
    double bound = 0;
    for (std::size_t i = 0; i < result.summaries.size(); ++i) {
        const auto& stats = result.summaries[i].stats;
        const double b = static_cast<double>(result.budgets[i]);
        bound += static_cast<double>(stats.rounds) * alpha * static_cast<double>(stats.kappa) + 8 * b;
        if (augmented) {
            bound += 8 * b;
        }
    }
    return bound;
}

}  // namespace ballgrow

#endif  // BALLGROW_DISTRIBUTED_HPP
