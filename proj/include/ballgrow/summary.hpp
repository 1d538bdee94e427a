#ifndef BALLGROW_SUMMARY_HPP
#define BALLGROW_SUMMARY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "geometry.hpp"
#include "random.hpp"

/**
 * @file summary.hpp
 *
 * First-level summaries: the ball-growing construction (plain and augmented)
 * and the two baseline builders (uniform sample, D^p sampling).
 */

namespace ballgrow {

struct SummaryParams {
    std::size_t k = 1;
    std::size_t t = 0;
    double alpha = 2.0;
    double beta = 0.45;
    std::uint64_t seed = 0;
    Objective objective = Objective::median;

    void validate() const {
        if (k < 1) {
            throw std::invalid_argument("summary: k must be at least 1");
        }
        if (!(alpha > 0) || !std::isfinite(alpha)) {
            throw std::invalid_argument("summary: alpha must be positive");
        }
        if (!(beta > 0 && beta < 1)) {
            throw std::invalid_argument("summary: beta must lie strictly between 0 and 1");
        }
    }
};

enum class Provenance {
    center,             ///< sampled in a ball-growing round
    outlier_candidate,  ///< left over after the last round; maps to itself
    augment,            ///< extra center added by the augmentation step
    sample,             ///< baseline builders
};

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::center: return "center";
        case Provenance::outlier_candidate: return "outlier_candidate";
        case Provenance::augment: return "augment";
        case Provenance::sample: return "sample";
    }
    return "unknown";
}

inline Provenance parse_provenance(const std::string& s) {
    if (s == "center") return Provenance::center;
    if (s == "outlier_candidate") return Provenance::outlier_candidate;
    if (s == "augment") return Provenance::augment;
    if (s == "sample") return Provenance::sample;
    throw std::invalid_argument("unknown provenance tag '" + s + "'");
}

struct SummaryEntry {
    PointId id = 0;
    Point coords;
    Weight weight = 0;
    Provenance provenance = Provenance::sample;
    std::size_t round = 0;  ///< ball-growing round that produced a center entry
};

struct SummaryStats {
    std::size_t rounds = 0;
    std::vector<double> radii;
    std::vector<std::size_t> remaining_sizes;  ///< |X_i| at the start of round i
    std::vector<std::size_t> cluster_sizes;    ///< |C_i|
    std::vector<std::size_t> sample_sizes;     ///< distinct points in S_i
    std::vector<std::vector<PointId>> sample_draws;  ///< raw draws of round i, duplicates kept
    std::size_t residual_size = 0;
    std::uint64_t distance_evals = 0;
    std::size_t kappa = 0;
    std::size_t sample_cap = 0;  ///< draws per round before capping at |X_i|
    std::size_t augment_size = 0;
    double unaugmented_loss = 0;
};

/**
 * Weighted summary of a dataset.
 *
 * `sigma[i]` is the entry representing local point `i` of the source dataset.
 * Weights are preimage counts, so they sum to the dataset size.
 */
struct Summary {
    std::size_t dim = 0;
    std::vector<SummaryEntry> entries;
    std::vector<std::size_t> sigma;
    double loss = 0;
    Objective objective = Objective::median;
    SummaryStats stats;

    std::size_t size() const { return entries.size(); }

    Weight total_weight() const {
        Weight w = 0;
        for (const auto& e : entries) {
            w += e.weight;
        }
        return w;
    }

    std::vector<PointId> entry_ids() const {
        std::vector<PointId> out;
        out.reserve(entries.size());
        for (const auto& e : entries) {
            out.push_back(e.id);
        }
        return out;
    }
};

inline std::size_t ceil_log2(std::size_t n) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

/// max{k, ceil(log2 n)}
inline std::size_t kappa_for(std::size_t n, std::size_t k) { return std::max(k, ceil_log2(n)); }

/// Number of points a ball must capture: ceil(beta * size), at least one.
inline std::size_t ball_quota(double beta, std::size_t size) {
    const auto m = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(size)));
    return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(size, 1));
}

struct RadiusSelection {
    double rho = 0;
    std::vector<std::size_t> in_ball;
};

/**
 * Smallest radius whose ball holds at least a beta fraction of the points:
 * the m-th smallest distance with m = ceil(beta * |dists|). Every index at
 * distance <= rho is in the ball, so ties can push the count above m.
 */
inline RadiusSelection select_radius(std::span<const double> dists, double beta) {
    if (dists.empty()) {
        throw std::invalid_argument("select_radius: empty distance list");
    }
    const std::size_t m = ball_quota(beta, dists.size());
    std::vector<double> scratch(dists.begin(), dists.end());
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(m - 1), scratch.end());
    RadiusSelection out;
    out.rho = scratch[m - 1];
    for (std::size_t i = 0; i < dists.size(); ++i) {
        if (dists[i] <= out.rho) {
            out.in_ball.push_back(i);
        }
    }
    return out;
}

namespace detail {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Nearest {
    std::size_t index = npos;
    double dist = std::numeric_limits<double>::infinity();
};

/// Nearest candidate (local indices into `data`); ties go to the lowest candidate position.
inline Nearest nearest_of(const Dataset& data, std::size_t x, std::span<const std::size_t> candidates) {
    Nearest best;
    const auto px = data.point(x);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double d = distance(px, data.point(candidates[c]));
        if (d < best.dist) {
            best.dist = d;
            best.index = c;
        }
    }
    return best;
}

/// Draws `count` indices with replacement from `pool`, recording ids, and
/// collapses repeats while keeping first-draw order.
inline std::vector<std::size_t> draw_with_replacement(const Dataset& data, std::span<const std::size_t> pool,
                                                      std::size_t count, Rng& rng, std::vector<PointId>* draws,
                                                      std::vector<char>& seen) {
    std::vector<std::size_t> distinct;
    for (std::size_t j = 0; j < count; ++j) {
        const auto local = pool[static_cast<std::size_t>(rng.uniform_index(pool.size()))];
        if (draws) {
            draws->push_back(data.ids[local]);
        }
        if (!seen[local]) {
            seen[local] = 1;
            distinct.push_back(local);
        }
    }
    for (auto local : distinct) {
        seen[local] = 0;
    }
    return distinct;
}

/// Removes zero-weight entries and rewrites sigma accordingly.
inline void drop_empty_entries(Summary& summary) {
    std::vector<std::size_t> remap(summary.entries.size(), npos);
    std::vector<SummaryEntry> kept;
    kept.reserve(summary.entries.size());
    for (std::size_t e = 0; e < summary.entries.size(); ++e) {
        if (summary.entries[e].weight > 0) {
            remap[e] = kept.size();
            kept.push_back(std::move(summary.entries[e]));
        }
    }
    summary.entries = std::move(kept);
    for (auto& s : summary.sigma) {
        s = remap[s];
    }
}

inline double mapping_loss(const Dataset& data, const Summary& summary) {
    const int p = objective_power(summary.objective);
    double loss = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        loss += powered_distance(data.point(i), summary.entries[summary.sigma[i]].coords, p);
    }
    return loss;
}

inline SummaryEntry make_entry(const Dataset& data, std::size_t local, Provenance provenance, std::size_t round) {
    const auto p = data.point(local);
    return SummaryEntry{data.ids[local], Point(p.begin(), p.end()), 0, provenance, round};
}

struct BallGrowRun {
    Summary summary;
    std::vector<std::size_t> residual;  // X_r, local indices
    std::vector<std::size_t> centers;   // distinct sampled points over all rounds, in sampling order
    std::vector<std::size_t> center_rounds;
};

inline BallGrowRun ball_grow(const Dataset& data, const SummaryParams& params) {
    params.validate();
    if (data.empty()) {
        throw std::invalid_argument("summary_outliers: empty dataset");
    }
    const std::size_t n = data.size();

    BallGrowRun run;
    Summary& out = run.summary;
    out.dim = data.dim;
    out.objective = params.objective;
    out.sigma.assign(n, npos);
    auto& stats = out.stats;
    stats.kappa = kappa_for(n, params.k);
    stats.sample_cap =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(params.alpha * static_cast<double>(stats.kappa))));

    Rng rng(params.seed, Stream::summary);
    std::vector<char> seen(n, 0);
    std::vector<char> in_ball_flag(n, 0);
    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) {
        remaining[i] = i;
    }
    std::vector<double> dists;
    std::vector<std::size_t> nearest;

    const std::size_t threshold = 8 * params.t;
    while (remaining.size() > threshold) {
        const std::size_t round = stats.rounds;
        const std::size_t draws_wanted = std::min(stats.sample_cap, remaining.size());
        stats.sample_draws.emplace_back();
        const auto sample = draw_with_replacement(data, remaining, draws_wanted, rng, &stats.sample_draws.back(), seen);

        dists.resize(remaining.size());
        nearest.resize(remaining.size());
        for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
            const auto best = nearest_of(data, remaining[pos], sample);
            dists[pos] = best.dist;
            nearest[pos] = best.index;
        }
        stats.distance_evals += static_cast<std::uint64_t>(sample.size()) * remaining.size();

        const auto ball = select_radius(dists, params.beta);

        const std::size_t base = out.entries.size();
        for (auto local : sample) {
            out.entries.push_back(make_entry(data, local, Provenance::center, round));
            run.centers.push_back(local);
            run.center_rounds.push_back(round);
        }
        for (auto pos : ball.in_ball) {
            const auto x = remaining[pos];
            out.sigma[x] = base + nearest[pos];
            ++out.entries[base + nearest[pos]].weight;
            in_ball_flag[x] = 1;
        }

        stats.radii.push_back(ball.rho);
        stats.remaining_sizes.push_back(remaining.size());
        stats.cluster_sizes.push_back(ball.in_ball.size());
        stats.sample_sizes.push_back(sample.size());
        ++stats.rounds;

        std::erase_if(remaining, [&](std::size_t x) { return in_ball_flag[x] != 0; });
    }

    for (auto x : remaining) {
        out.sigma[x] = out.entries.size();
        auto entry = make_entry(data, x, Provenance::outlier_candidate, stats.rounds);
        entry.weight = 1;
        out.entries.push_back(std::move(entry));
    }
    stats.residual_size = remaining.size();
    run.residual = std::move(remaining);

    drop_empty_entries(out);
    out.loss = mapping_loss(data, out);
    stats.unaugmented_loss = out.loss;
    return run;
}

inline Summary nearest_assignment_summary(const Dataset& data, std::span<const std::size_t> centers,
                                          Objective objective) {
    Summary out;
    out.dim = data.dim;
    out.objective = objective;
    out.sigma.resize(data.size());
    for (auto local : centers) {
        out.entries.push_back(make_entry(data, local, Provenance::sample, 0));
    }
    for (std::size_t x = 0; x < data.size(); ++x) {
        const auto best = nearest_of(data, x, centers);
        out.sigma[x] = best.index;
        ++out.entries[best.index].weight;
    }
    out.stats.distance_evals += static_cast<std::uint64_t>(centers.size()) * data.size();
    drop_empty_entries(out);
    out.loss = mapping_loss(data, out);
    return out;
}

inline void check_summary_size(const Dataset& data, std::size_t m, const char* who) {
    if (m < 1 || m > data.size()) {
        throw std::invalid_argument(std::string(who) + ": summary size must lie in [1, |X|]");
    }
}

}  // namespace detail

/**
 * Ball-growing summary with outliers.
 *
 * Each round samples up to alpha*kappa points with replacement from the
 * remaining set, grows balls around them until a beta fraction is covered,
 * assigns the covered points to their nearest sample and removes them. Rounds
 * continue while more than 8t points remain; the remaining points become
 * weight-one outlier candidates.
 *
 * Entries that end up with no preimage (a sampled point whose coordinates
 * coincide with an earlier sample of the same round) are dropped.
 */
inline Summary summary_outliers(const Dataset& data, const SummaryParams& params) {
    return detail::ball_grow(data, params).summary;
}

/**
 * Ball-growing summary followed by augmentation: sample |X_r| - |S| extra
 * centers from the clustered non-sample points and reassign every clustered
 * point to its nearest center among the old and new samples.
 *
 * Uses the same seed as `summary_outliers` for the first stage, so the result
 * can be compared point by point against the unaugmented mapping.
 */
inline Summary augmented_summary_outliers(const Dataset& data, const SummaryParams& params) {
    auto run = detail::ball_grow(data, params);
    const std::size_t n = data.size();
    const auto& base = run.summary;

    std::vector<char> excluded(n, 0);
    for (auto x : run.residual) {
        excluded[x] = 1;
    }
    for (auto x : run.centers) {
        excluded[x] = 1;
    }
    std::vector<std::size_t> pool;
    for (std::size_t x = 0; x < n; ++x) {
        if (!excluded[x]) {
            pool.push_back(x);
        }
    }

    std::vector<std::size_t> extra;
    const std::size_t wanted = run.residual.size() > run.centers.size() ? run.residual.size() - run.centers.size() : 0;
    if (wanted > 0 && !pool.empty()) {
        Rng rng(params.seed, Stream::augment);
        std::vector<char> seen(n, 0);
        extra = detail::draw_with_replacement(data, pool, wanted, rng, nullptr, seen);
    }

    std::vector<std::size_t> candidates = run.centers;
    candidates.insert(candidates.end(), extra.begin(), extra.end());

    Summary out;
    out.dim = data.dim;
    out.objective = params.objective;
    out.stats = base.stats;
    out.stats.augment_size = extra.size();
    out.sigma.assign(n, detail::npos);

    for (std::size_t c = 0; c < run.centers.size(); ++c) {
        out.entries.push_back(detail::make_entry(data, run.centers[c], Provenance::center, run.center_rounds[c]));
    }
    for (auto local : extra) {
        out.entries.push_back(detail::make_entry(data, local, Provenance::augment, base.stats.rounds));
    }

    std::vector<char> is_residual(n, 0);
    for (auto x : run.residual) {
        is_residual[x] = 1;
    }
    std::size_t clustered = 0;
    for (std::size_t x = 0; x < n; ++x) {
        if (is_residual[x]) {
            continue;
        }
        const auto best = detail::nearest_of(data, x, candidates);
        out.sigma[x] = best.index;
        ++out.entries[best.index].weight;
        ++clustered;
    }
    out.stats.distance_evals += static_cast<std::uint64_t>(candidates.size()) * clustered;

    for (auto x : run.residual) {
        out.sigma[x] = out.entries.size();
        auto entry = detail::make_entry(data, x, Provenance::outlier_candidate, base.stats.rounds);
        entry.weight = 1;
        out.entries.push_back(std::move(entry));
    }

    detail::drop_empty_entries(out);
    out.loss = detail::mapping_loss(data, out);
    return out;
}

/// Uniform sample of m distinct points; every point maps to its nearest sample.
inline Summary rand_summary(const Dataset& data, std::size_t m, std::uint64_t seed,
                            Objective objective = Objective::median) {
    detail::check_summary_size(data, m, "rand_summary");
    const std::size_t n = data.size();
    Rng rng(seed, Stream::baseline);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(order[i], order[j]);
    }
    order.resize(m);
    return detail::nearest_assignment_summary(data, order, objective);
}

/**
 * k-means++ style summary: the first center is uniform, each further center
 * is drawn with probability proportional to d(x, chosen)^p (p=1 median,
 * p=2 means). Stops early when every remaining point coincides with a chosen
 * center.
 */
inline Summary d2_summary(const Dataset& data, std::size_t m, std::uint64_t seed, Objective objective) {
    detail::check_summary_size(data, m, "d2_summary");
    const std::size_t n = data.size();
    const int p = objective_power(objective);
    Rng rng(seed, Stream::baseline);

    std::vector<std::size_t> chosen;
    chosen.push_back(static_cast<std::size_t>(rng.uniform_index(n)));
    std::vector<double> mass(n);
    std::uint64_t evals = 0;
    for (std::size_t x = 0; x < n; ++x) {
        mass[x] = powered_distance(data.point(x), data.point(chosen.back()), p);
    }
    evals += n;

    while (chosen.size() < m) {
        double total = 0;
        for (double v : mass) {
            total += v;
        }
        if (!(total > 0)) {
            break;
        }
        const double target = rng.uniform01() * total;
        std::size_t pick = detail::npos;
        double cumulative = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (mass[x] <= 0) {
                continue;
            }
            cumulative += mass[x];
            pick = x;
            if (cumulative > target) {
                break;
            }
        }
        chosen.push_back(pick);
        for (std::size_t x = 0; x < n; ++x) {
            if (mass[x] > 0) {
                mass[x] = std::min(mass[x], powered_distance(data.point(x), data.point(pick), p));
            }
        }
        evals += n;
    }

    auto out = detail::nearest_assignment_summary(data, chosen, objective);
    out.stats.distance_evals += evals;
    return out;
}

/// Upper bound on the number of ball-growing rounds:
/// ceil(log_{1/(1-beta)}(n / max(1, 8t))) + 1.
inline double max_rounds_bound(std::size_t n, std::size_t t, double beta) {
    if (n <= 8 * t) {
        return 0;
    }
    const double ratio = static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(1, 8 * t));
    return std::ceil(std::log(ratio) / std::log(1.0 / (1.0 - beta))) + 1.0;
}

/// r * alpha * kappa + residual_size
inline double size_bound(const SummaryStats& stats, double alpha) {
    return static_cast<double>(stats.rounds) * alpha * static_cast<double>(stats.kappa) +
           static_cast<double>(stats.residual_size);
}

/// alpha * kappa * n / beta
inline double work_bound(std::size_t n, const SummaryStats& stats, double alpha, double beta) {
    return alpha * static_cast<double>(stats.kappa) * static_cast<double>(n) / beta;
}

}  // namespace ballgrow

#endif  // BALLGROW_SUMMARY_HPP
