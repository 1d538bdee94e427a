#ifndef BALLGROW_DATASET_HPP
#define BALLGROW_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "random.hpp"

namespace ballgrow {

/**
 * A set of points in R^d stored row-major, with a stable global id per point
 * and optional ground-truth outlier labels (local indices, sorted, distinct).
 */
struct Dataset {
    std::size_t dim = 0;
    std::vector<double> coords;
    std::vector<PointId> ids;
    std::optional<std::vector<std::size_t>> truth_outliers;

    std::size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }

    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
    std::span<double> point(std::size_t i) { return {coords.data() + i * dim, dim}; }

    void push_back(std::span<const double> p, PointId id) {
        coords.insert(coords.end(), p.begin(), p.end());
        ids.push_back(id);
    }

    /// Global ids of the truth outliers, or empty when unlabeled.
    std::vector<PointId> truth_ids() const {
        std::vector<PointId> out;
        if (truth_outliers) {
            out.reserve(truth_outliers->size());
            for (auto i : *truth_outliers) {
                out.push_back(ids[i]);
            }
            std::sort(out.begin(), out.end());
        }
        return out;
    }

    /// Throws when the structural invariants do not hold.
    void validate() const {
        if (dim == 0) {
            throw std::invalid_argument("dataset dimension must be at least 1");
        }
        if (coords.size() != ids.size() * dim) {
            throw std::invalid_argument("dataset coordinate count does not match point count");
        }
        for (double c : coords) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("dataset contains a non-finite coordinate");
            }
        }
        if (truth_outliers) {
            for (std::size_t j = 0; j < truth_outliers->size(); ++j) {
                const auto idx = (*truth_outliers)[j];
                if (idx >= size()) {
                    throw std::invalid_argument("truth outlier index out of range");
                }
                if (j > 0 && (*truth_outliers)[j - 1] >= idx) {
                    throw std::invalid_argument("truth outlier indices must be sorted and distinct");
                }
            }
        }
    }

    /// Builds a dataset from rows; ids are 0..n-1.
    static Dataset from_rows(const std::vector<Point>& rows) {
        Dataset out;
        out.dim = rows.empty() ? 0 : rows.front().size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != out.dim) {
                throw std::invalid_argument("rows have inconsistent dimensions");
            }
            out.push_back(rows[i], i);
        }
        return out;
    }
};

enum class PartitionKind { random, adversarial };

inline const char* to_string(PartitionKind kind) { return kind == PartitionKind::random ? "random" : "adversarial"; }

enum class AdversarialMode { outliers_to_one_site, contiguous_blocks };

/// Per-site shards. Each site keeps the global ids of its points.
struct SitePartition {
    std::vector<Dataset> sites;
    PartitionKind kind = PartitionKind::random;

    std::size_t total_size() const {
        std::size_t n = 0;
        for (const auto& site : sites) {
            n += site.size();
        }
        return n;
    }
};

/**
 * Zero mean and unit population standard deviation per feature.
 * A constant feature maps to 0 in every row.
 */
inline Dataset normalize(const Dataset& input) {
    Dataset out = input;
    const std::size_t n = input.size();
    if (n == 0) {
        return out;
    }
    for (std::size_t j = 0; j < input.dim; ++j) {
        double lo = input.point(0)[j];
        double hi = lo;
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = input.point(i)[j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        if (lo == hi) {
            for (std::size_t i = 0; i < n; ++i) {
                out.point(i)[j] = 0;
            }
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = input.point(i)[j] - mean;
            ss += delta * delta;
        }
        const double stddev = std::sqrt(ss / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            out.point(i)[j] = (input.point(i)[j] - mean) / stddev;
        }
    }
    return out;
}

struct GaussParams {
    std::size_t num_centers = 100;
    std::size_t pts_per_center = 10000;
    std::size_t dim = 5;
    double sigma = 0.1;
    std::size_t num_outliers = 5000;
    double shift_halfwidth = 2.0;
    std::uint64_t seed = 0;
};

/**
 * Gaussian blobs around centers drawn uniformly from [0,1]^d, followed by
 * shifting `num_outliers` distinct points by a uniform vector in
 * [-shift_halfwidth, shift_halfwidth]^d. The shifted points are the truth
 * outliers. Draw order: centers, noise (point-major), outlier selection,
 * shifts.
 */
inline Dataset gen_gauss(const GaussParams& params) {
    if (params.dim == 0) {
        throw std::invalid_argument("gen_gauss: dimension must be at least 1");
    }
    const std::size_t n = params.num_centers * params.pts_per_center;
    if (params.num_outliers > n) {
        throw std::invalid_argument("gen_gauss: more outliers requested than points generated");
    }

    Rng rng(params.seed, Stream::generate);
    std::vector<double> centers(params.num_centers * params.dim);
    for (auto& c : centers) {
        c = rng.uniform01();
    }

    Dataset out;
    out.dim = params.dim;
    out.coords.resize(n * params.dim);
    out.ids.resize(n);
    std::iota(out.ids.begin(), out.ids.end(), PointId{0});
    for (std::size_t c = 0; c < params.num_centers; ++c) {
        for (std::size_t p = 0; p < params.pts_per_center; ++p) {
            auto row = out.point(c * params.pts_per_center + p);
            for (std::size_t j = 0; j < params.dim; ++j) {
                row[j] = centers[c * params.dim + j] + rng.normal(0.0, params.sigma);
            }
        }
    }

    // Partial Fisher-Yates over the index range picks distinct points.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < params.num_outliers; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(order[i], order[j]);
    }

    std::vector<std::size_t> shifted;
    shifted.reserve(params.num_outliers);
    for (std::size_t i = 0; i < params.num_outliers; ++i) {
        auto row = out.point(order[i]);
        for (std::size_t j = 0; j < params.dim; ++j) {
            row[j] += rng.uniform(-params.shift_halfwidth, params.shift_halfwidth);
        }
        shifted.push_back(order[i]);
    }
    std::sort(shifted.begin(), shifted.end());
    out.truth_outliers = std::move(shifted);
    return out;
}

namespace detail {

inline SitePartition split_by_site(const Dataset& input, const std::vector<std::size_t>& site_of, std::size_t s,
                                   PartitionKind kind) {
    SitePartition out;
    out.kind = kind;
    out.sites.resize(s);
    std::vector<char> is_truth;
    if (input.truth_outliers) {
        is_truth.assign(input.size(), 0);
        for (auto i : *input.truth_outliers) {
            is_truth[i] = 1;
        }
    }
    for (auto& site : out.sites) {
        site.dim = input.dim;
        if (input.truth_outliers) {
            site.truth_outliers.emplace();
        }
    }
    for (std::size_t i = 0; i < input.size(); ++i) {
        auto& site = out.sites[site_of[i]];
        if (!is_truth.empty() && is_truth[i]) {
            site.truth_outliers->push_back(site.size());
        }
        site.push_back(input.point(i), input.ids[i]);
    }
    return out;
}

}  // namespace detail

/// Every point goes to a uniformly random site, independently.
inline SitePartition partition_random(const Dataset& input, std::size_t s, std::uint64_t seed) {
    if (s == 0) {
        throw std::invalid_argument("partition_random: site count must be at least 1");
    }
    Rng rng(seed, Stream::partition);
    std::vector<std::size_t> site_of(input.size());
    for (auto& site : site_of) {
        site = static_cast<std::size_t>(rng.uniform_index(s));
    }
    return detail::split_by_site(input, site_of, s, PartitionKind::random);
}

/**
 * Worst-case style shards for stress tests.
 * - outliers_to_one_site: every truth outlier on site 0, the rest round-robin.
 * - contiguous_blocks: index ranges whose sizes differ by at most one.
 */
inline SitePartition partition_adversarial(const Dataset& input, std::size_t s, AdversarialMode mode) {
    if (s == 0) {
        throw std::invalid_argument("partition_adversarial: site count must be at least 1");
    }
    const std::size_t n = input.size();
    std::vector<std::size_t> site_of(n);
    if (mode == AdversarialMode::outliers_to_one_site) {
        if (!input.truth_outliers) {
            throw std::invalid_argument("partition_adversarial: outliers_to_one_site requires truth labels");
        }
        std::vector<char> is_truth(n, 0);
        for (auto i : *input.truth_outliers) {
            is_truth[i] = 1;
        }
        std::size_t next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_truth[i]) {
                site_of[i] = 0;
            } else {
                site_of[i] = next;
                next = (next + 1) % s;
            }
        }
    } else {
        const std::size_t base = n / s;
        const std::size_t extra = n % s;
        std::size_t i = 0;
        for (std::size_t site = 0; site < s; ++site) {
            const std::size_t len = base + (site < extra ? 1 : 0);
            for (std::size_t j = 0; j < len; ++j) {
                site_of[i++] = site;
            }
        }
    }
    return detail::split_by_site(input, site_of, s, PartitionKind::adversarial);
}

}  // namespace ballgrow

#endif  // BALLGROW_DATASET_HPP
