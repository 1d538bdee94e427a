#ifndef BALLGROW_METRICS_HPP
#define BALLGROW_METRICS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "format.hpp"
#include "geometry.hpp"
#include "summary.hpp"

namespace ballgrow {

namespace detail {

inline std::vector<PointId> sorted_unique(std::span<const PointId> ids) {
    std::vector<PointId> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::size_t intersection_size(const std::vector<PointId>& a, const std::vector<PointId>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace detail

/**
 * Sum over points whose id is not in `outliers` of d(p, C)^power.
 * Accumulated in point order.
 */
inline double objective_loss(const Dataset& data, const std::vector<Point>& centers, std::span<const PointId> outliers,
                             int power) {
    const auto dropped = detail::sorted_unique(outliers);
    double loss = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (std::binary_search(dropped.begin(), dropped.end(), data.ids[i])) {
            continue;
        }
        if (centers.empty()) {
            throw std::invalid_argument("objective_loss: no centers but non-outlier points remain");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : centers) {
            best = std::min(best, distance(data.point(i), c));
        }
        loss += apply_power(best, power);
    }
    return loss;
}

struct OutlierScores {
    std::optional<double> pre_rec;
    std::optional<double> prec;
    std::optional<double> recall;
};

/**
 * pre_rec = |S ∩ O*| / |O*|, recall = |O ∩ O*| / |O*|, prec = |O ∩ O*| / |O|.
 * A ratio with an empty denominator is absent.
 */
inline OutlierScores outlier_metrics(std::span<const PointId> summary_ids, std::span<const PointId> reported,
                                     std::span<const PointId> truth) {
    const auto s = detail::sorted_unique(summary_ids);
    const auto o = detail::sorted_unique(reported);
    const auto star = detail::sorted_unique(truth);
    OutlierScores out;
    const auto hits = detail::intersection_size(o, star);
    if (!star.empty()) {
        out.pre_rec = static_cast<double>(detail::intersection_size(s, star)) / static_cast<double>(star.size());
        out.recall = static_cast<double>(hits) / static_cast<double>(star.size());
    }
    if (!o.empty()) {
        out.prec = static_cast<double>(hits) / static_cast<double>(o.size());
    }
    return out;
}

/// Information loss of the mapping point -> summary entry: sum of d(x, sigma(x))^power.
inline double info_loss(const Dataset& data, const Summary& summary, int power) {
    if (summary.sigma.size() != data.size()) {
        throw std::invalid_argument("info_loss: mapping does not cover the dataset");
    }
    double loss = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        loss += powered_distance(data.point(i), summary.entries[summary.sigma[i]].coords, power);
    }
    return loss;
}

struct EvalReport {
    std::string algo;
    std::uint64_t seed = 0;
    double l1_loss = 0;
    double l2_loss = 0;
    std::optional<double> pre_rec;
    std::optional<double> prec;
    std::optional<double> recall;
    std::size_t summary_size = 0;
    std::size_t comm_points = 0;
    std::map<std::string, double> wall_times;  ///< stage -> seconds; never serialized
};

/// Metric columns in table order.
inline const std::vector<std::string>& eval_columns() {
    static const std::vector<std::string> columns = {"summarySize", "l1_loss", "l2_loss", "preRec",
                                                     "prec",        "recall",  "comm_points"};
    return columns;
}

inline std::vector<std::optional<double>> eval_values(const EvalReport& r) {
    return {static_cast<double>(r.summary_size), r.l1_loss, r.l2_loss, r.pre_rec, r.prec, r.recall,
            static_cast<double>(r.comm_points)};
}

inline std::string eval_csv_header() {
    std::string out = "run,seed,algo";
    for (const auto& c : eval_columns()) {
        out += ',';
        out += c;
    }
    return out;
}

inline std::string eval_csv_row(const std::string& run, const EvalReport& r) {
    std::string out = run + ',' + std::to_string(r.seed) + ',' + r.algo;
    for (const auto& v : eval_values(r)) {
        out += ',';
        out += format_optional(v);
    }
    return out;
}

struct MeanStd {
    std::optional<double> mean;
    std::optional<double> stddev;
};

/// Per-column mean and population standard deviation over the rows where the value is present.
inline std::vector<MeanStd> aggregate(std::span<const EvalReport> rows) {
    const auto width = eval_columns().size();
    std::vector<MeanStd> out(width);
    for (std::size_t c = 0; c < width; ++c) {
        double sum = 0;
        std::size_t count = 0;
        for (const auto& r : rows) {
            if (auto v = eval_values(r)[c]) {
                sum += *v;
                ++count;
            }
        }
        if (count == 0) {
            continue;
        }
        const double mean = sum / static_cast<double>(count);
        double ss = 0;
        for (const auto& r : rows) {
            if (auto v = eval_values(r)[c]) {
                ss += (*v - mean) * (*v - mean);
            }
        }
        out[c].mean = mean;
        out[c].stddev = std::sqrt(ss / static_cast<double>(count));
    }
    return out;
}

/// Aggregate row: each cell is "mean±stddev".
inline std::string aggregate_csv_row(std::span<const EvalReport> rows) {
    std::string out = "aggregate,,";
    out += rows.empty() ? std::string{} : rows.front().algo;
    for (const auto& m : aggregate(rows)) {
        out += ',';
        if (m.mean) {
            out += format_number(*m.mean) + "±" + format_number(*m.stddev);
        }
    }
    return out;
}

}  // namespace ballgrow

#endif  // BALLGROW_METRICS_HPP
