#ifndef BALLGROW_SERIALIZE_HPP
#define BALLGROW_SERIALIZE_HPP

#include <span>
#include <vector>

#include <json.hpp>

#include "distributed.hpp"
#include "metrics.hpp"
#include "solver.hpp"
#include "summary.hpp"

// JSON views of the result types. Wall-clock timings are left out so that
// identical seeds give byte-identical files.

namespace ballgrow {

using json = nlohmann::ordered_json;

inline json to_json(const SummaryStats& s) {
    return json{{"rounds", s.rounds},
                {"radii", s.radii},
                {"remaining_sizes", s.remaining_sizes},
                {"cluster_sizes", s.cluster_sizes},
                {"sample_sizes", s.sample_sizes},
                {"residual_size", s.residual_size},
                {"distance_evals", s.distance_evals},
                {"kappa", s.kappa},
                {"sample_cap", s.sample_cap},
                {"augment_size", s.augment_size},
                {"unaugmented_loss", s.unaugmented_loss}};
}

inline json summary_sidecar(const Summary& summary) {
    return json{{"size", summary.size()},
                {"total_weight", summary.total_weight()},
                {"objective", to_string(summary.objective)},
                {"loss", summary.loss},
                {"stats", to_json(summary.stats)}};
}

/// `ids` maps entry index to global id; outlier ids are listed through it.
inline json to_json(const ClusteringResult& r, std::span<const PointId> ids) {
    std::vector<PointId> outlier_ids;
    for (auto e : r.outliers) {
        outlier_ids.push_back(ids[e]);
    }
    return json{{"objective", to_string(r.objective)},
                {"centers", r.centers},
                {"outlier_entries", r.outliers},
                {"outlier_ids", outlier_ids},
                {"outlier_weight", r.outlier_weight},
                {"cost", r.cost},
                {"iterations", r.iterations},
                {"cost_history", r.cost_history}};
}

inline json to_json(const CommLog& log) {
    json messages = json::array();
    for (const auto& m : log.messages) {
        messages.push_back(json{{"direction", m.direction == Direction::site_to_coordinator ? "site_to_coordinator"
                                                                                           : "coordinator_to_site"},
                                {"site", m.site},
                                {"points", m.points}});
    }
    return json{{"messages", messages}, {"total_points", log.total_points}};
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const EvalReport& r) {
    return json{{"algo", r.algo},
                {"seed", r.seed},
                {"summarySize", r.summary_size},
                {"l1_loss", r.l1_loss},
                {"l2_loss", r.l2_loss},
                {"preRec", optional_json(r.pre_rec)},
                {"prec", optional_json(r.prec)},
                {"recall", optional_json(r.recall)},
                {"comm_points", r.comm_points}};
}

inline json aggregate_json(std::span<const EvalReport> rows) {
    json out = json::object();
    const auto stats = aggregate(rows);
    for (std::size_t c = 0; c < stats.size(); ++c) {
        out[eval_columns()[c]] = json{{"mean", optional_json(stats[c].mean)}, {"stddev", optional_json(stats[c].stddev)}};
    }
    return out;
}

}  // namespace ballgrow

#endif  // BALLGROW_SERIALIZE_HPP
