#ifndef BALLGROW_EXPERIMENT_HPP
#define BALLGROW_EXPERIMENT_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "distributed.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "serialize.hpp"

namespace ballgrow {

/// Where the experiment's points come from: a generator or a file.
struct DatasetSource {
    std::optional<GaussParams> gauss;
    std::string path;
    std::string truth_path;
    LoadOptions load;
    bool normalize = false;

    bool operator==(const DatasetSource& other) const {
        const bool same_gauss =
            gauss.has_value() == other.gauss.has_value() &&
            (!gauss || (gauss->num_centers == other.gauss->num_centers &&
                        gauss->pts_per_center == other.gauss->pts_per_center && gauss->dim == other.gauss->dim &&
                        gauss->sigma == other.gauss->sigma && gauss->num_outliers == other.gauss->num_outliers &&
                        gauss->shift_halfwidth == other.gauss->shift_halfwidth && gauss->seed == other.gauss->seed));
        return same_gauss && path == other.path && truth_path == other.truth_path && normalize == other.normalize &&
               load.label_column == other.load.label_column && load.has_header == other.load.has_header;
    }
};

struct ExperimentSpec {
    DatasetSource data;
    SummaryAlgorithm algorithm = SummaryAlgorithm::ball_grow;
    std::size_t k = 1;
    std::size_t t = 0;
    std::size_t s = 1;
    /// "random", "outliers_to_one_site" or "contiguous_blocks".
    std::string partition = "random";
    std::size_t repeats = 1;
    std::uint64_t base_seed = 0;
    double alpha = 2.0;
    double beta = 0.45;
    bool augmented = true;
    Objective objective = Objective::means;
    std::size_t baseline_size = 0;
    std::size_t max_iters = 100;
    double rel_tol = 1e-4;
    std::size_t restarts = 10;

    void validate() const {
        if (repeats < 1) {
            throw std::invalid_argument("experiment: repeats must be at least 1");
        }
        if (s < 1) {
            throw std::invalid_argument("experiment: site count must be at least 1");
        }
        if (partition != "random" && partition != "outliers_to_one_site" && partition != "contiguous_blocks") {
            throw std::invalid_argument("experiment: unknown partition '" + partition + "'");
        }
        if (!data.gauss && data.path.empty()) {
            throw std::invalid_argument("experiment: no dataset source given");
        }
        SummaryParams{k, t, alpha, beta, 0, objective}.validate();
        SolverConfig{k, t, objective, max_iters, rel_tol, 0, restarts}.validate();
    }
};

inline Dataset load_dataset(const DatasetSource& source) {
    Dataset data;
    if (source.gauss) {
        data = gen_gauss(*source.gauss);
    } else {
        data = load_delimited(source.path, source.load);
        if (!source.truth_path.empty()) {
            data.truth_outliers = read_truth(source.truth_path, data.size());
        }
    }
    if (source.normalize) {
        data = normalize(data);
    }
    data.validate();
    return data;
}

inline SitePartition make_partition(const Dataset& data, const ExperimentSpec& spec, std::uint64_t seed) {
    if (spec.partition == "random") {
        return partition_random(data, spec.s, seed);
    }
    const auto mode = spec.partition == "outliers_to_one_site" ? AdversarialMode::outliers_to_one_site
                                                                : AdversarialMode::contiguous_blocks;
    return partition_adversarial(data, spec.s, mode);
}

inline DistributedConfig distributed_config(const ExperimentSpec& spec, std::uint64_t seed) {
    DistributedConfig cfg;
    cfg.k = spec.k;
    cfg.t = spec.t;
    cfg.params.alpha = spec.alpha;
    cfg.params.beta = spec.beta;
    cfg.params.objective = spec.objective;
    cfg.augmented = spec.augmented;
    cfg.algorithm = spec.algorithm;
    cfg.baseline_size = spec.baseline_size;
    cfg.solver.objective = spec.objective;
    cfg.solver.max_iters = spec.max_iters;
    cfg.solver.rel_tol = spec.rel_tol;
    cfg.solver.restarts = spec.restarts;
    cfg.seed = seed;
    return cfg;
}

/// Metrics of one distributed run against the full dataset.
inline EvalReport evaluate(const Dataset& data, const DistributedResult& result, const std::string& algo,
                           std::uint64_t seed) {
    EvalReport r;
    r.algo = algo;
    r.seed = seed;
    r.l1_loss = objective_loss(data, result.clustering.centers, result.outlier_ids, 1);
    r.l2_loss = objective_loss(data, result.clustering.centers, result.outlier_ids, 2);
    const auto scores = outlier_metrics(result.summary_ids(), result.outlier_ids, data.truth_ids());
    r.pre_rec = scores.pre_rec;
    r.prec = scores.prec;
    r.recall = scores.recall;
    r.summary_size = result.merged.size();
    r.comm_points = result.comm.total_points;
    return r;
}

struct RunOutcome {
    EvalReport report;
    DistributedResult result;
};

/// One repeat: partition, per-site summaries, merge, k-means--, metrics.
inline RunOutcome run_once(const Dataset& data, const ExperimentSpec& spec, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto partition = make_partition(data, spec, seed);
    const auto t1 = clock::now();
    auto result = run_distributed(partition, distributed_config(spec, seed));
    const auto t2 = clock::now();
    auto report = evaluate(data, result, to_string(spec.algorithm), seed);
    const auto t3 = clock::now();
    auto seconds = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };
    report.wall_times = {{"partition", seconds(t0, t1)}, {"distributed", seconds(t1, t2)}, {"metrics", seconds(t2, t3)}};
    return {std::move(report), std::move(result)};
}

/// Seeds base_seed .. base_seed + repeats - 1, in repeat order.
inline std::vector<EvalReport> run_experiment(const ExperimentSpec& spec, const Dataset& data) {
    spec.validate();
    std::vector<EvalReport> rows;
    rows.reserve(spec.repeats);
    for (std::size_t r = 0; r < spec.repeats; ++r) {
        rows.push_back(run_once(data, spec, spec.base_seed + r).report);
    }
    return rows;
}

inline std::string experiment_csv(std::span<const EvalReport> rows) {
    std::ostringstream out;
    out << eval_csv_header() << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << eval_csv_row(std::to_string(r), rows[r]) << '\n';
    }
    out << aggregate_csv_row(rows) << '\n';
    return out.str();
}

inline std::string experiment_json(const ExperimentSpec& spec, std::span<const EvalReport> rows);

struct CompareRow {
    std::string algo;
    std::vector<MeanStd> stats;
};

/// Runs every spec on one shared dataset; specs must agree on data and (k, t, s).
inline std::vector<CompareRow> compare_experiments(const std::vector<ExperimentSpec>& specs, const Dataset& data) {
    if (specs.size() < 2) {
        throw std::invalid_argument("compare: at least two specs are required");
    }
    for (const auto& spec : specs) {
        if (!(spec.data == specs.front().data) || spec.k != specs.front().k || spec.t != specs.front().t ||
            spec.s != specs.front().s) {
            throw std::invalid_argument("compare: specs must share the dataset and (k, t, s)");
        }
    }
    std::vector<CompareRow> out;
    for (const auto& spec : specs) {
        const auto rows = run_experiment(spec, data);
        out.push_back({to_string(spec.algorithm), aggregate(rows)});
    }
    return out;
}

/// algo followed by the mean of each metric column.
inline std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "algo";
    for (const auto& c : eval_columns()) {
        out << ',' << c;
    }
    out << '\n';
    for (const auto& row : rows) {
        out << row.algo;
        for (const auto& m : row.stats) {
            out << ',' << format_optional(m.mean);
        }
        out << '\n';
    }
    return out.str();
}

// ---- JSON form of a spec (used by `compare` and `run --spec`) ----

inline json to_json(const ExperimentSpec& spec) {
    json data = json::object();
    if (spec.data.gauss) {
        const auto& g = *spec.data.gauss;
        data["gauss"] = json{{"centers", g.num_centers}, {"per_center", g.pts_per_center}, {"dim", g.dim},
                             {"sigma", g.sigma},         {"outliers", g.num_outliers},    {"shift", g.shift_halfwidth},
                             {"seed", g.seed}};
    } else {
        data["path"] = spec.data.path;
        data["truth"] = spec.data.truth_path;
        data["header"] = spec.data.load.has_header;
        data["label_column"] = spec.data.load.label_column ? json(*spec.data.load.label_column) : json(nullptr);
    }
    data["normalize"] = spec.data.normalize;
    return json{{"data", data},
                {"algorithm", to_string(spec.algorithm)},
                {"k", spec.k},
                {"t", spec.t},
                {"s", spec.s},
                {"partition", spec.partition},
                {"repeats", spec.repeats},
                {"seed", spec.base_seed},
                {"alpha", spec.alpha},
                {"beta", spec.beta},
                {"augmented", spec.augmented},
                {"objective", to_string(spec.objective)},
                {"summary_size", spec.baseline_size},
                {"max_iters", spec.max_iters},
                {"rel_tol", spec.rel_tol},
                {"restarts", spec.restarts}};
}

/// Missing keys keep their defaults, except "seed", which is required.
inline ExperimentSpec spec_from_json(const json& j) {
    ExperimentSpec spec;
    const auto& data = j.at("data");
    if (data.contains("gauss")) {
        const auto& g = data.at("gauss");
        GaussParams p;
        p.num_centers = g.value("centers", p.num_centers);
        p.pts_per_center = g.value("per_center", p.pts_per_center);
        p.dim = g.value("dim", p.dim);
        p.sigma = g.value("sigma", p.sigma);
        p.num_outliers = g.value("outliers", p.num_outliers);
        p.shift_halfwidth = g.value("shift", p.shift_halfwidth);
        p.seed = g.at("seed").get<std::uint64_t>();
        spec.data.gauss = p;
    } else {
        spec.data.path = data.at("path").get<std::string>();
        spec.data.truth_path = data.value("truth", std::string{});
        spec.data.load.has_header = data.value("header", false);
        if (data.contains("label_column") && !data.at("label_column").is_null()) {
            spec.data.load.label_column = data.at("label_column").get<std::string>();
        }
    }
    spec.data.normalize = data.value("normalize", false);
    spec.algorithm = parse_algorithm(j.value("algorithm", std::string("ball_grow")));
    spec.k = j.value("k", spec.k);
    spec.t = j.value("t", spec.t);
    spec.s = j.value("s", spec.s);
    spec.partition = j.value("partition", spec.partition);
    spec.repeats = j.value("repeats", spec.repeats);
    spec.base_seed = j.at("seed").get<std::uint64_t>();
    spec.alpha = j.value("alpha", spec.alpha);
    spec.beta = j.value("beta", spec.beta);
    spec.augmented = j.value("augmented", spec.augmented);
    spec.objective = parse_objective(j.value("objective", std::string("means")));
    spec.baseline_size = j.value("summary_size", spec.baseline_size);
    spec.max_iters = j.value("max_iters", spec.max_iters);
    spec.rel_tol = j.value("rel_tol", spec.rel_tol);
    spec.restarts = j.value("restarts", spec.restarts);
    spec.validate();
    return spec;
}

inline std::string experiment_json(const ExperimentSpec& spec, std::span<const EvalReport> rows) {
    json runs = json::array();
    for (const auto& r : rows) {
        runs.push_back(to_json(r));
    }
    return json{{"spec", to_json(spec)}, {"runs", runs}, {"aggregate", aggregate_json(rows)}}.dump(2) + "\n";
}

}  // namespace ballgrow

#endif  // BALLGROW_EXPERIMENT_HPP
