// Command-line harness: generate data, build summaries, cluster them, and run
// distributed experiments with CSV/JSON output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ballgrow/ballgrow.hpp>
#include <ballgrow/experiment.hpp>
#include <ballgrow/serialize.hpp>

namespace {

using namespace ballgrow;

std::string output_dir() {
    const char* dir = std::getenv("BALLGROW_OUT_DIR");
    return dir && *dir ? std::string(dir) : std::string(".");
}

std::string in_output_dir(const std::string& path, const std::string& fallback) {
    if (!path.empty()) {
        return path;
    }
    return output_dir() + "/" + fallback;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return json::parse(in);
}

// Dataset flags shared by summarize and run.
struct DataFlags {
    std::string input;
    std::string truth;
    bool header = false;
    std::string label_column;
    std::vector<std::string> outlier_labels;
    bool normalize = false;

    GaussParams gauss;
    bool use_gauss = false;

    void add(CLI::App* cmd, bool allow_generator) {
        cmd->add_option("--input", input, "Delimited data file, one point per row");
        cmd->add_option("--truth", truth, "Truth sidecar: one outlier index per line");
        cmd->add_flag("--header", header, "First row is a header");
        cmd->add_option("--label-column", label_column, "Label column by header name or zero-based index");
        cmd->add_option("--outlier-label", outlier_labels, "Label value marking an outlier (repeatable; default o)");
        cmd->add_flag("--normalize", normalize, "Zero mean, unit standard deviation per feature");
        if (allow_generator) {
            cmd->add_flag("--gauss", use_gauss, "Generate a gauss dataset instead of reading --input");
            cmd->add_option("--centers", gauss.num_centers, "Generator: number of centers");
            cmd->add_option("--per-center", gauss.pts_per_center, "Generator: points per center");
            cmd->add_option("--dim", gauss.dim, "Generator: dimension");
            cmd->add_option("--sigma", gauss.sigma, "Generator: noise standard deviation");
            cmd->add_option("--outliers", gauss.num_outliers, "Generator: number of shifted points");
            cmd->add_option("--shift", gauss.shift_halfwidth, "Generator: shift half-width");
            cmd->add_option("--data-seed", gauss.seed, "Generator: seed");
        }
    }

    DatasetSource source() const {
        DatasetSource src;
        if (use_gauss) {
            src.gauss = gauss;
        } else {
            if (input.empty()) {
                throw std::invalid_argument("either --input or --gauss is required");
            }
            src.path = input;
            src.truth_path = truth;
            src.load.has_header = header;
            if (!label_column.empty()) {
                src.load.label_column = label_column;
            }
            if (!outlier_labels.empty()) {
                src.load.outlier_labels = {outlier_labels.begin(), outlier_labels.end()};
            }
        }
        src.normalize = normalize;
        return src;
    }
};

void print_site_table(std::ostream& out, const SitePartition& partition, const DistributedResult& result) {
    out << "site,points,summary,rounds,residual\n";
    for (std::size_t i = 0; i < result.summaries.size(); ++i) {
        const auto& s = result.summaries[i];
        out << i << ',' << partition.sites[i].size() << ',' << s.size() << ',' << s.stats.rounds << ','
            << s.stats.residual_size << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed (k,t)-median/means clustering with outliers"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a gauss dataset with shifted outliers");
    GaussParams gauss;
    std::string gen_out;
    gen->add_option("--centers", gauss.num_centers, "Number of centers")->capture_default_str();
    gen->add_option("--per-center", gauss.pts_per_center, "Points per center")->capture_default_str();
    gen->add_option("--dim", gauss.dim, "Dimension")->capture_default_str();
    gen->add_option("--sigma", gauss.sigma, "Noise standard deviation")->capture_default_str();
    gen->add_option("--outliers", gauss.num_outliers, "Number of shifted points")->capture_default_str();
    gen->add_option("--shift", gauss.shift_halfwidth, "Shift half-width")->capture_default_str();
    gen->add_option("--seed", gauss.seed, "Seed")->required();
    gen->add_option("--out", gen_out, "Data file (truth goes to <out>.truth)");

    // summarize
    auto* summarize = app.add_subcommand("summarize", "Build a summary of one dataset");
    DataFlags sum_data;
    sum_data.add(summarize, false);
    std::string sum_algo = "ball_grow";
    SummaryParams sum_params;
    std::string sum_objective = "median";
    bool sum_plain = false;
    std::size_t sum_size = 0;
    std::string sum_out;
    summarize->add_option("--algorithm", sum_algo, "ball_grow, rand or d2pp")->capture_default_str();
    summarize->add_option("--k", sum_params.k, "Number of centers")->required();
    summarize->add_option("--t", sum_params.t, "Outlier budget")->required();
    summarize->add_option("--alpha", sum_params.alpha, "Sampling multiplier")->capture_default_str();
    summarize->add_option("--beta", sum_params.beta, "Ball mass fraction in (0,1)")->capture_default_str();
    summarize->add_option("--objective", sum_objective, "median or means (loss reporting)")->capture_default_str();
    summarize->add_flag("--plain", sum_plain, "Skip the augmentation step");
    summarize->add_option("--size", sum_size, "Summary size for rand/d2pp");
    summarize->add_option("--seed", sum_params.seed, "Seed")->required();
    summarize->add_option("--out", sum_out, "Summary file (statistics go to <out>.stats.json)");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Run k-means-- on a summary file");
    std::string cl_summary;
    SolverConfig cl_cfg;
    std::string cl_objective = "means";
    std::string cl_out;
    cluster->add_option("--summary", cl_summary, "Summary file written by summarize")->required();
    cluster->add_option("--k", cl_cfg.k, "Number of centers")->required();
    cluster->add_option("--t", cl_cfg.t, "Outlier budget (in represented points)")->required();
    cluster->add_option("--objective", cl_objective, "median or means")->capture_default_str();
    cluster->add_option("--max-iters", cl_cfg.max_iters, "Iteration cap")->capture_default_str();
    cluster->add_option("--rel-tol", cl_cfg.rel_tol, "Relative cost decrease to stop at")->capture_default_str();
    cluster->add_option("--restarts", cl_cfg.restarts, "Independent seedings, best kept")->capture_default_str();
    cluster->add_option("--seed", cl_cfg.seed, "Seed")->required();
    cluster->add_option("--out", cl_out, "Result JSON");

    // run
    auto* run = app.add_subcommand("run", "Partition, summarize per site, merge, cluster, evaluate");
    DataFlags run_data;
    run_data.add(run, true);
    ExperimentSpec run_spec;
    std::string run_spec_file;
    std::string run_algo = "ball_grow";
    std::string run_objective = "means";
    bool run_plain = false;
    bool run_timings = false;
    std::string run_csv;
    std::string run_json;
    std::uint64_t run_seed = 0;
    run->add_option("--spec", run_spec_file, "Experiment spec JSON (other flags ignored)");
    run->add_option("--algorithm", run_algo, "ball_grow, rand or d2pp")->capture_default_str();
    run->add_option("--k", run_spec.k, "Number of centers");
    run->add_option("--t", run_spec.t, "Outlier budget");
    run->add_option("--s", run_spec.s, "Number of sites")->capture_default_str();
    run->add_option("--partition", run_spec.partition, "random, outliers_to_one_site or contiguous_blocks")
        ->capture_default_str();
    run->add_option("--repeats", run_spec.repeats, "Number of repeats")->capture_default_str();
    auto* run_seed_opt = run->add_option("--seed", run_seed, "Base seed; repeat r uses seed + r");
    run->add_option("--alpha", run_spec.alpha, "Sampling multiplier")->capture_default_str();
    run->add_option("--beta", run_spec.beta, "Ball mass fraction in (0,1)")->capture_default_str();
    run->add_flag("--plain", run_plain, "Skip the augmentation step");
    run->add_option("--objective", run_objective, "median or means")->capture_default_str();
    run->add_option("--summary-size", run_spec.baseline_size, "Per-site size for rand/d2pp (0 = match ball_grow)");
    run->add_option("--max-iters", run_spec.max_iters, "k-means-- iteration cap")->capture_default_str();
    run->add_option("--rel-tol", run_spec.rel_tol, "k-means-- stopping tolerance")->capture_default_str();
    run->add_option("--restarts", run_spec.restarts, "k-means-- seedings, best kept")->capture_default_str();
    run->add_option("--csv", run_csv, "CSV output (default $BALLGROW_OUT_DIR/run.csv)");
    run->add_option("--json", run_json, "JSON output (default $BALLGROW_OUT_DIR/run.json)");
    run->add_flag("--timings", run_timings, "Print per-stage wall times to stderr");

    // compare
    auto* compare = app.add_subcommand("compare", "Side-by-side table for several experiment specs");
    std::vector<std::string> cmp_specs;
    std::string cmp_out;
    compare->add_option("specs", cmp_specs, "Experiment spec JSON files")->required();
    compare->add_option("--out", cmp_out, "CSV output (default $BALLGROW_OUT_DIR/compare.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto data = gen_gauss(gauss);
            const auto path = in_output_dir(gen_out, "gauss.csv");
            write_delimited(path, data);
            write_truth(path + ".truth", data);
            std::cout << "wrote " << data.size() << " points, " << data.truth_outliers->size() << " truth outliers to "
                      << path << '\n';
        } else if (summarize->parsed()) {
            const auto data = load_dataset(sum_data.source());
            sum_params.objective = parse_objective(sum_objective);
            Summary summary;
            switch (parse_algorithm(sum_algo)) {
                case SummaryAlgorithm::ball_grow:
                    summary = sum_plain ? summary_outliers(data, sum_params) : augmented_summary_outliers(data, sum_params);
                    break;
                case SummaryAlgorithm::rand:
                    summary = rand_summary(data, sum_size, sum_params.seed, sum_params.objective);
                    break;
                case SummaryAlgorithm::d2pp:
                    summary = d2_summary(data, sum_size, sum_params.seed, sum_params.objective);
                    break;
            }
            const auto path = in_output_dir(sum_out, "summary.csv");
            write_summary(path, summary);
            write_text(path + ".stats.json", summary_sidecar(summary).dump(2) + "\n");
            std::cout << "summary of " << data.size() << " points: " << summary.size() << " entries, loss "
                      << format_number(summary.loss) << '\n';
        } else if (cluster->parsed()) {
            cl_cfg.objective = parse_objective(cl_objective);
            const auto q = WeightedSet::from_summary(read_summary(cl_summary));
            const auto result = kmeans_mm(q, cl_cfg);
            const auto text = to_json(result, q.ids).dump(2) + "\n";
            const auto path = in_output_dir(cl_out, "cluster.json");
            write_text(path, text);
            std::cout << "cost " << format_number(result.cost) << " after " << result.iterations << " iterations, "
                      << result.outliers.size() << " outlier entries\n";
        } else if (run->parsed()) {
            ExperimentSpec spec;
            if (!run_spec_file.empty()) {
                spec = spec_from_json(read_json(run_spec_file));
            } else {
                if (run_seed_opt->count() == 0) {
                    throw std::invalid_argument("--seed is required");
                }
                spec = run_spec;
                spec.data = run_data.source();
                spec.algorithm = parse_algorithm(run_algo);
                spec.objective = parse_objective(run_objective);
                spec.augmented = !run_plain;
                spec.base_seed = run_seed;
            }
            spec.validate();
            const auto data = load_dataset(spec.data);

            std::vector<EvalReport> rows;
            std::ostringstream tables;
            for (std::size_t r = 0; r < spec.repeats; ++r) {
                const auto seed = spec.base_seed + r;
                auto outcome = run_once(data, spec, seed);
                tables << "# repeat " << r << " seed " << seed << '\n';
                print_site_table(tables, make_partition(data, spec, seed), outcome.result);
                if (run_timings) {
                    for (const auto& [stage, secs] : outcome.report.wall_times) {
                        std::cerr << "repeat " << r << ' ' << stage << ' ' << secs << "s\n";
                    }
                }
                rows.push_back(std::move(outcome.report));
            }
            const auto csv = experiment_csv(rows);
            write_text(in_output_dir(run_csv, "run.csv"), csv);
            write_text(in_output_dir(run_json, "run.json"), experiment_json(spec, rows));
            std::cout << tables.str() << csv;
        } else if (compare->parsed()) {
            std::vector<ExperimentSpec> specs;
            for (const auto& path : cmp_specs) {
                specs.push_back(spec_from_json(read_json(path)));
            }
            if (specs.size() < 2) {
                throw std::invalid_argument("compare needs at least two spec files");
            }
            const auto data = load_dataset(specs.front().data);
            const auto table = compare_csv(compare_experiments(specs, data));
            write_text(in_output_dir(cmp_out, "compare.csv"), table);
            std::cout << table;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
