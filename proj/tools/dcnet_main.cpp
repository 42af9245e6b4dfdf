// dcnet command-line front end.
//
// Subcommands: estimate, simulate, eval, bench-det, transform. Every run is
// deterministic given its full flag set (seeds included) and writes a
// summary.json with the tool version and the resolved configuration, enough
// to replay the run. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcnet/error.hpp"
#include "dcnet/estimator.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/matrix.hpp"
#include "dcnet/pipeline.hpp"
#include "dcnet/simulate.hpp"
#include "dcnet/types.hpp"
#include "dcnet/version.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

char parse_delimiter(const std::string& s) {
    if (s == "\\t" || s == "tab") return '\t';
    if (s.size() != 1) throw UsageError("--delimiter must be a single character or '\\t'");
    return s[0];
}

std::vector<double> parse_double_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw UsageError(std::string(flag) + ": empty value in list");
        try {
            out.push_back(std::stod(cur));
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": cannot parse '" + cur + "'");
        }
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

// dims spec: comma-separated entries, each "a" or "a-b" (inclusive)
std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw UsageError("--dims: empty entry");
        const std::size_t dash = cur.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoul(cur));
            } else {
                const std::size_t a = std::stoul(cur.substr(0, dash));
                const std::size_t b = std::stoul(cur.substr(dash + 1));
                if (a > b) throw UsageError("--dims: descending range '" + cur + "'");
                for (std::size_t v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("--dims: cannot parse '" + cur + "'");
        }
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw dcnet::invalid_input("cannot open for writing: " + path.string());
    f << content;
}

void write_json(const fs::path& path, const ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

ordered_json summary_skeleton(const std::string& subcommand) {
    ordered_json j;
    j["tool"] = "dcnet";
    j["version"] = DCNET_VERSION;
    j["subcommand"] = subcommand;
    return j;
}

fs::path prepare_output_dir(const std::string& dir) {
    fs::path out(dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw dcnet::invalid_input("cannot create output dir: " + dir);
    return out;
}

// ---------------------------------------------------------------- estimate

struct EstimateOpts {
    std::string input;
    std::string output_dir = ".";
    bool header = false;
    std::string delimiter = ",";
    std::string select;
    std::string threshold_matrix = "partial";
    double tp = 0.0;
    std::int64_t edges = 0;
    std::string thresholds;
    double ridge_step = 1e-8;
    double ridge_max = 1e-2;
    bool tp_given = false, edges_given = false, thresholds_given = false;
};

int run_estimate(const EstimateOpts& opt) {
    const char delim = parse_delimiter(opt.delimiter);

    const int mode_count = int(opt.tp_given) + int(opt.edges_given) + int(opt.thresholds_given);
    if (mode_count != 1)
        throw UsageError("estimate: give exactly one of --tp, --edges, --thresholds");
    if (opt.tp_given && !(opt.tp >= 0.0)) throw UsageError("estimate: --tp must be >= 0");
    if (opt.edges_given && opt.edges < 0) throw UsageError("estimate: --edges must be >= 0");

    dcnet::Dataset data = dcnet::read_csv(opt.input, opt.header, delim);
    if (!opt.select.empty())
        data = dcnet::apply_selection(data, dcnet::parse_selection(opt.select));

    const dcnet::DcorMatrixResult dm = dcnet::dcor_matrix(data);
    const dcnet::InvertResult inv = dcnet::invert(dm.r, opt.ridge_step, opt.ridge_max);
    const dcnet::PartialCorr pc =
        dcnet::partial_correlations(inv.inverse, inv.ridge_applied);

    const dcnet::Matrix& source =
        opt.threshold_matrix == "dcor" ? dm.r : pc.entries;

    const fs::path out = prepare_output_dir(opt.output_dir);
    dcnet::write_matrix_csv((out / "dcor_matrix.csv").string(), dm.r, data.column_names);
    dcnet::write_matrix_csv((out / "partial_matrix.csv").string(), pc.entries,
                            data.column_names);

    ordered_json summary = summary_skeleton("estimate");
    ordered_json config;
    config["input"] = opt.input;
    config["output_dir"] = opt.output_dir;
    config["header"] = opt.header;
    config["delimiter"] = std::string(1, delim);
    config["select"] = opt.select;
    config["threshold_matrix"] = opt.threshold_matrix;
    config["ridge_step"] = opt.ridge_step;
    config["ridge_max"] = opt.ridge_max;
    if (opt.tp_given) config["tp"] = opt.tp;
    if (opt.edges_given) config["edges"] = opt.edges;
    if (opt.thresholds_given) config["thresholds"] = opt.thresholds;
    summary["config"] = config;
    summary["n"] = data.n;
    summary["p"] = data.p;
    summary["ridge_applied"] = inv.ridge_applied;

    if (opt.thresholds_given) {
        std::vector<double> ts;
        if (opt.thresholds == "auto")
            ts = dcnet::auto_thresholds(source);
        else
            ts = parse_double_list(opt.thresholds, "--thresholds");
        const dcnet::ThresholdPath path = dcnet::estimation_path(source, ts);

        summary["mode"] = "path";
        summary["thresholds"] = path.thresholds;
        summary["edge_counts"] = path.edge_counts;
        ordered_json files = ordered_json::array();
        for (std::size_t i = 0; i < path.graphs.size(); ++i) {
            char stem[32];
            std::snprintf(stem, sizeof(stem), "path_%03zu", i);
            dcnet::write_edge_list((out / (std::string(stem) + ".edges")).string(),
                                   path.graphs[i]);
            dcnet::write_dot((out / (std::string(stem) + ".dot")).string(), path.graphs[i],
                             data.column_names);
            files.push_back(std::string(stem) + ".edges");
        }
        summary["graph_files"] = files;
    } else {
        dcnet::Adjacency graph;
        double tp_resolved = 0.0;
        if (opt.tp_given) {
            graph = dcnet::threshold_graph(source, opt.tp);
            tp_resolved = opt.tp;
            summary["mode"] = "tp";
        } else {
            const dcnet::EdgeCountResult res =
                dcnet::threshold_for_edge_count(source, static_cast<std::size_t>(opt.edges));
            graph = res.graph;
            tp_resolved = res.tp;
            summary["mode"] = "edges";
            summary["edges_requested"] = opt.edges;
        }
        dcnet::write_edge_list((out / "graph.edges").string(), graph);
        dcnet::write_dot((out / "graph.dot").string(), graph, data.column_names);
        summary["tp"] = std::isfinite(tp_resolved) ? ordered_json(tp_resolved)
                                                   : ordered_json("inf");
        summary["edge_count"] = graph.edge_count();
    }

    summary["warnings"] = dm.warnings;
    write_json(out / "summary.json", summary);
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    std::size_t nodes = 0;
    double avg_degree = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double noise_sd = 1.0;
    std::string coef_range = "0.3,0.9";
    std::string noise = "gaussian";
    std::string output_dir = ".";
};

int run_simulate(const SimulateOpts& opt) {
    const std::vector<double> range = parse_double_list(opt.coef_range, "--coef-range");
    if (range.size() != 2) throw UsageError("--coef-range: expected 'low,high'");
    if (opt.noise != "gaussian" && opt.noise != "uniform")
        throw UsageError("--noise must be 'gaussian' or 'uniform'");

    dcnet::ErdosRenyiSpec er;
    er.p = opt.nodes;
    er.c = opt.avg_degree;
    er.seed = opt.seed;

    dcnet::LinearDataSpec ls;
    ls.n = opt.samples;
    ls.coef_low = range[0];
    ls.coef_high = range[1];
    ls.noise_sd = opt.noise_sd;
    ls.uniform_noise = opt.noise == "uniform";
    ls.seed = dcnet::derive_data_seed(opt.seed);

    const dcnet::Adjacency truth = dcnet::erdos_renyi(er);
    const dcnet::Dataset data = dcnet::sample_linear_data(truth, ls);

    const fs::path out = prepare_output_dir(opt.output_dir);
    const std::string seed_tag = "seed" + std::to_string(opt.seed);
    const std::string truth_name = "truth_" + seed_tag + ".edges";
    const std::string data_name = "data_" + seed_tag + ".csv";
    dcnet::write_edge_list((out / truth_name).string(), truth);
    dcnet::write_dataset_csv((out / data_name).string(), data);

    ordered_json summary = summary_skeleton("simulate");
    ordered_json config;
    config["nodes"] = opt.nodes;
    config["avg_degree"] = opt.avg_degree;
    config["samples"] = opt.samples;
    config["seed"] = opt.seed;
    config["noise_sd"] = opt.noise_sd;
    config["coef_range"] = opt.coef_range;
    config["noise"] = opt.noise;
    config["output_dir"] = opt.output_dir;
    summary["config"] = config;
    summary["data_seed"] = ls.seed;
    summary["true_edge_count"] = truth.edge_count();
    summary["truth_file"] = truth_name;
    summary["data_file"] = data_name;
    summary["warnings"] = ordered_json::array();
    write_json(out / "summary.json", summary);
    return 0;
}

// -------------------------------------------------------------------- eval

struct EvalOpts {
    std::string truth;
    std::string estimated;
    std::size_t nodes = 0;
    std::string output_dir = ".";
};

int run_eval(const EvalOpts& opt) {
    dcnet::Adjacency a = dcnet::read_edge_list(opt.truth, opt.nodes);
    dcnet::Adjacency b = dcnet::read_edge_list(opt.estimated, opt.nodes);
    if (opt.nodes == 0) {
        // no explicit p: align both graphs on the larger inferred node count
        const std::size_t p = std::max(a.p, b.p);
        a = dcnet::read_edge_list(opt.truth, p);
        b = dcnet::read_edge_list(opt.estimated, p);
    }
    const std::size_t hamming = dcnet::hamming_distance(a, b);

    ordered_json disagreeing = ordered_json::array();
    for (std::size_t i = 0; i < a.p; ++i)
        for (std::size_t j = i + 1; j < a.p; ++j)
            if (a.at(i, j) != b.at(i, j))
                disagreeing.push_back(ordered_json::array({i, j}));

    const fs::path out = prepare_output_dir(opt.output_dir);
    ordered_json summary = summary_skeleton("eval");
    ordered_json config;
    config["truth"] = opt.truth;
    config["estimated"] = opt.estimated;
    config["nodes"] = opt.nodes;
    config["output_dir"] = opt.output_dir;
    summary["config"] = config;
    summary["p"] = a.p;
    summary["hamming"] = hamming;
    summary["truth_edge_count"] = a.edge_count();
    summary["estimated_edge_count"] = b.edge_count();
    summary["disagreeing_pairs"] = disagreeing;
    summary["warnings"] = ordered_json::array();
    write_json(out / "summary.json", summary);

    std::cout << "hamming " << hamming << "\n";
    return 0;
}

// --------------------------------------------------------------- bench-det

struct BenchDetOpts {
    std::string dims = "2-100";
    std::size_t samples = 50;
    std::size_t reps = 3;
    std::uint64_t seed = 0;
    std::string dist = "gaussian";
    std::string output_dir = ".";
};

int run_bench_det(const BenchDetOpts& opt) {
    const std::vector<std::size_t> dims = parse_dims(opt.dims);
    const auto dist = dcnet::parse_column_dist(opt.dist);
    if (!dist) throw UsageError("--dist must be gaussian, uniform, or exponential");

    const std::vector<dcnet::DeterminantRow> rows =
        dcnet::determinant_experiment(dims, opt.samples, opt.reps, opt.seed, *dist);

    const fs::path out = prepare_output_dir(opt.output_dir);
    write_text(out / "logdet.csv", dcnet::determinant_table_csv(rows));

    ordered_json summary = summary_skeleton("bench-det");
    ordered_json config;
    config["dims"] = opt.dims;
    config["samples"] = opt.samples;
    config["reps"] = opt.reps;
    config["seed"] = opt.seed;
    config["dist"] = opt.dist;
    config["output_dir"] = opt.output_dir;
    summary["config"] = config;
    summary["rows"] = ordered_json::parse(dcnet::determinant_table_json(rows));
    summary["warnings"] = ordered_json::array();
    write_json(out / "summary.json", summary);
    return 0;
}

// --------------------------------------------------------------- transform

struct TransformOpts {
    std::string input;
    std::string output_dir = ".";
    bool header = false;
    std::string delimiter = ",";
    std::string select;
};

int run_transform(const TransformOpts& opt) {
    const char delim = parse_delimiter(opt.delimiter);
    dcnet::Dataset raw = dcnet::read_csv(opt.input, opt.header, delim);
    if (!opt.select.empty())
        raw = dcnet::apply_selection(raw, dcnet::parse_selection(opt.select));

    const dcnet::PriceTable prices = dcnet::as_price_table(std::move(raw));
    const dcnet::Dataset returns = dcnet::log_ratio_transform(prices);
    const dcnet::Dataset standardized = dcnet::standardize(returns);

    const fs::path out = prepare_output_dir(opt.output_dir);
    dcnet::write_dataset_csv((out / "transformed.csv").string(), standardized, delim);

    ordered_json summary = summary_skeleton("transform");
    ordered_json config;
    config["input"] = opt.input;
    config["output_dir"] = opt.output_dir;
    config["header"] = opt.header;
    config["delimiter"] = std::string(1, delim);
    config["select"] = opt.select;
    summary["config"] = config;
    summary["rows_in"] = prices.data.n;
    summary["rows_out"] = standardized.n;
    summary["p"] = standardized.p;
    summary["warnings"] = ordered_json::array();
    write_json(out / "summary.json", summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dcnet: undirected graph structure from distance correlations"};
    app.set_version_flag("--version", DCNET_VERSION);
    app.require_subcommand(1);

    EstimateOpts est;
    auto* est_cmd = app.add_subcommand(
        "estimate", "Estimate a graph from a dataset CSV (dcor matrix -> inverse -> "
                    "partial correlations -> threshold)");
    est_cmd->add_option("--input", est.input, "dataset CSV")->required();
    est_cmd->add_option("--output-dir", est.output_dir, "output directory");
    est_cmd->add_flag("--header", est.header, "first CSV row is a header");
    est_cmd->add_option("--delimiter", est.delimiter, "CSV delimiter (default ',')");
    est_cmd->add_option("--select", est.select,
                        "column subset: 'a-b' index range or comma list of indices/names");
    est_cmd->add_option("--threshold-matrix", est.threshold_matrix,
                        "matrix whose entries are thresholded")
        ->check(CLI::IsMember({"partial", "dcor"}));
    auto* tp_opt = est_cmd->add_option("--tp", est.tp, "threshold on |entries|");
    auto* edges_opt = est_cmd->add_option("--edges", est.edges, "target edge count");
    auto* thr_opt = est_cmd->add_option("--thresholds", est.thresholds,
                                        "'auto' or descending comma list (path mode)");
    est_cmd->add_option("--ridge-step", est.ridge_step, "initial ridge epsilon");
    est_cmd->add_option("--ridge-max", est.ridge_max, "largest ridge epsilon tried");

    SimulateOpts sim;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Generate an Erdos-Renyi graph and a matching linear dataset");
    sim_cmd->add_option("--nodes", sim.nodes, "node count p")->required();
    sim_cmd->add_option("--avg-degree", sim.avg_degree, "average degree c")->required();
    sim_cmd->add_option("--samples", sim.samples, "sample count n")->required();
    sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
    sim_cmd->add_option("--noise-sd", sim.noise_sd, "white-noise standard deviation");
    sim_cmd->add_option("--coef-range", sim.coef_range, "coefficient bounds 'low,high'");
    sim_cmd->add_option("--noise", sim.noise, "noise family: gaussian or uniform");
    sim_cmd->add_option("--output-dir", sim.output_dir, "output directory");

    EvalOpts ev;
    auto* eval_cmd =
        app.add_subcommand("eval", "Hamming distance between two edge-list files");
    eval_cmd->add_option("--truth", ev.truth, "ground-truth edge list")->required();
    eval_cmd->add_option("--estimated", ev.estimated, "estimated edge list")->required();
    eval_cmd->add_option("--nodes", ev.nodes, "node count (default: inferred)");
    eval_cmd->add_option("--output-dir", ev.output_dir, "output directory");

    BenchDetOpts bd;
    auto* bd_cmd = app.add_subcommand(
        "bench-det", "Mean log-determinant of Pearson vs dcor matrices by dimension");
    bd_cmd->add_option("--dims", bd.dims, "dimensions, e.g. '2-100' or '5,10,20'");
    bd_cmd->add_option("--samples", bd.samples, "sample count n");
    bd_cmd->add_option("--reps", bd.reps, "repetitions per dimension");
    bd_cmd->add_option("--seed", bd.seed, "master seed")->required();
    bd_cmd->add_option("--dist", bd.dist, "column distribution")
        ->check(CLI::IsMember({"gaussian", "uniform", "exponential"}));
    bd_cmd->add_option("--output-dir", bd.output_dir, "output directory");

    TransformOpts tr;
    auto* tr_cmd = app.add_subcommand(
        "transform", "Log-ratio returns + standardization of a positive price CSV");
    tr_cmd->add_option("--input", tr.input, "price CSV")->required();
    tr_cmd->add_option("--output-dir", tr.output_dir, "output directory");
    tr_cmd->add_flag("--header", tr.header, "first CSV row is a header");
    tr_cmd->add_option("--delimiter", tr.delimiter, "CSV delimiter (default ',')");
    tr_cmd->add_option("--select", tr.select, "column subset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    est.tp_given = tp_opt->count() > 0;
    est.edges_given = edges_opt->count() > 0;
    est.thresholds_given = thr_opt->count() > 0;

    try {
        if (est_cmd->parsed()) return run_estimate(est);
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (eval_cmd->parsed()) return run_eval(ev);
        if (bd_cmd->parsed()) return run_bench_det(bd);
        if (tr_cmd->parsed()) return run_transform(tr);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dcnet::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dcnet::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
