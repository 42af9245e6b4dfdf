#include "dcnet/simulate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "dcnet/dcor.hpp"
#include "dcnet/error.hpp"
#include "dcnet/estimator.hpp"
#include "dcnet/pipeline.hpp"
#include "dcnet/rng.hpp"

namespace dcnet {

using ordered_json = nlohmann::ordered_json;

Adjacency erdos_renyi(const ErdosRenyiSpec& spec) {
    if (spec.p < 2)
        throw invalid_input("erdos_renyi: need p >= 2, got " + std::to_string(spec.p));
    const double prob = spec.c / static_cast<double>(spec.p);
    if (!(prob > 0.0) || prob > 1.0)
        throw invalid_input("erdos_renyi: edge probability c/p = " + std::to_string(prob) +
                            " outside (0, 1]");

    rng::Generator g(spec.seed);
    Adjacency adj(spec.p);
    // ascending lexicographic pair order, one uniform draw per pair
    for (std::size_t i = 0; i < spec.p; ++i) {
        for (std::size_t j = i + 1; j < spec.p; ++j) {
            if (g.uniform() < prob) adj.set(i, j, true);
        }
    }
    return adj;
}

Dataset sample_linear_data(const Adjacency& g, const LinearDataSpec& spec) {
    const std::size_t p = g.p;
    if (p < 2) throw invalid_input("sample_linear_data: graph needs p >= 2");
    if (spec.n < 2) throw invalid_input("sample_linear_data: need n >= 2");
    if (!(spec.coef_low > 0.0) || !(spec.coef_low <= spec.coef_high))
        throw invalid_input("sample_linear_data: need 0 < coef_low <= coef_high");
    if (!(spec.noise_sd > 0.0))
        throw invalid_input("sample_linear_data: noise_sd must be > 0");

    // stream 0: visit order; stream 1 + j: column j's draws
    rng::Generator order_gen(rng::derive_seed(spec.seed, 0));
    const std::vector<std::size_t> order = rng::permutation(p, order_gen);

    std::vector<std::uint8_t> visited(p, 0);
    Dataset data(spec.n, p);

    // uniform noise on [-sqrt(3) sd, sqrt(3) sd] has standard deviation sd
    const double half_width = std::sqrt(3.0) * spec.noise_sd;

    for (std::size_t pos = 0; pos < p; ++pos) {
        const std::size_t j = order[pos];
        rng::Generator gj(rng::derive_seed(spec.seed, 1 + j));

        auto col = data.column(j);
        for (std::size_t i = 0; i < spec.n; ++i) {
            col[i] = spec.uniform_noise ? gj.uniform(-half_width, half_width)
                                        : gj.normal(0.0, spec.noise_sd);
        }
        for (std::size_t nb = 0; nb < p; ++nb) {
            if (nb == j || !g.at(j, nb) || !visited[nb]) continue;
            const double coef = gj.uniform(spec.coef_low, spec.coef_high);
            const double sign = gj.sign();
            const auto src = data.column(nb);
            for (std::size_t i = 0; i < spec.n; ++i) col[i] += sign * coef * src[i];
        }
        visited[j] = 1;
    }
    return standardize(data);
}

RecoveryReport recovery_experiment(const ErdosRenyiSpec& er_spec,
                                   const LinearDataSpec& data_spec) {
    RecoveryReport report;
    report.true_graph = erdos_renyi(er_spec);
    report.true_edge_count = report.true_graph.edge_count();
    report.n = data_spec.n;
    report.p = er_spec.p;
    report.seed = er_spec.seed;

    const Dataset data = sample_linear_data(report.true_graph, data_spec);
    const DcorMatrixResult dm = dcor_matrix(data);
    const InvertResult inv = invert(dm.r, 1e-8, 1e-2);
    report.ridge_applied = inv.ridge_applied;
    const PartialCorr pc = partial_correlations(inv.inverse, inv.ridge_applied);

    // equal-edge-count protocol: estimate exactly as many edges as the truth
    const EdgeCountResult est = threshold_for_edge_count(pc, report.true_edge_count);
    report.estimated_graph = est.graph;
    report.estimated_edge_count = est.graph.edge_count();
    report.hamming = hamming_distance(report.true_graph, report.estimated_graph);
    return report;
}

namespace {

ordered_json edges_json(const Adjacency& g) {
    ordered_json arr = ordered_json::array();
    for (const auto& [i, j] : g.edges()) arr.push_back(ordered_json::array({i, j}));
    return arr;
}

} // namespace

std::string recovery_report_json(const RecoveryReport& r) {
    ordered_json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["true_edge_count"] = r.true_edge_count;
    j["estimated_edge_count"] = r.estimated_edge_count;
    j["hamming"] = r.hamming;
    j["ridge_applied"] = r.ridge_applied;
    j["true_graph"] = edges_json(r.true_graph);
    j["estimated_graph"] = edges_json(r.estimated_graph);
    return j.dump(2) + "\n";
}

std::string recovery_report_csv_header() {
    return "p,n,seed,true_edge_count,estimated_edge_count,hamming,ridge_applied\n";
}

std::string recovery_report_csv_row(const RecoveryReport& r) {
    return std::to_string(r.p) + "," + std::to_string(r.n) + "," + std::to_string(r.seed) +
           "," + std::to_string(r.true_edge_count) + "," +
           std::to_string(r.estimated_edge_count) + "," + std::to_string(r.hamming) + "," +
           format_double17(r.ridge_applied) + "\n";
}

const char* column_dist_name(ColumnDist d) {
    switch (d) {
        case ColumnDist::gaussian: return "gaussian";
        case ColumnDist::uniform: return "uniform";
        case ColumnDist::exponential: return "exponential";
    }
    return "?";
}

std::optional<ColumnDist> parse_column_dist(const std::string& name) {
    if (name == "gaussian") return ColumnDist::gaussian;
    if (name == "uniform") return ColumnDist::uniform;
    if (name == "exponential") return ColumnDist::exponential;
    return std::nullopt;
}

Dataset independent_columns(std::size_t n, std::size_t p, ColumnDist dist,
                            std::uint64_t seed) {
    Dataset data(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        rng::Generator g(rng::derive_seed(seed, j));
        auto col = data.column(j);
        for (std::size_t i = 0; i < n; ++i) {
            switch (dist) {
                case ColumnDist::gaussian: col[i] = g.normal(); break;
                case ColumnDist::uniform: col[i] = g.uniform(); break;
                case ColumnDist::exponential: col[i] = g.exponential(); break;
            }
        }
    }
    return data;
}

Matrix pearson_correlation(const Dataset& data) {
    validate_dataset(data);
    const std::size_t n = data.n, p = data.p;

    // two-pass centered cross sums; denominators cancel in the ratio
    std::vector<double> means(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        const auto col = data.column(j);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += col[i];
        means[j] = s / static_cast<double>(n);
    }
    Matrix s(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        const auto ca = data.column(a);
        for (std::size_t b = a; b < p; ++b) {
            const auto cb = data.column(b);
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sum += (ca[i] - means[a]) * (cb[i] - means[b]);
            s.at(a, b) = sum;
            s.at(b, a) = sum;
        }
    }
    Matrix r(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        r.at(a, a) = 1.0;
        for (std::size_t b = a + 1; b < p; ++b) {
            const double denom2 = s.at(a, a) * s.at(b, b);
            const double v = denom2 > 0.0 ? s.at(a, b) / std::sqrt(denom2) : 0.0;
            r.at(a, b) = v;
            r.at(b, a) = v;
        }
    }
    return r;
}

std::vector<DeterminantRow> determinant_experiment(const std::vector<std::size_t>& dims,
                                                   std::size_t n, std::size_t reps,
                                                   std::uint64_t seed, ColumnDist dist) {
    if (dims.empty()) throw invalid_input("determinant_experiment: dims is empty");
    if (reps < 1) throw invalid_input("determinant_experiment: reps must be >= 1");
    if (n < 2) throw invalid_input("determinant_experiment: need n >= 2");

    std::vector<DeterminantRow> rows;
    rows.reserve(dims.size());
    for (std::size_t di = 0; di < dims.size(); ++di) {
        const std::size_t p = dims[di];
        if (p < 2) throw invalid_input("determinant_experiment: dimensions must be >= 2");
        DeterminantRow row;
        row.p = p;
        row.reps = reps;
        double sum_pearson = 0.0, sum_dcor = 0.0;
        std::size_t finite_pearson = 0, finite_dcor = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const std::uint64_t rep_seed =
                rng::derive_seed(rng::derive_seed(seed, di), rep);
            const Dataset data = independent_columns(n, p, dist, rep_seed);

            const auto ld_pearson = log_det(pearson_correlation(data));
            if (ld_pearson) {
                sum_pearson += *ld_pearson;
                ++finite_pearson;
            } else {
                ++row.pearson_singular;
            }
            const auto ld_dcor = log_det(dcor_matrix(data).r);
            if (ld_dcor) {
                sum_dcor += *ld_dcor;
                ++finite_dcor;
            } else {
                ++row.dcor_singular;
            }
        }
        row.mean_log_det_pearson =
            finite_pearson ? sum_pearson / static_cast<double>(finite_pearson)
                           : -std::numeric_limits<double>::infinity();
        row.mean_log_det_dcor = finite_dcor
                                    ? sum_dcor / static_cast<double>(finite_dcor)
                                    : -std::numeric_limits<double>::infinity();
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string finite_or_marker(double v) {
    return std::isfinite(v) ? format_double17(v) : std::string("-inf");
}

} // namespace

std::string determinant_table_csv(const std::vector<DeterminantRow>& rows) {
    std::string out =
        "p,mean_log_det_pearson,pearson_singular,mean_log_det_dcor,dcor_singular,reps\n";
    for (const auto& r : rows) {
        out += std::to_string(r.p) + "," + finite_or_marker(r.mean_log_det_pearson) + "," +
               std::to_string(r.pearson_singular) + "," +
               finite_or_marker(r.mean_log_det_dcor) + "," +
               std::to_string(r.dcor_singular) + "," + std::to_string(r.reps) + "\n";
    }
    return out;
}

std::string determinant_table_json(const std::vector<DeterminantRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["p"] = r.p;
        j["mean_log_det_pearson"] =
            std::isfinite(r.mean_log_det_pearson)
                ? ordered_json(r.mean_log_det_pearson)
                : ordered_json("-inf");
        j["pearson_singular"] = r.pearson_singular;
        j["mean_log_det_dcor"] = std::isfinite(r.mean_log_det_dcor)
                                     ? ordered_json(r.mean_log_det_dcor)
                                     : ordered_json("-inf");
        j["dcor_singular"] = r.dcor_singular;
        j["reps"] = r.reps;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::uint64_t derive_data_seed(std::uint64_t master) {
    return rng::derive_seed(master, 0x64617461ull); // "data"
}

} // namespace dcnet
