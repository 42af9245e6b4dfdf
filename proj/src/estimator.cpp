#include "dcnet/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>

#include "dcnet/dcor.hpp"
#include "dcnet/error.hpp"

namespace dcnet {

namespace {

struct ColumnPrep {
    std::vector<RowStats> stats;     // per-column centering stats
    std::vector<double> dvar2;       // per-column squared distance variance
    std::vector<std::size_t> constant_columns;
};

bool is_constant(std::span<const double> col) {
    for (std::size_t i = 1; i < col.size(); ++i)
        if (col[i] != col[0]) return false;
    return true;
}

// Stats and distance variances once per column; pairs only need the cross
// sum afterwards. Loop structure matches dcor_fast, so matrix cells are
// bitwise equal to standalone dcor_fast calls.
ColumnPrep prepare_columns(const Dataset& data, bool parallel) {
    const std::size_t p = data.p;
    ColumnPrep prep;
    prep.stats.resize(p);
    prep.dvar2.assign(p, 0.0);

    std::vector<std::uint8_t> constant(p, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(p); ++j) {
        const auto col = data.column(static_cast<std::size_t>(j));
        constant[j] = is_constant(col) ? 1 : 0;
        prep.stats[j] = distance_row_stats(col);
        prep.dvar2[j] = dcov2_from_stats(col, col, prep.stats[j], prep.stats[j]);
    }
    for (std::size_t j = 0; j < p; ++j)
        if (constant[j]) prep.constant_columns.push_back(j);
    return prep;
}

DcorMatrixResult dcor_matrix_impl(const Dataset& data, bool parallel) {
    validate_dataset(data);
    const std::size_t p = data.p;

    const ColumnPrep prep = prepare_columns(data, parallel);

    DcorMatrixResult out;
    out.constant_columns = prep.constant_columns;
    for (std::size_t j : prep.constant_columns)
        out.warnings.push_back("column " + std::to_string(j) + " (" + data.name_of(j) +
                               ") is constant; its distance correlations are 0");

    out.r = Matrix(p, p);
    for (std::size_t i = 0; i < p; ++i) out.r.at(i, i) = 1.0;

    // flatten the unordered pairs so OpenMP can split them
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(p * (p - 1) / 2);
    for (std::uint32_t i = 0; i < p; ++i)
        for (std::uint32_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(pairs.size()); ++idx) {
        const auto [i, j] = pairs[static_cast<std::size_t>(idx)];
        const auto xi = data.column(i);
        const auto xj = data.column(j);
        const double nu2_xy = dcov2_from_stats(xi, xj, prep.stats[i], prep.stats[j]);
        const DcovResult res =
            assemble_dcov_result(nu2_xy, prep.dvar2[i], prep.dvar2[j]);
        out.r.at(i, j) = res.dcor;
        out.r.at(j, i) = res.dcor;
    }
    return out;
}

} // namespace

DcorMatrixResult dcor_matrix(const Dataset& data) {
    return dcor_matrix_impl(data, true);
}

DcorMatrixResult dcor_matrix_serial(const Dataset& data) {
    return dcor_matrix_impl(data, false);
}

PartialCorr partial_correlations(const Matrix& inv, double ridge_applied) {
    if (!inv.square()) throw invalid_input("partial_correlations: matrix must be square");
    const std::size_t p = inv.rows;

    double max_abs = 0.0;
    for (double v : inv.values) max_abs = std::max(max_abs, std::abs(v));
    double max_asym = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            max_asym = std::max(max_asym, std::abs(inv.at(i, j) - inv.at(j, i)));
    if (max_asym > 1e-9 * std::max(1.0, max_abs))
        throw invalid_input("partial_correlations: input is not symmetric (max asymmetry " +
                            std::to_string(max_asym) + ")");

    for (std::size_t i = 0; i < p; ++i) {
        if (!(inv.at(i, i) > 0.0))
            throw invalid_input("partial_correlations: nonpositive diagonal at index " +
                                std::to_string(i));
    }

    PartialCorr pc;
    pc.ridge_applied = ridge_applied;
    pc.entries = Matrix(p, p);
    std::vector<double> inv_sqrt_diag(p);
    for (std::size_t i = 0; i < p; ++i) inv_sqrt_diag[i] = 1.0 / std::sqrt(inv.at(i, i));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double avg = 0.5 * (inv.at(i, j) + inv.at(j, i));
            const double rho = -avg * inv_sqrt_diag[i] * inv_sqrt_diag[j];
            pc.entries.at(i, j) = rho;
            pc.entries.at(j, i) = rho;
        }
    }
    return pc;
}

Adjacency threshold_graph(const Matrix& entries, double tp) {
    if (!(tp >= 0.0)) throw invalid_input("threshold_graph: tp must be >= 0");
    const std::size_t p = entries.rows;
    Adjacency g(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (std::abs(entries.at(i, j)) > tp) g.set(i, j, true);
    return g;
}

Adjacency threshold_graph(const PartialCorr& pc, double tp) {
    return threshold_graph(pc.entries, tp);
}

EdgeCountResult threshold_for_edge_count(const Matrix& m, std::size_t k) {
    const std::size_t p = m.rows;
    const std::size_t max_edges = p * (p - 1) / 2;
    if (k > max_edges)
        throw invalid_input("threshold_for_edge_count: k=" + std::to_string(k) +
                            " exceeds " + std::to_string(max_edges) + " pairs");

    struct Entry {
        double mag;
        std::size_t i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(max_edges);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            entries.push_back({std::abs(m.at(i, j)), i, j});

    // largest magnitude first; ties by ascending (i, j)
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(b.mag, a.i, a.j) < std::tie(a.mag, b.i, b.j);
    });

    EdgeCountResult out;
    out.graph = Adjacency(p);
    out.tp = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < k; ++e) {
        out.graph.set(entries[e].i, entries[e].j, true);
        out.tp = entries[e].mag;
    }
    return out;
}

EdgeCountResult threshold_for_edge_count(const PartialCorr& pc, std::size_t k) {
    return threshold_for_edge_count(pc.entries, k);
}

ThresholdPath estimation_path(const Matrix& entries,
                              const std::vector<double>& thresholds) {
    if (thresholds.empty())
        throw invalid_input("estimation_path: threshold sequence is empty");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0))
            throw invalid_input("estimation_path: thresholds must be >= 0");
        if (i > 0 && !(thresholds[i] < thresholds[i - 1]))
            throw invalid_input("estimation_path: thresholds must be strictly decreasing");
    }
    ThresholdPath path;
    path.thresholds = thresholds;
    for (double tp : thresholds) {
        path.graphs.push_back(threshold_graph(entries, tp));
        path.edge_counts.push_back(path.graphs.back().edge_count());
    }
    return path;
}

ThresholdPath estimation_path(const PartialCorr& pc,
                              const std::vector<double>& thresholds) {
    return estimation_path(pc.entries, thresholds);
}

std::vector<double> auto_thresholds(const Matrix& source, std::size_t count,
                                    double min_ratio) {
    if (count < 2) throw invalid_input("auto_thresholds: need at least 2 values");
    if (!(min_ratio > 0.0) || !(min_ratio < 1.0))
        throw invalid_input("auto_thresholds: min_ratio must be in (0, 1)");
    double max_mag = 0.0;
    for (std::size_t i = 0; i < source.rows; ++i)
        for (std::size_t j = i + 1; j < source.cols; ++j)
            max_mag = std::max(max_mag, std::abs(source.at(i, j)));
    if (max_mag <= 0.0)
        throw invalid_input("auto_thresholds: no nonzero off-diagonal entries");

    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = max_mag * std::pow(min_ratio, frac);
    }
    return out;
}

} // namespace dcnet
