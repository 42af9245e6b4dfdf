#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcnet/graph.hpp"
#include "dcnet/matrix.hpp"
#include "dcnet/types.hpp"

namespace dcnet {

// Erdos-Renyi ground truth, synthetic linear data, and the two experiment
// harnesses (structure recovery scored by Hamming distance, and the
// log-determinant invertibility comparison).
//
// Everything here is a pure function of its seeds. The engine is
// std::mt19937_64 with the fixed conversions in dcnet/rng.hpp; sub-streams
// derive from the master seed via rng::derive_seed.

struct ErdosRenyiSpec {
    std::size_t p = 0;       // node count >= 2
    double c = 0.0;          // target average degree; c/p must be in (0, 1]
    std::uint64_t seed = 0;
};

struct LinearDataSpec {
    std::size_t n = 0;        // sample count >= 2
    double coef_low = 0.3;    // coefficient magnitude bounds
    double coef_high = 0.9;
    double noise_sd = 1.0;    // white-noise standard deviation > 0
    bool uniform_noise = false; // default Gaussian; uniform has matching sd
    std::uint64_t seed = 0;
};

// Each unordered pair (i, j), i < j, in ascending lexicographic order,
// receives an edge independently with probability c/p.
Adjacency erdos_renyi(const ErdosRenyiSpec& spec);

// Draws n i.i.d. rows whose pairwise dependence runs along the edges of g:
//   1. visit variables in a random order (stream 0 of the seed);
//   2. column j (stream 1 + j) draws its n-vector of white noise, then, for
//      each already-visited neighbor i in ascending index order, a
//      coefficient uniform on [coef_low, coef_high] and a fair sign, and
//      sets X_j = sum_i sign * coef * X_i + noise;
//   3. every column is standardized (mean 0, variance 1, n-1 denominator).
// Variables with no visited neighbor are pure noise.
Dataset sample_linear_data(const Adjacency& g, const LinearDataSpec& spec);

struct RecoveryReport {
    Adjacency true_graph;
    Adjacency estimated_graph;
    std::size_t hamming = 0;
    std::size_t true_edge_count = 0;
    std::size_t estimated_edge_count = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    std::uint64_t seed = 0;      // the Erdos-Renyi seed
    double ridge_applied = 0.0;
};

// Pipeline: erdos_renyi -> sample_linear_data -> dcor_matrix -> invert
// (ridge 1e-8..1e-2) -> partial_correlations -> threshold_for_edge_count
// with k = the true edge count -> hamming_distance.
RecoveryReport recovery_experiment(const ErdosRenyiSpec& er_spec,
                                   const LinearDataSpec& data_spec);

std::string recovery_report_json(const RecoveryReport& r);
std::string recovery_report_csv_header();
std::string recovery_report_csv_row(const RecoveryReport& r);

// Column generators for the determinant experiment.
enum class ColumnDist { gaussian, uniform, exponential };

const char* column_dist_name(ColumnDist d);
std::optional<ColumnDist> parse_column_dist(const std::string& name);

// n x p dataset of independent columns drawn from `dist`.
Dataset independent_columns(std::size_t n, std::size_t p, ColumnDist dist,
                            std::uint64_t seed);

// Sample Pearson correlation matrix (baseline for the determinant
// experiment only).
Matrix pearson_correlation(const Dataset& data);

struct DeterminantRow {
    std::size_t p = 0;
    std::size_t reps = 0;
    // Means over the finite log-determinants; singular counts the
    // negative-infinity markers excluded from each mean.
    double mean_log_det_pearson = 0.0;
    std::size_t pearson_singular = 0;
    double mean_log_det_dcor = 0.0;
    std::size_t dcor_singular = 0;
};

// For each p in dims: reps independent datasets (rep seeds derived from
// `seed` by dimension index then rep), Pearson and dcor correlation
// matrices, log-determinants of both.
std::vector<DeterminantRow> determinant_experiment(const std::vector<std::size_t>& dims,
                                                   std::size_t n, std::size_t reps,
                                                   std::uint64_t seed,
                                                   ColumnDist dist = ColumnDist::gaussian);

std::string determinant_table_csv(const std::vector<DeterminantRow>& rows);
std::string determinant_table_json(const std::vector<DeterminantRow>& rows);

// Data seed used by `simulate` when the command line provides one master
// seed: the graph uses the master, the data this derivation.
std::uint64_t derive_data_seed(std::uint64_t master);

} // namespace dcnet
