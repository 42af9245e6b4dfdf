#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dcnet/graph.hpp"
#include "dcnet/matrix.hpp"
#include "dcnet/types.hpp"

namespace dcnet {

// Graph estimation pipeline: pairwise distance-correlation matrix ->
// inverse -> partial correlations -> thresholded adjacency.

struct DcorMatrixResult {
    Matrix r;                                 // p x p, symmetric, unit diagonal
    std::vector<std::size_t> constant_columns;
    std::vector<std::string> warnings;        // one entry per constant column
};

// Fills the matrix pairwise with the fast dcor kernel; each unordered pair
// is computed once and mirrored. Constant columns give zero entries (the
// degenerate branch) and a warning naming the column. The parallel variant
// distributes pairs over OpenMP threads; per-pair summation order is fixed,
// so its output is bitwise identical to the serial reference at any thread
// count.
DcorMatrixResult dcor_matrix(const Dataset& data);
DcorMatrixResult dcor_matrix_serial(const Dataset& data);

struct PartialCorr {
    Matrix entries;              // symmetric, zero diagonal
    double ridge_applied = 0.0;  // epsilon added before the inverse, 0 if none
};

// rho_ij = -inv_ij / sqrt(inv_ii * inv_jj), diagonal zeroed. `inv` must be
// symmetric within 1e-9 (relative) with positive diagonal; entries are used
// as the symmetrized average. Entries are not clamped to [-1, 1]: the dcor
// matrix need not be positive definite, and the values are only ranked.
PartialCorr partial_correlations(const Matrix& inv, double ridge_applied = 0.0);

// Edge (i, j) present iff |entries_ij| > tp. The Matrix overloads exist so
// the dcor matrix itself can be thresholded for comparison; only the
// off-diagonal is consulted.
Adjacency threshold_graph(const Matrix& entries, double tp);
Adjacency threshold_graph(const PartialCorr& pc, double tp);

struct EdgeCountResult {
    double tp = 0.0; // magnitude of the smallest included edge; +inf when k == 0
    Adjacency graph;
};

// Graph of the k largest |entries| over unordered pairs; ties at the k-th
// magnitude resolved by ascending (i, j). Errors when k > p(p-1)/2.
EdgeCountResult threshold_for_edge_count(const Matrix& entries, std::size_t k);
EdgeCountResult threshold_for_edge_count(const PartialCorr& pc, std::size_t k);

struct ThresholdPath {
    std::vector<double> thresholds;     // strictly decreasing
    std::vector<Adjacency> graphs;      // nested
    std::vector<std::size_t> edge_counts;
};

// One graph per threshold; thresholds must be strictly decreasing and >= 0.
ThresholdPath estimation_path(const Matrix& entries,
                              const std::vector<double>& thresholds);
ThresholdPath estimation_path(const PartialCorr& pc,
                              const std::vector<double>& thresholds);

// 40 geometrically spaced thresholds from max|entry| down to
// 0.05 * max|entry|. Errors when all off-diagonal entries are zero.
std::vector<double> auto_thresholds(const Matrix& source, std::size_t count = 40,
                                    double min_ratio = 0.05);

} // namespace dcnet
