#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcnet/types.hpp"

namespace dcnet {

// Sample distance covariance / correlation for pairs of univariate samples.
//
// Two routes are provided:
//   * dcor()      — the definitional path: materialize the n x n distance
//                   matrices, double-center them, sum products. Serial, kept
//                   as the reference implementation for testing.
//   * dcor_fast() — the simplified path: only per-row distance means and the
//                   grand mean are kept (O(n) memory), each unordered pair
//                   is visited once. Agrees with dcor() to 1e-10.
//
// Both fix a canonical summation order, so results are bitwise reproducible
// and safe to compute concurrently at the pair level.

struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> entries; // n x n, row-major, symmetric, zero diagonal

    double at(std::size_t k, std::size_t l) const { return entries[k * n + l]; }
};

struct CenteredDistances {
    std::size_t n = 0;
    std::vector<double> entries;   // A_kl, row-major
    std::vector<double> row_means; // mean of row k of the distance matrix
    double grand_mean = 0.0;

    double at(std::size_t k, std::size_t l) const { return entries[k * n + l]; }
};

struct DcovResult {
    double dcov2 = 0.0;   // squared sample distance covariance
    double dvar_x2 = 0.0; // squared sample distance variance of x
    double dvar_y2 = 0.0; // squared sample distance variance of y
    double dcor = 0.0;    // in [0, 1]; 0 when dvar_x2 * dvar_y2 == 0
};

// Per-row means and grand mean of the distance matrix of x, without
// materializing it. Backbone of the fast path.
struct RowStats {
    std::vector<double> row_means;
    double grand_mean = 0.0;
};

// entries[k][l] = |x_k - x_l|. Errors on non-finite values or n < 2.
DistanceMatrix pairwise_distances(std::span<const double> x);

// A_kl = d_kl - rowMean_k - rowMean_l + grandMean.
CenteredDistances double_center(const DistanceMatrix& d);

// (1/n^2) sum_{k,l} A_kl * B_kl in row-major order. Errors on size mismatch.
double dcov2(const CenteredDistances& a, const CenteredDistances& b);

// Definitional path. Errors on length mismatch, n < 2, non-finite input.
DcovResult dcor(std::span<const double> x, std::span<const double> y);

// Simplified path, same contract and result (within 1e-10) as dcor().
DcovResult dcor_fast(std::span<const double> x, std::span<const double> y);

// Pieces of the fast path, exposed so the matrix assembly can reuse the
// per-column stats across pairs. No input validation here.
RowStats distance_row_stats(std::span<const double> x);
double dcov2_from_stats(std::span<const double> x, std::span<const double> y,
                        const RowStats& sx, const RowStats& sy);

// Shared tail of both routes: clamps round-off negatives in the nu^2 sums
// (values <= -1e-12 raise numeric_error), applies the degenerate branch, and
// computes dcor = nu_xy / sqrt(nu_x * nu_y), clamped to [0, 1].
DcovResult assemble_dcov_result(double nu2_xy, double nu2_x, double nu2_y);

} // namespace dcnet
