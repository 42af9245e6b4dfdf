#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace dcnet {

// Dense square/rectangular matrix of doubles, row-major.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    bool square() const { return rows == cols; }
};

Matrix matmul(const Matrix& a, const Matrix& b);

// LU factorization with partial pivoting. A pivot is treated as zero when
// its magnitude falls below 1e-12 relative to the largest |diagonal| entry
// of the input.
struct LuFactors {
    std::size_t n = 0;
    std::vector<double> lu;      // combined L\U, row-major
    std::vector<std::size_t> perm;
    int sign = 1;                // permutation sign
    double smallest_pivot = 0.0; // min |pivot| encountered
    bool singular = false;       // some pivot below tolerance
};

LuFactors lu_factor(const Matrix& m);

struct InvertResult {
    Matrix inverse;
    double ridge_applied = 0.0;  // the epsilon actually added, 0 if none
};

// Inverse of r, falling back to (r + eps*I)^-1 with eps doubling from
// ridge_step up to ridge_max when r is numerically singular. Throws
// numeric_error (with the smallest pivot seen) when every level fails.
InvertResult invert(const Matrix& r, double ridge_step, double ridge_max);

// Natural log of |det(m)| via LU; nullopt marks a numerically singular
// matrix (a below-tolerance pivot, or |det| under 1e-300).
std::optional<double> log_det(const Matrix& m);

} // namespace dcnet
