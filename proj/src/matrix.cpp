#include "dcnet/matrix.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dcnet/error.hpp"

namespace dcnet {

namespace {

constexpr double kRelativePivotTol = 1e-12;

double max_abs_diagonal(const Matrix& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) d = std::max(d, std::abs(m.at(i, i)));
    return d;
}

} // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw invalid_input("matmul: inner dimensions differ");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

LuFactors lu_factor(const Matrix& m) {
    if (!m.square()) throw invalid_input("lu_factor: matrix must be square");
    const std::size_t n = m.rows;
    const double tol = kRelativePivotTol * std::max(max_abs_diagonal(m), 1e-300);

    LuFactors f;
    f.n = n;
    f.lu = m.values;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    f.smallest_pivot = std::numeric_limits<double>::infinity();

    auto lu = [&](std::size_t i, std::size_t j) -> double& { return f.lu[i * n + j]; };

    for (std::size_t k = 0; k < n; ++k) {
        // partial pivoting on column k
        std::size_t pivot_row = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                pivot_row = i;
            }
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot_row, j));
            std::swap(f.perm[k], f.perm[pivot_row]);
            f.sign = -f.sign;
        }
        const double pivot = lu(k, k);
        f.smallest_pivot = std::min(f.smallest_pivot, std::abs(pivot));
        if (std::abs(pivot) < tol) {
            f.singular = true;
            continue; // keep scanning so smallest_pivot reflects the whole sweep
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mult = lu(i, k) / pivot;
            lu(i, k) = mult;
            if (mult == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= mult * lu(k, j);
        }
    }
    return f;
}

namespace {

// Solve LU x = P b for one right-hand side (unit column `col`), writing the
// result into column `col` of `out`.
void solve_identity_column(const LuFactors& f, std::size_t col, Matrix& out) {
    const std::size_t n = f.n;
    std::vector<double> x(n, 0.0);
    // forward: L y = P e_col
    for (std::size_t i = 0; i < n; ++i) {
        double v = (f.perm[i] == col) ? 1.0 : 0.0;
        for (std::size_t j = 0; j < i; ++j) v -= f.lu[i * n + j] * x[j];
        x[i] = v;
    }
    // backward: U x = y
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double v = x[i];
        for (std::size_t j = i + 1; j < n; ++j) v -= f.lu[i * n + j] * x[j];
        x[i] = v / f.lu[i * n + i];
    }
    for (std::size_t i = 0; i < n; ++i) out.at(i, col) = x[i];
}

Matrix inverse_from_factors(const LuFactors& f) {
    Matrix inv(f.n, f.n);
    for (std::size_t col = 0; col < f.n; ++col) solve_identity_column(f, col, inv);
    return inv;
}

} // namespace

InvertResult invert(const Matrix& r, double ridge_step, double ridge_max) {
    if (!r.square()) throw invalid_input("invert: matrix must be square");
    if (!(ridge_step > 0.0) || !(ridge_step < ridge_max))
        throw invalid_input("invert: need 0 < ridge_step < ridge_max");

    LuFactors bare = lu_factor(r);
    if (!bare.singular) return {inverse_from_factors(bare), 0.0};

    for (double eps = ridge_step; eps <= ridge_max; eps *= 2.0) {
        Matrix ridged = r;
        for (std::size_t i = 0; i < r.rows; ++i) ridged.at(i, i) += eps;
        LuFactors f = lu_factor(ridged);
        if (!f.singular) return {inverse_from_factors(f), eps};
    }
    throw numeric_error("invert: matrix singular at every ridge level up to " +
                        std::to_string(ridge_max) + " (smallest pivot " +
                        std::to_string(bare.smallest_pivot) + ")");
}

std::optional<double> log_det(const Matrix& m) {
    if (!m.square()) throw invalid_input("log_det: matrix must be square");
    const LuFactors f = lu_factor(m);
    if (f.singular) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        const double pivot = std::abs(f.lu[i * f.n + i]);
        if (pivot == 0.0) return std::nullopt;
        sum += std::log(pivot);
    }
    if (sum < std::log(1e-300)) return std::nullopt;
    return sum;
}

} // namespace dcnet
