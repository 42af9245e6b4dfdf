#include "dcnet/dcor.hpp"

#include <cmath>
#include <string>

#include "dcnet/error.hpp"

namespace dcnet {

namespace {

// Round-off clamp for the nu^2 sums, which are nonnegative in exact
// arithmetic. A value at or below -1e-12 signals a real bug, not round-off.
double clamp_nu2(double v, const char* what) {
    if (v >= 0.0) return v;
    if (v > -1e-12) return 0.0;
    throw numeric_error(std::string(what) + " = " + std::to_string(v) +
                        " is negative beyond round-off tolerance");
}

} // namespace

DistanceMatrix pairwise_distances(std::span<const double> x) {
    validate_sample(x, "pairwise_distances");
    const std::size_t n = x.size();
    DistanceMatrix d;
    d.n = n;
    d.entries.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const double v = std::abs(x[k] - x[l]);
            d.entries[k * n + l] = v;
            d.entries[l * n + k] = v;
        }
    }
    return d;
}

CenteredDistances double_center(const DistanceMatrix& d) {
    const std::size_t n = d.n;
    CenteredDistances c;
    c.n = n;
    c.entries.assign(n * n, 0.0);
    c.row_means.assign(n, 0.0);

    for (std::size_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < n; ++l) sum += d.entries[k * n + l];
        c.row_means[k] = sum / static_cast<double>(n);
    }
    double grand = 0.0;
    for (std::size_t k = 0; k < n; ++k) grand += c.row_means[k];
    c.grand_mean = grand / static_cast<double>(n);

    // row means equal column means: univariate distances are symmetric
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            c.entries[k * n + l] =
                d.entries[k * n + l] - c.row_means[k] - c.row_means[l] + c.grand_mean;
        }
    }
    return c;
}

double dcov2(const CenteredDistances& a, const CenteredDistances& b) {
    if (a.n != b.n)
        throw invalid_input("dcov2: sample sizes must be equal, got " +
                            std::to_string(a.n) + " and " + std::to_string(b.n));
    const std::size_t n = a.n;
    // canonical order: row-major over k, then l
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            sum += a.entries[k * n + l] * b.entries[k * n + l];
        }
    }
    return sum / (static_cast<double>(n) * static_cast<double>(n));
}

DcovResult assemble_dcov_result(double nu2_xy, double nu2_x, double nu2_y) {
    DcovResult res;
    res.dcov2 = clamp_nu2(nu2_xy, "dcov2(x,y)");
    res.dvar_x2 = clamp_nu2(nu2_x, "dvar2(x)");
    res.dvar_y2 = clamp_nu2(nu2_y, "dvar2(y)");

    // dcor = nu_xy / sqrt(nu_x * nu_y), the square root of R^2; written this
    // way so dcor(x, x) evaluates to exactly 1.
    const double nu_x = std::sqrt(res.dvar_x2);
    const double nu_y = std::sqrt(res.dvar_y2);
    const double denom2 = nu_x * nu_y;
    if (denom2 > 0.0) {
        res.dcor = std::sqrt(res.dcov2) / std::sqrt(denom2);
        if (res.dcor > 1.0) res.dcor = 1.0;
        if (res.dcor < 0.0) res.dcor = 0.0;
    } else {
        res.dcor = 0.0;
    }
    return res;
}

DcovResult dcor(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, "dcor: x");
    validate_sample(y, "dcor: y");
    if (x.size() != y.size())
        throw invalid_input("dcor: sample sizes must be equal, got " +
                            std::to_string(x.size()) + " and " + std::to_string(y.size()));

    const CenteredDistances a = double_center(pairwise_distances(x));
    const CenteredDistances b = double_center(pairwise_distances(y));
    return assemble_dcov_result(dcov2(a, b), dcov2(a, a), dcov2(b, b));
}

RowStats distance_row_stats(std::span<const double> x) {
    const std::size_t n = x.size();
    RowStats s;
    s.row_means.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const double w = std::abs(x[k] - x[l]);
            s.row_means[k] += w;
            s.row_means[l] += w;
        }
    }
    for (std::size_t k = 0; k < n; ++k) s.row_means[k] /= static_cast<double>(n);
    double grand = 0.0;
    for (std::size_t k = 0; k < n; ++k) grand += s.row_means[k];
    s.grand_mean = grand / static_cast<double>(n);
    return s;
}

double dcov2_from_stats(std::span<const double> x, std::span<const double> y,
                        const RowStats& sx, const RowStats& sy) {
    const std::size_t n = x.size();
    // Each unordered pair once, doubled; the diagonal terms A_kk = gm - 2*rm_k
    // do not vanish and are added separately.
    double off = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            const double ax = std::abs(x[k] - x[l]) - sx.row_means[k] - sx.row_means[l] +
                              sx.grand_mean;
            const double by = std::abs(y[k] - y[l]) - sy.row_means[k] - sy.row_means[l] +
                              sy.grand_mean;
            off += ax * by;
        }
    }
    double diag = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ax = sx.grand_mean - 2.0 * sx.row_means[k];
        const double by = sy.grand_mean - 2.0 * sy.row_means[k];
        diag += ax * by;
    }
    return (2.0 * off + diag) / (static_cast<double>(n) * static_cast<double>(n));
}

DcovResult dcor_fast(std::span<const double> x, std::span<const double> y) {
    validate_sample(x, "dcor_fast: x");
    validate_sample(y, "dcor_fast: y");
    if (x.size() != y.size())
        throw invalid_input("dcor_fast: sample sizes must be equal, got " +
                            std::to_string(x.size()) + " and " + std::to_string(y.size()));

    const RowStats sx = distance_row_stats(x);
    const RowStats sy = distance_row_stats(y);
    return assemble_dcov_result(dcov2_from_stats(x, y, sx, sy),
                                dcov2_from_stats(x, x, sx, sx),
                                dcov2_from_stats(y, y, sy, sy));
}

} // namespace dcnet
