#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dcnet {

// n observations of p variables. Stored column-major so each variable is a
// contiguous span, which is what the distance-correlation kernels consume.
struct Dataset {
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<double> values;             // size n*p, column j at [j*n, (j+1)*n)
    std::vector<std::string> column_names;  // empty or size p

    Dataset() = default;
    Dataset(std::size_t n_, std::size_t p_)
        : n(n_), p(p_), values(n_ * p_, 0.0) {}

    double& at(std::size_t row, std::size_t col) { return values[col * n + row]; }
    double at(std::size_t row, std::size_t col) const { return values[col * n + row]; }

    std::span<const double> column(std::size_t j) const {
        return {values.data() + j * n, n};
    }
    std::span<double> column(std::size_t j) {
        return {values.data() + j * n, n};
    }

    bool has_names() const { return !column_names.empty(); }
    std::string name_of(std::size_t j) const {
        return has_names() ? column_names[j] : "V" + std::to_string(j);
    }
};

// Throws invalid_input unless every entry is finite, naming the first
// offending index. `label` identifies the sample in the message.
void validate_sample(std::span<const double> x, const std::string& label);

// Dataset invariants: n >= 2, p >= 2, finite entries, label count matches.
void validate_dataset(const Dataset& data);

} // namespace dcnet
