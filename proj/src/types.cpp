#include "dcnet/types.hpp"

#include <cmath>

#include "dcnet/error.hpp"

namespace dcnet {

void validate_sample(std::span<const double> x, const std::string& label) {
    if (x.size() < 2)
        throw invalid_input(label + ": sample length must be >= 2, got " +
                            std::to_string(x.size()));
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!std::isfinite(x[k]))
            throw invalid_input(label + ": non-finite value at index " +
                                std::to_string(k));
    }
}

void validate_dataset(const Dataset& data) {
    if (data.n < 2 || data.p < 2)
        throw invalid_input("dataset: need n >= 2 and p >= 2, got n=" +
                            std::to_string(data.n) + " p=" + std::to_string(data.p));
    if (data.has_names() && data.column_names.size() != data.p)
        throw invalid_input("dataset: " + std::to_string(data.column_names.size()) +
                            " column names for " + std::to_string(data.p) + " columns");
    for (std::size_t j = 0; j < data.p; ++j) {
        const auto col = data.column(j);
        for (std::size_t i = 0; i < data.n; ++i) {
            if (!std::isfinite(col[i]))
                throw invalid_input("dataset: non-finite value at row " +
                                    std::to_string(i) + ", column " + std::to_string(j));
        }
    }
}

} // namespace dcnet
