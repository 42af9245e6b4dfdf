#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "dcnet/matrix.hpp"
#include "dcnet/types.hpp"

namespace dcnet {

// CSV ingestion, the price preprocessing steps, and the text writers.
// Numeric output uses 17 significant digits ('%.17g', '.' decimal
// separator), so doubles round-trip exactly.

// Rectangular numeric table. Parse errors cite the 1-based row and column.
// Lines starting with '#' and blank lines are skipped.
Dataset parse_csv(const std::string& text, bool has_header, char delimiter);
Dataset read_csv(const std::string& path, bool has_header, char delimiter);

std::string dataset_csv_text(const Dataset& data, char delimiter = ',');
void write_dataset_csv(const std::string& path, const Dataset& data,
                       char delimiter = ',');

// Full matrix, row-major; header row when names are given.
std::string matrix_csv_text(const Matrix& m,
                            const std::vector<std::string>& names = {},
                            char delimiter = ',');
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& names = {},
                      char delimiter = ',');

// T x p table of strictly positive prices, T >= 2.
struct PriceTable {
    Dataset data;
};

PriceTable as_price_table(Dataset data);

// Output row t = ln(price[t+1] / price[t]); T-1 rows.
Dataset log_ratio_transform(const PriceTable& prices);

// Column-wise (x - mean) / sd with the n-1 denominator. Errors on a
// constant column, naming it.
Dataset standardize(const Dataset& data);

// Column subset preserving request order.
Dataset select_columns(const Dataset& data, const std::vector<std::string>& names);
Dataset select_columns(const Dataset& data, std::size_t first, std::size_t last); // inclusive

// "--select" syntax: "a-b" (all digits) is the inclusive index range;
// otherwise a comma-separated list, of indices when all tokens are digits,
// of column names otherwise.
using ColumnSelection = std::variant<std::pair<std::size_t, std::size_t>,
                                     std::vector<std::size_t>,
                                     std::vector<std::string>>;
ColumnSelection parse_selection(const std::string& spec);
Dataset apply_selection(const Dataset& data, const ColumnSelection& sel);

std::string format_double17(double v);

} // namespace dcnet
