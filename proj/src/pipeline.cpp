#include "dcnet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dcnet/error.hpp"

namespace dcnet {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == delimiter) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string cell = trim(raw);
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw invalid_input("csv: non-numeric cell '" + cell + "' at row " +
                            std::to_string(row) + ", column " + std::to_string(col));
    if (!std::isfinite(v))
        throw invalid_input("csv: non-finite value at row " + std::to_string(row) +
                            ", column " + std::to_string(col));
    return v;
}

} // namespace

Dataset parse_csv(const std::string& text, bool has_header, char delimiter) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    std::size_t ncols = 0;
    bool header_pending = has_header;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> cells = split(line, delimiter);
        if (header_pending) {
            for (const auto& c : cells) names.push_back(trim(c));
            ncols = names.size();
            header_pending = false;
            continue;
        }
        if (ncols == 0) ncols = cells.size();
        if (cells.size() != ncols)
            throw invalid_input("csv: row " + std::to_string(lineno) + " has " +
                                std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(ncols));
        std::vector<double> row(ncols);
        for (std::size_t c = 0; c < ncols; ++c) row[c] = parse_cell(cells[c], lineno, c + 1);
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw invalid_input("csv: no data rows");

    Dataset data(rows.size(), ncols);
    data.column_names = std::move(names);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t j = 0; j < data.p; ++j) data.at(i, j) = rows[i][j];
    return data;
}

Dataset read_csv(const std::string& path, bool has_header, char delimiter) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open csv: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_csv(ss.str(), has_header, delimiter);
    } catch (const invalid_input& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

std::string dataset_csv_text(const Dataset& data, char delimiter) {
    std::string out;
    if (data.has_names()) {
        for (std::size_t j = 0; j < data.p; ++j) {
            if (j) out += delimiter;
            out += data.column_names[j];
        }
        out += '\n';
    }
    for (std::size_t i = 0; i < data.n; ++i) {
        for (std::size_t j = 0; j < data.p; ++j) {
            if (j) out += delimiter;
            out += format_double17(data.at(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& data, char delimiter) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open for writing: " + path);
    f << dataset_csv_text(data, delimiter);
}

std::string matrix_csv_text(const Matrix& m, const std::vector<std::string>& names,
                            char delimiter) {
    std::string out;
    if (!names.empty()) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out += delimiter;
            out += j < names.size() ? names[j] : "V" + std::to_string(j);
        }
        out += '\n';
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out += delimiter;
            out += format_double17(m.at(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& names, char delimiter) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open for writing: " + path);
    f << matrix_csv_text(m, names, delimiter);
}

PriceTable as_price_table(Dataset data) {
    if (data.n < 2)
        throw invalid_input("price table: need at least 2 time points, got " +
                            std::to_string(data.n));
    for (std::size_t j = 0; j < data.p; ++j) {
        for (std::size_t i = 0; i < data.n; ++i) {
            if (!(data.at(i, j) > 0.0))
                throw invalid_input("price table: nonpositive price at row " +
                                    std::to_string(i) + ", column " + std::to_string(j) +
                                    " (" + data.name_of(j) + ")");
        }
    }
    return PriceTable{std::move(data)};
}

Dataset log_ratio_transform(const PriceTable& prices) {
    const Dataset& src = prices.data;
    Dataset out(src.n - 1, src.p);
    out.column_names = src.column_names;
    for (std::size_t j = 0; j < src.p; ++j) {
        for (std::size_t t = 0; t + 1 < src.n; ++t) {
            out.at(t, j) = std::log(src.at(t + 1, j) / src.at(t, j));
        }
    }
    return out;
}

Dataset standardize(const Dataset& data) {
    Dataset out = data;
    for (std::size_t j = 0; j < data.p; ++j) {
        auto col = out.column(j);
        const double n = static_cast<double>(data.n);

        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= n;
        // second pass picks up the round-off left by the first
        double correction = 0.0;
        for (double v : col) correction += v - mean;
        mean += correction / n;

        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double var = ss / (n - 1.0);
        if (!(var > 0.0))
            throw invalid_input("standardize: column " + std::to_string(j) + " (" +
                                data.name_of(j) + ") is constant");
        const double sd = std::sqrt(var);
        for (double& v : col) v = (v - mean) / sd;
    }
    return out;
}

Dataset select_columns(const Dataset& data, const std::vector<std::string>& names) {
    if (names.empty()) throw invalid_input("select_columns: empty selection");
    if (!data.has_names())
        throw invalid_input("select_columns: dataset has no column names");
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
        const auto it =
            std::find(data.column_names.begin(), data.column_names.end(), name);
        if (it == data.column_names.end())
            throw invalid_input("select_columns: unknown column '" + name + "'");
        idx.push_back(static_cast<std::size_t>(it - data.column_names.begin()));
    }
    Dataset out(data.n, idx.size());
    out.column_names.reserve(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        out.column_names.push_back(data.column_names[idx[k]]);
        const auto src = data.column(idx[k]);
        auto dst = out.column(k);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

Dataset select_columns(const Dataset& data, std::size_t first, std::size_t last) {
    if (first > last || last >= data.p)
        throw invalid_input("select_columns: index range " + std::to_string(first) + "-" +
                            std::to_string(last) + " invalid for p=" +
                            std::to_string(data.p));
    Dataset out(data.n, last - first + 1);
    if (data.has_names())
        out.column_names.assign(data.column_names.begin() + first,
                                data.column_names.begin() + last + 1);
    for (std::size_t k = 0; k <= last - first; ++k) {
        const auto src = data.column(first + k);
        auto dst = out.column(k);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace

ColumnSelection parse_selection(const std::string& spec) {
    if (spec.empty()) throw invalid_input("selection: empty spec");

    auto to_index = [](const std::string& s) -> std::size_t {
        try {
            return std::stoul(s);
        } catch (const std::exception&) {
            throw invalid_input("selection: index '" + s + "' out of range");
        }
    };

    const std::size_t dash = spec.find('-');
    if (dash != std::string::npos && dash > 0 && all_digits(spec.substr(0, dash)) &&
        all_digits(spec.substr(dash + 1))) {
        return std::make_pair(to_index(spec.substr(0, dash)),
                              to_index(spec.substr(dash + 1)));
    }

    std::vector<std::string> tokens;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            tokens.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    tokens.push_back(trim(cur));
    for (const auto& t : tokens)
        if (t.empty()) throw invalid_input("selection: empty token in '" + spec + "'");

    if (std::all_of(tokens.begin(), tokens.end(), all_digits)) {
        std::vector<std::size_t> idx;
        for (const auto& t : tokens) idx.push_back(to_index(t));
        return idx;
    }
    return tokens;
}

Dataset apply_selection(const Dataset& data, const ColumnSelection& sel) {
    if (const auto* range = std::get_if<std::pair<std::size_t, std::size_t>>(&sel))
        return select_columns(data, range->first, range->second);
    if (const auto* idx = std::get_if<std::vector<std::size_t>>(&sel)) {
        if (idx->empty()) throw invalid_input("select_columns: empty selection");
        Dataset out(data.n, idx->size());
        for (std::size_t k = 0; k < idx->size(); ++k) {
            const std::size_t j = (*idx)[k];
            if (j >= data.p)
                throw invalid_input("select_columns: index " + std::to_string(j) +
                                    " out of range for p=" + std::to_string(data.p));
            if (data.has_names()) out.column_names.push_back(data.column_names[j]);
            const auto src = data.column(j);
            auto dst = out.column(k);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        return out;
    }
    return select_columns(data, std::get<std::vector<std::string>>(sel));
}

} // namespace dcnet
