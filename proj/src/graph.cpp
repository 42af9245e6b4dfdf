#include "dcnet/graph.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dcnet/error.hpp"

namespace dcnet {

std::size_t Adjacency::edge_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (at(i, j)) ++count;
    return count;
}

std::vector<std::pair<std::size_t, std::size_t>> Adjacency::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (at(i, j)) out.emplace_back(i, j);
    return out;
}

std::size_t hamming_distance(const Adjacency& a, const Adjacency& b) {
    if (a.p != b.p)
        throw invalid_input("hamming_distance: graphs have " + std::to_string(a.p) +
                            " and " + std::to_string(b.p) + " nodes");
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.p; ++i)
        for (std::size_t j = i + 1; j < a.p; ++j)
            if (a.at(i, j) != b.at(i, j)) ++count;
    return count;
}

std::string edge_list_text(const Adjacency& g) {
    std::string out;
    for (const auto& [i, j] : g.edges()) {
        out += std::to_string(i);
        out += ' ';
        out += std::to_string(j);
        out += '\n';
    }
    return out;
}

void write_edge_list(const std::string& path, const Adjacency& g) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open for writing: " + path);
    f << edge_list_text(g);
}

Adjacency read_edge_list(const std::string& path, std::size_t expected_p) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open edge list: " + path);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t max_index = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long long i = -1, j = -1;
        if (!(ss >> i >> j) || i < 0 || j < 0)
            throw invalid_input(path + ": malformed edge at line " + std::to_string(lineno));
        std::string rest;
        if (ss >> rest)
            throw invalid_input(path + ": trailing content at line " + std::to_string(lineno));
        if (i >= j)
            throw invalid_input(path + ": edge must satisfy i < j at line " +
                                std::to_string(lineno));
        pairs.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        max_index = std::max(max_index, static_cast<std::size_t>(j));
    }

    const std::size_t p = expected_p > 0 ? expected_p : (pairs.empty() ? 0 : max_index + 1);
    if (expected_p > 0 && max_index >= expected_p)
        throw invalid_input(path + ": node index " + std::to_string(max_index) +
                            " out of range for p=" + std::to_string(expected_p));

    Adjacency g(p);
    for (const auto& [i, j] : pairs) g.set(i, j, true);
    return g;
}

namespace {

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string dot_text(const Adjacency& g, const std::vector<std::string>& names) {
    std::string out = "graph G {\n";
    for (std::size_t i = 0; i < g.p; ++i) {
        const std::string label = i < names.size() ? names[i] : "V" + std::to_string(i);
        out += "  " + quote_dot(label) + ";\n";
    }
    for (const auto& [i, j] : g.edges()) {
        const std::string a = i < names.size() ? names[i] : "V" + std::to_string(i);
        const std::string b = j < names.size() ? names[j] : "V" + std::to_string(j);
        out += "  " + quote_dot(a) + " -- " + quote_dot(b) + ";\n";
    }
    out += "}\n";
    return out;
}

void write_dot(const std::string& path, const Adjacency& g,
               const std::vector<std::string>& names) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open for writing: " + path);
    f << dot_text(g, names);
}

} // namespace dcnet
