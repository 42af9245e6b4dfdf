#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dcnet {

// Undirected simple graph on p nodes as a symmetric boolean matrix with an
// empty diagonal.
struct Adjacency {
    std::size_t p = 0;
    std::vector<std::uint8_t> m; // p x p, row-major

    Adjacency() = default;
    explicit Adjacency(std::size_t p_) : p(p_), m(p_ * p_, 0) {}

    bool at(std::size_t i, std::size_t j) const { return m[i * p + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) {
        m[i * p + j] = v ? 1 : 0;
        m[j * p + i] = v ? 1 : 0;
    }

    std::size_t edge_count() const;
    // Unordered pairs (i, j), i < j, ascending lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    bool operator==(const Adjacency& o) const { return p == o.p && m == o.m; }
};

// Number of unordered pairs on which a and b disagree. Errors on p mismatch.
std::size_t hamming_distance(const Adjacency& a, const Adjacency& b);

// Edge-list text: one "i j" per line, 0-based, i < j, ascending. Lines
// starting with '#' are ignored on read.
std::string edge_list_text(const Adjacency& g);
void write_edge_list(const std::string& path, const Adjacency& g);

// Parses an edge list. p is taken from expected_p when given, otherwise
// inferred as max index + 1. Errors on malformed lines, i >= j, or indices
// out of range.
Adjacency read_edge_list(const std::string& path, std::size_t expected_p = 0);

// Graphviz DOT, undirected; node labels from `names` when non-empty else V0..V{p-1}.
std::string dot_text(const Adjacency& g, const std::vector<std::string>& names);
void write_dot(const std::string& path, const Adjacency& g,
               const std::vector<std::string>& names);

} // namespace dcnet
