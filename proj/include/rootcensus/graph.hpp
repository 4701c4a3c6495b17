#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rcs {

// Undirected simple graph, contiguous vertex ids, sorted adjacency (CSR).
// Immutable after construction; shared read access is safe.
class Graph {
public:
    Graph() = default;

    // Edges may be in any order but must be valid: endpoints < n, no
    // self-loops, no duplicates (use load_edge_list for dirty input).
    static Graph from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    std::uint32_t order() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
    std::uint64_t edge_count() const { return adj_.size() / 2; }

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    // e(K_n) for this graph's order.
    std::uint64_t complete_edge_count() const {
        const std::uint64_t n = order();
        return n * (n - 1) / 2;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

    // Same graph with vertex v renamed perm[v].
    Graph relabeled(const std::vector<std::uint32_t>& perm) const;

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> adj_;
};

struct LoadResult {
    Graph graph;
    std::vector<std::string> labels;     // original token per vertex id
    std::uint64_t dropped_duplicates = 0;
    std::uint64_t dropped_self_loops = 0;
};

// Edge-list text: one edge per line, two whitespace-separated tokens,
// '#' comment lines and blank lines ignored. Vertices are remapped to
// 0..n-1 in order of first appearance; duplicate edges and self-loops are
// dropped and counted.
LoadResult load_edge_list(std::istream& in);
LoadResult load_edge_list_file(const std::string& path);
LoadResult load_edge_list_text(const std::string& text);

void write_edge_list(const Graph& g, std::ostream& out);

} // namespace rcs
