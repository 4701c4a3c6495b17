#include "rootcensus/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rootcensus/errors.hpp"

namespace rcs {

Graph Graph::from_edges(std::uint32_t n,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    Graph g;
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& [a, b] : edges) {
        require(a < n && b < n, error::code::invalid_argument, "edge endpoint out of range");
        require(a != b, error::code::invalid_argument, "self-loop in edge set");
        ++deg[a];
        ++deg[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(2 * edges.size());
    std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        g.adj_[cursor[a]++] = b;
        g.adj_[cursor[b]++] = a;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        auto* lo = g.adj_.data() + g.offsets_[v];
        auto* hi = g.adj_.data() + g.offsets_[v + 1];
        std::sort(lo, hi);
        require(std::adjacent_find(lo, hi) == hi, error::code::invalid_argument,
                "duplicate edge in edge set");
    }
    return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edge_count());
    for (std::uint32_t v = 0; v < order(); ++v)
        for (std::uint32_t w : neighbors(v))
            if (v < w) out.emplace_back(v, w);
    return out;
}

Graph Graph::relabeled(const std::vector<std::uint32_t>& perm) const {
    require(perm.size() == order(), error::code::invalid_argument, "permutation size mismatch");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> mapped;
    mapped.reserve(edge_count());
    for (const auto& [a, b] : edges()) mapped.emplace_back(perm[a], perm[b]);
    return from_edges(order(), mapped);
}

LoadResult load_edge_list(std::istream& in) {
    LoadResult res;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen; // sorted pairs for dedup
    std::string line;
    std::uint64_t lineno = 0;

    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = ids.emplace(tok, static_cast<std::uint32_t>(res.labels.size()));
        if (inserted) res.labels.push_back(tok);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue; // blank
        if (!(ls >> b) || (ls >> extra))
            fail(error::code::parse,
                 "edge list line " + std::to_string(lineno) + ": expected exactly two tokens");
        const std::uint32_t u = intern(a);
        const std::uint32_t v = intern(b);
        if (u == v) {
            ++res.dropped_self_loops;
            continue;
        }
        edges.emplace_back(u, v);
    }

    // Drop duplicates regardless of orientation.
    for (auto& [a, b] : edges) seen.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(seen.begin(), seen.end());
    const auto unique_end = std::unique(seen.begin(), seen.end());
    res.dropped_duplicates = static_cast<std::uint64_t>(seen.end() - unique_end);
    seen.erase(unique_end, seen.end());

    res.graph = Graph::from_edges(static_cast<std::uint32_t>(res.labels.size()), seen);
    return res;
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), error::code::io, "cannot open edge list: " + path);
    return load_edge_list(in);
}

LoadResult load_edge_list_text(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

} // namespace rcs
