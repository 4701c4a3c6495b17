#pragma once

// Test-only brute-force oracles, independent of the library's counting
// path: rooted counts by vertex-subset enumeration against labeled copy
// masks, balance parameters by edge-subset search, and seeded random
// graphs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rootcensus/graph.hpp"
#include "rootcensus/motif.hpp"
#include "rootcensus/rational.hpp"
#include "rootcensus/rng.hpp"

namespace oracle {

inline int pair_bit(int a, int b, int k) { return a * (2 * k - a - 1) / 2 + (b - a - 1); }

// Distinct labeled rooted copies of f on labels {0..|F|-1}, root 0, as
// edge masks: every relabeling of the non-root vertices, deduplicated.
inline std::vector<std::uint64_t> labeled_copy_masks(const rcs::RootedMotif& f) {
    const int k = f.order();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> out;
    do {
        std::uint64_t mask = 0;
        for (const auto& [a, b] : f.edges()) {
            int u = perm[a], v = perm[b];
            if (u > v) std::swap(u, v);
            mask |= 1ull << pair_bit(u, v, k);
        }
        out.push_back(mask);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// X_F(G, root): for every vertex subset S of size |F| containing the root,
// count the labeled copies whose edges all lie in G[S]. Connected motifs
// touch all |F| labels, so each subgraph is counted exactly once, at its
// own vertex set.
inline std::int64_t rooted_count(const rcs::Graph& g, std::uint32_t root,
                                 const rcs::RootedMotif& f) {
    const int k = f.order();
    const std::uint32_t n = g.order();
    if (n < static_cast<std::uint32_t>(k)) return 0;
    const auto copies = labeled_copy_masks(f);

    std::vector<std::uint32_t> others;
    for (std::uint32_t v = 0; v < n; ++v)
        if (v != root) others.push_back(v);
    const int m = static_cast<int>(others.size());

    std::vector<std::uint32_t> subset(k);
    subset[0] = root;
    std::vector<int> pick(k - 1);
    std::iota(pick.begin(), pick.end(), 0);

    std::int64_t total = 0;
    for (;;) {
        for (int i = 0; i < k - 1; ++i) subset[i + 1] = others[pick[i]];
        std::uint64_t induced = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (g.has_edge(subset[a], subset[b])) induced |= 1ull << pair_bit(a, b, k);
        for (const std::uint64_t copy : copies)
            if ((copy & ~induced) == 0) ++total;

        int i = k - 2;
        while (i >= 0 && pick[i] == m - (k - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return total;
}

// Balance parameter over all edge subsets (not only induced), to
// cross-check the induced-subset maximization.
inline rcs::Rational balance_over_edge_subsets(const rcs::RootedMotif& f, bool with_root) {
    const auto& edges = f.edges();
    const int e = static_cast<int>(edges.size());
    rcs::Rational best(0, 1);
    for (std::uint32_t mask = 1; mask < (1u << e); ++mask) {
        std::uint32_t verts = 0;
        int count = 0;
        for (int t = 0; t < e; ++t)
            if (mask >> t & 1u) {
                verts |= 1u << edges[t].first;
                verts |= 1u << edges[t].second;
                ++count;
            }
        const bool has_root = verts & 1u;
        if (with_root != has_root) continue;
        const int size = __builtin_popcount(verts);
        if (size < 2) continue;
        const rcs::Rational r(count, size - 1);
        if (best < r) best = r;
    }
    return best;
}

inline rcs::Graph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
    rcs::Rng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return rcs::Graph::from_edges(n, edges);
}

} // namespace oracle
