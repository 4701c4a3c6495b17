#include "rootcensus/louvain.hpp"

#include <algorithm>
#include <unordered_map>

#include "rootcensus/errors.hpp"
#include "rootcensus/rng.hpp"

namespace rcs {
namespace {

constexpr double kMinGain = 1e-12;

// Weighted graph for the aggregation phase; self-loops carry the internal
// weight of collapsed communities.
struct WGraph {
    std::vector<std::vector<std::pair<int, double>>> adj; // (neighbor, weight), no self entries
    std::vector<double> self_loop;
    std::vector<double> strength; // incident weight, self loops counted twice
    double total_weight = 0.0;    // m

    int order() const { return static_cast<int>(adj.size()); }
};

WGraph from_graph(const Graph& g) {
    WGraph w;
    w.adj.resize(g.order());
    w.self_loop.assign(g.order(), 0.0);
    w.strength.assign(g.order(), 0.0);
    for (std::uint32_t v = 0; v < g.order(); ++v) {
        for (std::uint32_t u : g.neighbors(v)) w.adj[v].emplace_back(static_cast<int>(u), 1.0);
        w.strength[v] = static_cast<double>(g.degree(v));
    }
    w.total_weight = static_cast<double>(g.edge_count());
    return w;
}

// Local moving pass over vertices in a seeded shuffle of id order. A vertex
// moves only on a strict modularity gain; candidates are scanned in
// ascending community id, so ties resolve deterministically.
bool local_moving(const WGraph& g, std::vector<int>& comm, Rng& rng) {
    const int n = g.order();
    const double m2 = 2.0 * g.total_weight;
    std::vector<double> comm_strength(n, 0.0);
    for (int v = 0; v < n; ++v) comm_strength[comm[v]] += g.strength[v];

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1))]);

    std::vector<double> link(n, 0.0);
    std::vector<int> touched;
    bool any_move = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int idx = 0; idx < n; ++idx) {
            const int v = order[idx];
            const int from = comm[v];
            touched.clear();
            for (const auto& [u, w] : g.adj[v]) {
                const int c = comm[u];
                if (link[c] == 0.0) touched.push_back(c);
                link[c] += w;
            }
            std::sort(touched.begin(), touched.end());
            comm_strength[from] -= g.strength[v];
            // Modularity gain of placing isolated v into community c.
            auto gain = [&](int c) {
                return link[c] / g.total_weight -
                       g.strength[v] * comm_strength[c] / (m2 * g.total_weight);
            };
            int best = from;
            double best_gain = gain(from);
            for (int c : touched) {
                if (c == from) continue;
                const double gn = gain(c);
                if (gn > best_gain + kMinGain) {
                    best_gain = gn;
                    best = c;
                }
            }
            comm_strength[best] += g.strength[v];
            if (best != from) {
                comm[v] = best;
                improved = true;
                any_move = true;
            }
            link[from] = 0.0;
            for (int c : touched) link[c] = 0.0;
        }
    }
    return any_move;
}

WGraph aggregate(const WGraph& g, const std::vector<int>& comm, int k) {
    WGraph agg;
    agg.adj.resize(k);
    agg.self_loop.assign(k, 0.0);
    agg.strength.assign(k, 0.0);
    std::vector<std::unordered_map<int, double>> acc(k);
    for (int v = 0; v < g.order(); ++v) {
        const int cv = comm[v];
        agg.self_loop[cv] += g.self_loop[v];
        for (const auto& [u, w] : g.adj[v]) {
            const int cu = comm[u];
            if (cu == cv)
                agg.self_loop[cv] += w / 2.0; // internal edges visited from both ends
            else
                acc[cv][cu] += w;
        }
    }
    for (int c = 0; c < k; ++c) {
        agg.adj[c].assign(acc[c].begin(), acc[c].end());
        std::sort(agg.adj[c].begin(), agg.adj[c].end());
        double s = 2.0 * agg.self_loop[c];
        for (const auto& [u, w] : agg.adj[c]) s += w;
        agg.strength[c] = s;
        agg.total_weight += agg.self_loop[c];
        for (const auto& [u, w] : agg.adj[c]) agg.total_weight += w / 2.0;
    }
    return agg;
}

std::vector<int> renumber(std::vector<int> labels) {
    std::unordered_map<int, int> map;
    for (int& l : labels) {
        auto [it, inserted] = map.emplace(l, static_cast<int>(map.size()));
        l = it->second;
    }
    return labels;
}

} // namespace

double modularity(const Graph& g, const std::vector<int>& labels) {
    require(labels.size() == g.order(), error::code::invalid_argument, "label size mismatch");
    const double m = static_cast<double>(g.edge_count());
    require(m > 0, error::code::domain, "modularity of an empty graph");
    const int k = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<double> internal(k, 0.0), degree_sum(k, 0.0);
    for (std::uint32_t v = 0; v < g.order(); ++v) {
        degree_sum[labels[v]] += g.degree(v);
        for (std::uint32_t u : g.neighbors(v))
            if (labels[u] == labels[v]) internal[labels[v]] += 0.5;
    }
    double q = 0.0;
    for (int c = 0; c < k; ++c) {
        const double frac = degree_sum[c] / (2.0 * m);
        q += internal[c] / m - frac * frac;
    }
    return q;
}

LouvainResult louvain(const Graph& g, std::uint64_t seed) {
    require(g.edge_count() >= 1, error::code::domain, "community detection needs edges");
    Rng rng(derive_seed(seed, 0x6c6f7576ULL));

    WGraph level = from_graph(g);
    std::vector<int> membership(g.order());
    for (std::uint32_t v = 0; v < g.order(); ++v) membership[v] = static_cast<int>(v);

    for (int rounds = 0; rounds < 64; ++rounds) {
        std::vector<int> comm(level.order());
        for (int v = 0; v < level.order(); ++v) comm[v] = v;
        const bool moved = local_moving(level, comm, rng);
        comm = renumber(std::move(comm));
        const int k = *std::max_element(comm.begin(), comm.end()) + 1;
        for (auto& m : membership) m = comm[m];
        if (!moved || k == level.order()) break;
        level = aggregate(level, comm, k);
    }

    LouvainResult res;
    res.labels = renumber(std::move(membership));
    res.k = *std::max_element(res.labels.begin(), res.labels.end()) + 1;
    res.modularity = modularity(g, res.labels);
    return res;
}

} // namespace rcs
