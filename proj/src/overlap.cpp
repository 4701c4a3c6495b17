#include "rootcensus/overlap.hpp"

#include <algorithm>
#include <cstring>
#include <optional>
#include <unordered_map>

#include "rootcensus/census.hpp"
#include "rootcensus/errors.hpp"

namespace rcs {
namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Edge masks over K_W, W <= 10: bit index of pair (a,b), a < b.
int pair_bit(int a, int b, int w) { return a * (2 * w - a - 1) / 2 + (b - a - 1); }

EdgeList mask_to_edges(std::uint64_t mask, int w) {
    EdgeList out;
    for (int a = 0; a < w; ++a)
        for (int b = a + 1; b < w; ++b)
            if (mask >> pair_bit(a, b, w) & 1u) out.emplace_back(a, b);
    return out;
}

// All distinct rooted copies of f in K_w rooted at 0, as edge masks.
std::vector<std::uint64_t> copies_in_complete(const RootedMotif& f, int w) {
    const int k = f.order();
    std::vector<int> image(k);
    image[0] = 0;
    std::vector<char> used(w, 0);
    used[0] = 1;
    std::vector<std::uint64_t> out;

    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            std::uint64_t mask = 0;
            for (const auto& [a, b] : f.edges()) {
                int u = image[a], v = image[b];
                if (u > v) std::swap(u, v);
                mask |= 1ull << pair_bit(u, v, w);
            }
            out.push_back(mask);
            return;
        }
        for (int cand = 1; cand < w; ++cand) {
            if (used[cand]) continue;
            used[cand] = 1;
            image[depth] = cand;
            self(self, depth + 1);
            used[cand] = 0;
        }
    };
    rec(rec, 1);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct CompactShape {
    int order = 0;
    EdgeList edges;            // compact labels, root 0
    std::vector<int> deg;      // per vertex
    std::vector<int> dist;     // from root
};

CompactShape compact_union(std::uint64_t mask, int w) {
    // Touched vertices: root plus every edge endpoint.
    std::vector<int> label(w, -1);
    label[0] = 0;
    int next = 1;
    EdgeList raw = mask_to_edges(mask, w);
    for (const auto& [a, b] : raw) {
        if (label[a] < 0) label[a] = next++;
        if (label[b] < 0) label[b] = next++;
    }
    CompactShape s;
    s.order = next;
    for (const auto& [a, b] : raw) {
        int u = label[a], v = label[b];
        if (u > v) std::swap(u, v);
        s.edges.emplace_back(u, v);
    }
    std::sort(s.edges.begin(), s.edges.end());
    s.deg.assign(s.order, 0);
    std::vector<std::vector<int>> adj(s.order);
    for (const auto& [a, b] : s.edges) {
        ++s.deg[a];
        ++s.deg[b];
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    s.dist.assign(s.order, -1);
    std::vector<int> queue{0};
    s.dist[0] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (int nb : adj[queue[qi]])
            if (s.dist[nb] < 0) {
                s.dist[nb] = s.dist[queue[qi]] + 1;
                queue.push_back(nb);
            }
    return s;
}

std::uint64_t invariant_key(const CompactShape& s) {
    std::vector<std::uint32_t> items;
    items.push_back(static_cast<std::uint32_t>(s.order));
    items.push_back(static_cast<std::uint32_t>(s.edges.size()));
    items.push_back(static_cast<std::uint32_t>(s.deg[0]));
    std::vector<std::uint32_t> pairs;
    for (int v = 1; v < s.order; ++v)
        pairs.push_back(static_cast<std::uint32_t>(s.deg[v] * 64 + s.dist[v]));
    std::sort(pairs.begin(), pairs.end());
    items.insert(items.end(), pairs.begin(), pairs.end());
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint32_t x : items) h = (h ^ x) * 0x100000001b3ULL;
    return h;
}

// Exact root-preserving isomorphism test on compact shapes.
bool rooted_isomorphic(const CompactShape& a, const CompactShape& b) {
    if (a.order != b.order || a.edges.size() != b.edges.size()) return false;
    const int n = a.order;
    std::vector<std::uint32_t> adj_a(n, 0), adj_b(n, 0);
    for (const auto& [u, v] : a.edges) { adj_a[u] |= 1u << v; adj_a[v] |= 1u << u; }
    for (const auto& [u, v] : b.edges) { adj_b[u] |= 1u << v; adj_b[v] |= 1u << u; }

    std::vector<int> image(n, -1);
    std::vector<char> taken(n, 0);
    image[0] = 0;
    taken[0] = 1;

    // Map vertices of `a` in index order; candidate must match degree and
    // root distance and agree with all previously mapped adjacencies.
    std::vector<int> cand_at(n, 0);
    int v = 1;
    while (v >= 1) {
        if (v == n) return true;
        bool advanced = false;
        for (int& c = cand_at[v]; c < n;) {
            const int cand = c++;
            if (taken[cand] || a.deg[v] != b.deg[cand] || a.dist[v] != b.dist[cand]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (((adj_a[v] >> u) & 1u) != ((adj_b[cand] >> image[u]) & 1u)) ok = false;
            if (!ok) continue;
            image[v] = cand;
            taken[cand] = 1;
            ++v;
            if (v < n) cand_at[v] = 0;
            advanced = true;
            break;
        }
        if (!advanced) {
            --v;
            if (v >= 1) { taken[image[v]] = 0; image[v] = -1; }
        }
    }
    return false;
}

Graph graph_from_motif(const RootedMotif& m) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& [a, b] : m.edges())
        edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    return Graph::from_edges(static_cast<std::uint32_t>(m.order()), edges);
}

void sort_entries(std::vector<OverlapEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const OverlapEntry& x, const OverlapEntry& y) {
        if (x.shape.order() != y.shape.order()) return x.shape.order() > y.shape.order();
        if (x.shape.edge_count() != y.shape.edge_count())
            return x.shape.edge_count() > y.shape.edge_count();
        return y.shape < x.shape;
    });
}

} // namespace

const OverlapEntry& OverlapSet::gluing() const {
    const int w = f1.order() + f2.order() - 1;
    const int e = f1.edge_count() + f2.edge_count();
    for (const auto& entry : entries)
        if (entry.shape.order() == w && entry.shape.edge_count() == e) return entry;
    fail(error::code::internal, "overlap set is missing its gluing entry");
}

RootedMotif gluing_product(const RootedMotif& f1, const RootedMotif& f2) {
    EdgeList edges = f1.edges();
    const int offset = f1.order() - 1;
    for (const auto& [a, b] : f2.edges())
        edges.emplace_back(a == 0 ? 0 : a + offset, b == 0 ? 0 : b + offset);
    return RootedMotif(f1.order() + f2.order() - 1, 0, std::move(edges));
}

OverlapSet overlap_set(const RootedMotif& f1, const RootedMotif& f2) {
    require(f1.order() + f2.order() <= 11, error::code::invalid_argument,
            "overlap set construction is limited to |F1|+|F2| <= 11");
    const int w = f1.order() + f2.order() - 1;
    const auto copies1 = copies_in_complete(f1, w);
    const auto copies2 = copies_in_complete(f2, w);

    struct ClassInfo {
        CompactShape shape;
        std::int64_t pairs = 0;
    };
    std::vector<ClassInfo> classes;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets; // invariant -> class ids
    std::unordered_map<std::uint64_t, std::size_t> mask_class;           // union mask -> class id

    for (const std::uint64_t a : copies1)
        for (const std::uint64_t b : copies2) {
            const std::uint64_t u = a | b;
            auto it = mask_class.find(u);
            std::size_t cls;
            if (it != mask_class.end()) {
                cls = it->second;
            } else {
                CompactShape shape = compact_union(u, w);
                const std::uint64_t key = invariant_key(shape);
                cls = SIZE_MAX;
                for (std::size_t id : buckets[key])
                    if (rooted_isomorphic(shape, classes[id].shape)) { cls = id; break; }
                if (cls == SIZE_MAX) {
                    cls = classes.size();
                    classes.push_back({std::move(shape), 0});
                    buckets[key].push_back(cls);
                }
                mask_class.emplace(u, cls);
            }
            ++classes[cls].pairs;
        }

    OverlapSet out{f1, f2, {}};
    for (const auto& cls : classes) {
        RootedMotif shape(cls.shape.order, 0, cls.shape.edges);
        const std::int64_t positions = count_in_complete(shape, w);
        require(positions > 0 && cls.pairs % positions == 0, error::code::internal,
                "covering-pair total not divisible by host placements");
        out.entries.push_back({std::move(shape), cls.pairs / positions});
    }
    sort_entries(out.entries);
    return out;
}

OverlapSet inductive_coefficients(const RootedMotif& f1, const RootedMotif& f2) {
    // Element shapes come from the union enumeration; the coefficients are
    // recomputed from scratch by poset subtraction over rooted counts.
    OverlapSet direct = overlap_set(f1, f2);
    std::vector<RootedMotif> shapes;
    for (const auto& e : direct.entries) shapes.push_back(e.shape);
    // Ascending layering: containment implies (|H|, e(H)) does not decrease;
    // ties broken by canonical edge list.
    std::sort(shapes.begin(), shapes.end(), [](const RootedMotif& x, const RootedMotif& y) {
        if (x.order() != y.order()) return x.order() < y.order();
        if (x.edge_count() != y.edge_count()) return x.edge_count() < y.edge_count();
        return x < y;
    });

    std::vector<std::int64_t> coeff(shapes.size(), 0);
    for (std::size_t t = 0; t < shapes.size(); ++t) {
        const Graph host = graph_from_motif(shapes[t]);
        std::int64_t c = rooted_count(host, 0, f1) * rooted_count(host, 0, f2);
        for (std::size_t s = 0; s < t; ++s) c -= coeff[s] * rooted_count(host, 0, shapes[s]);
        coeff[t] = c;
        require(c > 0, error::code::internal, "inductive overlap coefficient must be positive");
    }

    OverlapSet out{f1, f2, {}};
    for (std::size_t t = 0; t < shapes.size(); ++t) out.entries.push_back({shapes[t], coeff[t]});
    sort_entries(out.entries);
    return out;
}

IdentityReport verify_product_identity(const Graph& g, std::uint32_t vertex,
                                       const RootedMotif& f1, const RootedMotif& f2,
                                       const OverlapSet* precomputed) {
    std::optional<OverlapSet> local;
    if (!precomputed) local.emplace(overlap_set(f1, f2));
    const OverlapSet& os = precomputed ? *precomputed : *local;
    IdentityReport rep{};
    rep.lhs = rooted_count(g, vertex, f1) * rooted_count(g, vertex, f2);
    rep.rhs = 0;
    for (const auto& entry : os.entries) {
        const std::int64_t x = rooted_count(g, vertex, entry.shape);
        rep.per_shape.push_back(x);
        rep.rhs += entry.coeff * x;
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

} // namespace rcs
