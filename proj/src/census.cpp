#include "rootcensus/census.hpp"

#include <algorithm>
#include <cmath>

#include "rootcensus/errors.hpp"
#include "rootcensus/parallel.hpp"

namespace rcs {
namespace {

// Visit order for embedding: root first, then repeatedly the smallest
// canonical label adjacent to an already placed vertex. Each step records
// which placed positions must be adjacent to the new image.
struct EmbedPlan {
    struct Step {
        int pivot;               // placed motif vertex whose image supplies candidates
        std::vector<int> checks; // other placed motif vertices that must be adjacent
    };
    std::vector<int> visit;  // motif vertex per depth, visit[0] = 0
    std::vector<Step> steps; // steps[d] places visit[d+1]
};

EmbedPlan make_plan(const RootedMotif& f) {
    EmbedPlan plan;
    const int k = f.order();
    std::vector<char> placed(k, 0);
    plan.visit.push_back(0);
    placed[0] = 1;
    while (static_cast<int>(plan.visit.size()) < k) {
        int next = -1;
        for (int v = 1; v < k; ++v) {
            if (placed[v]) continue;
            bool attached = false;
            for (int u : plan.visit)
                if (f.adjacent(u, v)) { attached = true; break; }
            if (attached) { next = v; break; }
        }
        require(next >= 0, error::code::internal, "motif not connected in embed plan");
        EmbedPlan::Step step{-1, {}};
        for (int u : plan.visit)
            if (f.adjacent(u, next)) {
                if (step.pivot < 0) step.pivot = u;
                else step.checks.push_back(u);
            }
        placed[next] = 1;
        plan.visit.push_back(next);
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

// Counts injective root-anchored embeddings (not copies).
std::int64_t count_embeddings(const Graph& g, std::uint32_t root, const RootedMotif& f,
                              const EmbedPlan& plan) {
    const int k = f.order();
    std::vector<std::uint32_t> image(k);          // by depth
    std::vector<std::uint32_t> image_of(k);       // by motif vertex
    image[0] = root;
    image_of[0] = root;

    std::int64_t total = 0;
    // Depth-first over plan steps; iterative to keep the hot path flat.
    struct Frame { std::size_t next_candidate; };
    std::vector<Frame> stack(k);
    std::vector<std::span<const std::uint32_t>> cands(k);

    int depth = 0;
    cands[0] = g.neighbors(image_of[plan.steps[0].pivot]);
    stack[0].next_candidate = 0;
    while (depth >= 0) {
        auto& fr = stack[depth];
        const auto& step = plan.steps[depth];
        bool advanced = false;
        while (fr.next_candidate < cands[depth].size()) {
            const std::uint32_t c = cands[depth][fr.next_candidate++];
            bool ok = true;
            for (int d = 0; d <= depth && ok; ++d)
                if (image[d] == c) ok = false; // injectivity
            for (int u : step.checks)
                if (ok && !g.has_edge(image_of[u], c)) ok = false;
            if (!ok) continue;
            const int mv = plan.visit[depth + 1];
            image[depth + 1] = c;
            image_of[mv] = c;
            if (depth + 1 == k - 1) {
                ++total;
                continue;
            }
            ++depth;
            cands[depth] = g.neighbors(image_of[plan.steps[depth].pivot]);
            stack[depth].next_candidate = 0;
            advanced = true;
            break;
        }
        if (!advanced) --depth;
    }
    return total;
}

enum class Fast { none, edge, two_star, cherry, triangle, square };

Fast fast_kind(const RootedMotif& f) {
    static const RootedMotif& edge = motif_by_name("edge");
    static const RootedMotif& two_star = motif_by_name("2-star");
    static const RootedMotif& cherry = motif_by_name("cherry");
    static const RootedMotif& triangle = motif_by_name("triangle");
    static const RootedMotif& square = motif_by_name("square");
    if (f == edge) return Fast::edge;
    if (f == two_star) return Fast::two_star;
    if (f == cherry) return Fast::cherry;
    if (f == triangle) return Fast::triangle;
    if (f == square) return Fast::square;
    return Fast::none;
}

std::int64_t fast_count_at(const Graph& g, std::uint32_t i, Fast kind,
                           std::vector<std::uint8_t>& mark,
                           std::vector<std::uint32_t>& hits,
                           std::vector<std::uint32_t>& touched) {
    const auto nb = g.neighbors(i);
    const std::int64_t deg = static_cast<std::int64_t>(nb.size());
    switch (kind) {
    case Fast::edge:
        return deg;
    case Fast::two_star:
        return deg * (deg - 1) / 2;
    case Fast::cherry: {
        std::int64_t total = 0;
        for (std::uint32_t v : nb) total += static_cast<std::int64_t>(g.degree(v)) - 1;
        return total;
    }
    case Fast::triangle: {
        // Half the number of ordered neighbor pairs that are adjacent.
        for (std::uint32_t v : nb) mark[v] = 1;
        std::int64_t ordered = 0;
        for (std::uint32_t v : nb)
            for (std::uint32_t w : g.neighbors(v)) ordered += mark[w];
        for (std::uint32_t v : nb) mark[v] = 0;
        return ordered / 2;
    }
    case Fast::square: {
        // A 4-cycle through i is determined by its opposite vertex w and an
        // unordered pair of common neighbors of i and w. Two-step path
        // aggregation; w == i excluded, chords irrelevant.
        touched.clear();
        for (std::uint32_t v : nb)
            for (std::uint32_t w : g.neighbors(v)) {
                if (w == i) continue;
                if (hits[w]++ == 0) touched.push_back(w);
            }
        std::int64_t total = 0;
        for (std::uint32_t w : touched) {
            const std::int64_t c = hits[w];
            total += c * (c - 1) / 2;
            hits[w] = 0;
        }
        return total;
    }
    case Fast::none:
        break;
    }
    fail(error::code::internal, "no fast path for motif");
}

} // namespace

std::int64_t rooted_count(const Graph& g, std::uint32_t vertex, const RootedMotif& f) {
    require(vertex < g.order(), error::code::invalid_argument, "vertex out of range");
    const EmbedPlan plan = make_plan(f);
    const std::int64_t embeddings = count_embeddings(g, vertex, f, plan);
    require(embeddings % static_cast<std::int64_t>(f.aut()) == 0, error::code::internal,
            "embedding count not divisible by aut(F)");
    return embeddings / static_cast<std::int64_t>(f.aut());
}

CountVector count_all_generic(const Graph& g, const RootedMotif& f, int workers) {
    const EmbedPlan plan = make_plan(f);
    CountVector out{f, std::vector<std::int64_t>(g.order(), 0)};
    const std::int64_t aut = static_cast<std::int64_t>(f.aut());
    parallel_for(0, g.order(), workers, [&](std::size_t i) {
        const std::int64_t e = count_embeddings(g, static_cast<std::uint32_t>(i), f, plan);
        require(e % aut == 0, error::code::internal, "embedding count not divisible by aut(F)");
        out.counts[i] = e / aut;
    });
    return out;
}

bool has_fast_path(const RootedMotif& f) { return fast_kind(f) != Fast::none; }

CountVector count_all(const Graph& g, const RootedMotif& f, int workers) {
    const Fast kind = fast_kind(f);
    if (kind == Fast::none) return count_all_generic(g, f, workers);
    CountVector out{f, std::vector<std::int64_t>(g.order(), 0)};
    const int span = workers > 1 ? workers : 1;
    std::vector<std::vector<std::uint8_t>> marks(span, std::vector<std::uint8_t>(g.order(), 0));
    std::vector<std::vector<std::uint32_t>> hit_bufs(span, std::vector<std::uint32_t>(g.order(), 0));
    std::vector<std::vector<std::uint32_t>> touch_bufs(span);
    // Static chunking mirrors parallel_for; each worker owns its scratch.
    const std::size_t n = g.order();
    const std::size_t chunk = (n + span - 1) / span;
    parallel_for(0, static_cast<std::size_t>(span), span, [&](std::size_t t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i)
            out.counts[i] = fast_count_at(g, static_cast<std::uint32_t>(i), kind, marks[t],
                                          hit_bufs[t], touch_bufs[t]);
    });
    return out;
}

DensityMatrix census(const Graph& g, const std::vector<RootedMotif>& motifs, int workers) {
    require(!motifs.empty(), error::code::invalid_argument, "census needs at least one motif");
    require(g.edge_count() >= 1, error::code::domain, "empty graph: rho_hat would be zero");
    DensityMatrix dm;
    dm.motifs = motifs;
    dm.n = g.order();
    dm.rho_hat = static_cast<double>(g.edge_count()) / static_cast<double>(g.complete_edge_count());
    dm.values.assign(static_cast<std::size_t>(dm.n) * motifs.size(), 0.0);
    for (std::size_t t = 0; t < motifs.size(); ++t) {
        CountVector cv = count_all(g, motifs[t], workers);
        const std::int64_t complete = count_in_complete(motifs[t], g.order());
        require(complete > 0, error::code::domain,
                "graph smaller than motif " + motifs[t].describe());
        const double norm =
            std::pow(dm.rho_hat, -static_cast<double>(motifs[t].edge_count())) /
            static_cast<double>(complete);
        for (std::uint32_t i = 0; i < dm.n; ++i)
            dm.values[static_cast<std::size_t>(i) * motifs.size() + t] =
                static_cast<double>(cv.counts[i]) * norm;
        dm.raw.push_back(std::move(cv));
    }
    return dm;
}

std::int64_t VertexCounter::count(const Graph& g, std::uint32_t vertex, const RootedMotif& f) {
    const Fast kind = fast_kind(f);
    if (kind == Fast::none) return rooted_count(g, vertex, f);
    if (mark_.size() < g.order()) {
        mark_.assign(g.order(), 0);
        hits_.assign(g.order(), 0);
    }
    return fast_count_at(g, vertex, kind, mark_, hits_, touched_);
}

} // namespace rcs
