#include <doctest.h>

#include <numeric>

#include "oracle.hpp"
#include "rootcensus/census.hpp"
#include "rootcensus/errors.hpp"
#include "rootcensus/fixtures.hpp"

using namespace rcs;

TEST_CASE("rooted counts, basics") {
    const Graph k3 = oracle::random_graph(3, 1.1, 1);
    CHECK(rooted_count(k3, 0, motif_by_name("triangle")) == 1);
    CHECK(rooted_count(k3, 1, motif_by_name("triangle")) == 1);

    const Graph g = oracle::random_graph(12, 0.4, 7);
    for (std::uint32_t v = 0; v < g.order(); ++v)
        CHECK(rooted_count(g, v, motif_by_name("edge")) == g.degree(v));
}

TEST_CASE("worked counting example") {
    const CountingExample& ex = counting_example();
    const auto x = [&](const char* name, std::uint32_t v) {
        return rooted_count(ex.graph, v, motif_by_name(name));
    };
    CHECK(x("triangle", ex.vertex_i) == 1);
    CHECK(x("cherry", ex.vertex_i) == 8);
    CHECK(x("diamond", ex.vertex_i) == 0);
    CHECK(x("square", ex.vertex_i) == 2);
    CHECK(x("triangle", ex.vertex_j) == 2);
    CHECK(x("cherry", ex.vertex_j) == 9);
    CHECK(x("diamond", ex.vertex_j) == 1);
    CHECK(x("square", ex.vertex_j) == 2);
}

TEST_CASE("backtracking agrees with the subset oracle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 5);
        const Graph g = oracle::random_graph(n, 0.35, seed);
        for (const auto& m : motif_catalog()) {
            if (static_cast<std::uint32_t>(m.order()) > n) continue;
            for (std::uint32_t v = 0; v < n; ++v)
                CHECK(rooted_count(g, v, m) == oracle::rooted_count(g, v, m));
        }
    }
}

TEST_CASE("fast paths equal generic backtracking") {
    const std::vector<RootedMotif> fast = {motif_by_name("edge"), motif_by_name("2-star"),
                                           motif_by_name("cherry"), motif_by_name("triangle"),
                                           motif_by_name("square")};
    for (const auto& m : fast) CHECK(has_fast_path(m));
    CHECK_FALSE(has_fast_path(motif_by_name("diamond")));

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Graph g = oracle::random_graph(50, 0.25, 1000 + seed);
        for (const auto& m : fast) {
            const CountVector a = count_all(g, m);
            const CountVector b = count_all_generic(g, m);
            CHECK(a.counts == b.counts);
        }
    }
}

TEST_CASE("closed-form spot values") {
    // Star with five leaves, centered at 0.
    const Graph star = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(rooted_count(star, 0, motif_by_name("2-star")) == 10);

    const Graph k4 = oracle::random_graph(4, 1.1, 1);
    CHECK(rooted_count(k4, 0, motif_by_name("triangle")) == 3);
    CHECK(rooted_count(k4, 0, motif_by_name("square")) == 3);
}

TEST_CASE("census densities") {
    SUBCASE("complete graph gives density one") {
        const Graph k6 = oracle::random_graph(6, 1.1, 1);
        const DensityMatrix dm = census(k6, motif_catalog());
        CHECK(dm.rho_hat == 1.0);
        for (std::uint32_t i = 0; i < dm.n; ++i)
            for (std::size_t t = 0; t < dm.motifs.size(); ++t)
                CHECK(dm.at(i, t) == doctest::Approx(1.0));
    }
    SUBCASE("bipartite graph has no triangles") {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = 4; b < 8; ++b) edges.emplace_back(a, b);
        const Graph g = Graph::from_edges(8, edges);
        const DensityMatrix dm = census(g, {motif_by_name("triangle")});
        for (std::uint32_t i = 0; i < 8; ++i) CHECK(dm.at(i, 0) == 0.0);
    }
    SUBCASE("path graph cherry density") {
        const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
        const DensityMatrix dm = census(path, {motif_by_name("cherry")});
        CHECK(dm.at(0, 0) == doctest::Approx(1.125)); // (2/3)^-2 * 1/2
    }
    SUBCASE("empty graph rejected") {
        CHECK_THROWS_AS(census(Graph::from_edges(4, {}), {motif_by_name("edge")}), error);
    }
    SUBCASE("worker count does not change results") {
        const Graph g = oracle::random_graph(40, 0.3, 5);
        const DensityMatrix a = census(g, {motif_by_name("triangle"), motif_by_name("square")}, 1);
        const DensityMatrix b = census(g, {motif_by_name("triangle"), motif_by_name("square")}, 3);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("count properties") {
    SUBCASE("monotone under edge addition") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Graph g = oracle::random_graph(10, 0.25, 40 + seed);
            // add the first missing edge
            auto edges = g.edges();
            bool added = false;
            for (std::uint32_t a = 0; a < 10 && !added; ++a)
                for (std::uint32_t b = a + 1; b < 10 && !added; ++b)
                    if (!g.has_edge(a, b)) {
                        edges.emplace_back(a, b);
                        added = true;
                    }
            if (!added) continue;
            const Graph h = Graph::from_edges(10, edges);
            for (const auto& m : motif_catalog()) {
                const CountVector before = count_all(g, m);
                const CountVector after = count_all(h, m);
                for (std::uint32_t v = 0; v < 10; ++v) CHECK(after.counts[v] >= before.counts[v]);
            }
        }
    }
    SUBCASE("relabeling permutes counts") {
        const Graph g = oracle::random_graph(9, 0.35, 77);
        std::vector<std::uint32_t> perm(9);
        std::iota(perm.rbegin(), perm.rend(), 0);
        const Graph h = g.relabeled(perm);
        for (const auto& m : motif_catalog()) {
            const CountVector a = count_all(g, m);
            const CountVector b = count_all(h, m);
            for (std::uint32_t v = 0; v < 9; ++v) CHECK(a.counts[v] == b.counts[perm[v]]);
        }
    }
    SUBCASE("bounded by the complete-graph count, equality on K_n") {
        const Graph g = oracle::random_graph(9, 0.5, 3);
        const Graph k9 = oracle::random_graph(9, 1.1, 3);
        for (const auto& m : motif_catalog()) {
            const std::int64_t cap = count_in_complete(m, 9);
            for (std::uint32_t v = 0; v < 9; ++v) {
                CHECK(rooted_count(g, v, m) <= cap);
                CHECK(rooted_count(k9, v, m) == cap);
            }
        }
    }
}

TEST_CASE("vertex counter matches count_all") {
    const Graph g = oracle::random_graph(30, 0.3, 11);
    VertexCounter counter(g.order());
    for (const auto& m : motif_catalog()) {
        const CountVector all = count_all(g, m);
        for (std::uint32_t v = 0; v < g.order(); ++v)
            CHECK(counter.count(g, v, m) == all.counts[v]);
    }
}
