#include <doctest.h>

#include "rootcensus/errors.hpp"
#include "rootcensus/graph.hpp"

using namespace rcs;

TEST_CASE("edge list loading") {
    SUBCASE("path graph") {
        const LoadResult lr = load_edge_list_text("0 1\n1 2\n");
        CHECK(lr.graph.order() == 3);
        CHECK(lr.graph.edge_count() == 2);
        CHECK(lr.graph.has_edge(0, 1));
        CHECK(lr.graph.has_edge(1, 2));
        CHECK_FALSE(lr.graph.has_edge(0, 2));
    }
    SUBCASE("duplicates and self loops dropped with counts") {
        const LoadResult lr = load_edge_list_text("0 1\n1 0\n2 2\n");
        CHECK(lr.graph.edge_count() == 1);
        CHECK(lr.dropped_duplicates == 1);
        CHECK(lr.dropped_self_loops == 1);
        CHECK(lr.graph.order() == 3); // the looped vertex still exists
    }
    SUBCASE("complete graph on four vertices") {
        const LoadResult lr = load_edge_list_text("a b\na c\na d\nb c\nb d\nc d\n");
        CHECK(lr.graph.order() == 4);
        CHECK(lr.graph.edge_count() == 6);
    }
    SUBCASE("ids remapped by first appearance") {
        const LoadResult lr = load_edge_list_text("9 4\n4 7\n");
        CHECK(lr.labels == std::vector<std::string>{"9", "4", "7"});
        CHECK(lr.graph.has_edge(0, 1));
        CHECK(lr.graph.has_edge(1, 2));
    }
    SUBCASE("comments and blank lines ignored") {
        const LoadResult lr = load_edge_list_text("# header\n\n0 1 # trailing\n");
        CHECK(lr.graph.edge_count() == 1);
    }
    SUBCASE("malformed line reports its number") {
        try {
            load_edge_list_text("0 1\n0 1 2\n");
            FAIL("expected parse error");
        } catch (const error& e) {
            CHECK(e.kind() == error::code::parse);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
}

TEST_CASE("graph structure") {
    const LoadResult lr = load_edge_list_text("0 1\n0 2\n1 2\n2 3\n");
    const Graph& g = lr.graph;
    CHECK(g.degree(2) == 3);
    CHECK(g.complete_edge_count() == 6);

    SUBCASE("adjacency is symmetric and sorted") {
        for (std::uint32_t v = 0; v < g.order(); ++v) {
            std::uint32_t prev = 0;
            bool first = true;
            for (std::uint32_t u : g.neighbors(v)) {
                CHECK(g.has_edge(u, v));
                if (!first) CHECK(prev < u);
                prev = u;
                first = false;
            }
        }
    }
    SUBCASE("relabeling preserves structure") {
        const std::vector<std::uint32_t> perm{3, 2, 1, 0};
        const Graph h = g.relabeled(perm);
        CHECK(h.edge_count() == g.edge_count());
        for (const auto& [a, b] : g.edges()) CHECK(h.has_edge(perm[a], perm[b]));
    }
    SUBCASE("edge count identity") {
        std::uint64_t degree_total = 0;
        for (std::uint32_t v = 0; v < g.order(); ++v) degree_total += g.degree(v);
        CHECK(degree_total == 2 * g.edge_count());
    }
}

TEST_CASE("from_edges validation") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), error);
}
