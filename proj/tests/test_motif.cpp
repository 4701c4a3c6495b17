#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "rootcensus/errors.hpp"
#include "rootcensus/motif.hpp"

using namespace rcs;

TEST_CASE("canonical form") {
    SUBCASE("triangle is root-transitive") {
        const RootedMotif a(3, 0, {{0, 1}, {0, 2}, {1, 2}});
        const RootedMotif b(3, 1, {{0, 1}, {0, 2}, {1, 2}});
        const RootedMotif c(3, 2, {{0, 1}, {0, 2}, {1, 2}});
        CHECK(a == b);
        CHECK(b == c);
    }
    SUBCASE("cherry end vs center are distinct") {
        const RootedMotif end(3, 0, {{0, 1}, {1, 2}});
        const RootedMotif center(3, 1, {{0, 1}, {1, 2}});
        CHECK_FALSE(end == center);
        CHECK(end == motif_by_name("cherry"));
        CHECK(center == motif_by_name("2-star"));
    }
    SUBCASE("all labelings of the rooted 4-cycle collapse") {
        std::set<std::vector<std::pair<int, int>>> forms;
        const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
        for (const auto& p : perms) {
            // cycle 0 - p0 - p1 - p2 - 0
            const RootedMotif m(4, 0, {{0, p[0]}, {p[0], p[1]}, {p[1], p[2]}, {p[2], 0}});
            forms.insert(m.edges());
        }
        CHECK(forms.size() == 1);
        CHECK(RootedMotif(4, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}) == motif_by_name("square"));
    }
    SUBCASE("idempotent") {
        for (const auto& m : motif_catalog()) {
            const RootedMotif once = canonical_form(m);
            const RootedMotif twice = canonical_form(once);
            CHECK(once == m);
            CHECK(twice == once);
        }
    }
    SUBCASE("rejects disconnected and oversized") {
        CHECK_THROWS_AS(RootedMotif(4, 0, {{0, 1}, {2, 3}}), error);
        std::vector<std::pair<int, int>> path;
        for (int v = 0; v + 1 < 11; ++v) path.emplace_back(v, v + 1);
        CHECK_THROWS_AS(RootedMotif(11, 0, path), error);
    }
}

TEST_CASE("automorphism counts") {
    CHECK(motif_by_name("edge").aut() == 1);
    CHECK(motif_by_name("triangle").aut() == 2);
    CHECK(motif_by_name("3-star").aut() == 6);
    CHECK(motif_by_name("cherry").aut() == 1);
    CHECK(motif_by_name("2-star").aut() == 2);
    CHECK(motif_by_name("square").aut() == 2);
    CHECK(motif_by_name("diamond").aut() == 2);
    CHECK(motif_by_name("bowtie").aut() == 8);
    CHECK(motif_by_name("shovel").aut() == 1);
    CHECK(motif_by_name("tripod").aut() == 2);

    SUBCASE("orbit-stabilizer: aut times labeled copies is (|F|-1)!") {
        for (const auto& m : motif_catalog()) {
            std::uint64_t fact = 1;
            for (int t = 2; t < m.order(); ++t) fact *= t;
            const auto copies = oracle::labeled_copy_masks(m);
            CHECK(m.aut() * copies.size() == fact);
        }
    }
}

TEST_CASE("complete graph counts") {
    CHECK(count_in_complete(motif_by_name("edge"), 5) == 4);
    CHECK(count_in_complete(motif_by_name("triangle"), 4) == 3);
    CHECK(count_in_complete(motif_by_name("cherry"), 4) == 6);
    CHECK(count_in_complete(motif_by_name("triangle"), 2) == 0); // n < |F|

    SUBCASE("equals exhaustive enumeration in K_n") {
        for (std::uint32_t n = 4; n <= 8; ++n) {
            const Graph kn = oracle::random_graph(n, 1.1, 1); // p > 1: complete
            for (const auto& m : motif_catalog()) {
                if (static_cast<std::uint32_t>(m.order()) > n) continue;
                CHECK(count_in_complete(m, n) == oracle::rooted_count(kn, 0, m));
            }
        }
    }
    SUBCASE("overflow detected") {
        std::vector<std::pair<int, int>> star;
        for (int v = 1; v < 10; ++v) star.emplace_back(0, v);
        const RootedMotif big(10, 0, star);
        CHECK_THROWS_AS(count_in_complete(big, 2'000'000'000ull), error);
    }
}

TEST_CASE("balance parameters") {
    CHECK(motif_by_name("edge").m() == Rational(1, 1));
    CHECK(motif_by_name("triangle").m() == Rational(3, 2));
    CHECK(motif_by_name("square").m() == Rational(4, 3));
    CHECK(motif_by_name("diamond").m() == Rational(5, 3));

    CHECK(motif_by_name("triangle").gamma() == Rational(1, 1));
    CHECK(motif_by_name("cherry").gamma() == Rational(1, 1));
    CHECK(motif_by_name("diamond").gamma() == Rational(1, 1));

    SUBCASE("gamma undefined below order 3") {
        CHECK_FALSE(motif_by_name("edge").has_gamma());
        CHECK_THROWS_AS(motif_by_name("edge").gamma(), error);
    }
    SUBCASE("root placement changes gamma on the diamond") {
        // Rooted at a degree-2 vertex the root-free side contains a triangle.
        const RootedMotif off_edge(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
        CHECK(off_edge.gamma() == Rational(3, 2));
        CHECK(off_edge.m() == Rational(5, 3));
    }
    SUBCASE("induced maximization equals edge-subset brute force") {
        for (const auto& m : motif_catalog()) {
            CHECK(m.m() == oracle::balance_over_edge_subsets(m, true));
            if (m.has_gamma())
                CHECK(m.gamma() == oracle::balance_over_edge_subsets(m, false));
        }
    }
}

TEST_CASE("motif json") {
    const RootedMotif sq = motif_by_name("square");
    const RootedMotif parsed = parse_motif_json(motif_to_json(sq));
    CHECK(parsed == sq);
    CHECK(parse_motif_json("\"triangle\"") == motif_by_name("triangle"));
    CHECK_THROWS_AS(parse_motif_json("{\"order\":3}"), error);

    const auto list = resolve_motifs("triangle,square");
    CHECK(list.size() == 2);
    CHECK(list[0] == motif_by_name("triangle"));

    const auto inline_json = resolve_motifs("{\"order\":3,\"root\":0,\"edges\":[[0,1],[1,2]]}");
    CHECK(inline_json.size() == 1);
    CHECK(inline_json[0] == motif_by_name("cherry"));
}
