#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rootcensus/errors.hpp"
#include "rootcensus/fixtures.hpp"
#include "rootcensus/inference.hpp"
#include "rootcensus/rng.hpp"
#include "rootcensus/sample.hpp"

using namespace rcs;

namespace {

Graph disjoint_cliques(std::uint32_t size, std::uint32_t count) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t c = 0; c < count; ++c)
        for (std::uint32_t a = 0; a < size; ++a)
            for (std::uint32_t b = a + 1; b < size; ++b)
                edges.emplace_back(c * size + a, c * size + b);
    return Graph::from_edges(size * count, edges);
}

} // namespace

TEST_CASE("blockmodel fit") {
    SUBCASE("two disjoint cliques") {
        const BlockFit fit = fit_blockmodel(disjoint_cliques(10, 2), 1);
        REQUIRE(fit.k == 2);
        CHECK(fit.B_hat.at(0, 0) == doctest::Approx(1.0));
        CHECK(fit.B_hat.at(1, 1) == doctest::Approx(1.0));
        CHECK(fit.B_hat.at(0, 1) == doctest::Approx(0.0));
    }
    SUBCASE("single edge collapses to one block") {
        const BlockFit fit = fit_blockmodel(Graph::from_edges(2, {{0, 1}}), 1);
        CHECK(fit.k == 1);
        CHECK(fit.B_hat.at(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("recovers block probabilities of a sampled model") {
        const Kernel& k = reference_kernel();
        const double rho = 0.25;
        auto [g, la] = sample_graph(k, SampleSpec{1000, rho, 3, LatentMode::fixed_grid, {}, 2});
        const BlockFit fit = fit_blockmodel(g, 3);
        REQUIRE(fit.k == 3);
        // Match fitted blocks to true blocks by majority vote.
        std::vector<std::vector<int>> votes(fit.k, std::vector<int>(3, 0));
        for (std::uint32_t v = 0; v < g.order(); ++v) ++votes[fit.assignment[v]][la.block[v]];
        std::vector<int> to_true(fit.k);
        for (int b = 0; b < fit.k; ++b)
            to_true[b] = static_cast<int>(std::max_element(votes[b].begin(), votes[b].end()) -
                                          votes[b].begin());
        const double block_n = 1000.0 / 3.0;
        for (int a = 0; a < fit.k; ++a)
            for (int b = 0; b < fit.k; ++b) {
                const double p = rho * k.b(to_true[a], to_true[b]);
                const double pairs = a == b ? block_n * (block_n - 1) / 2 : block_n * block_n;
                const double sd = std::sqrt(p * (1 - p) / pairs) *
                                  (a == b ? 1.0 : 1.0);
                CHECK(std::abs(fit.B_hat.at(a, b) - p) < 4.0 * sd + 0.01);
            }
    }
    SUBCASE("empty-block partitions rejected") {
        CHECK_THROWS_AS(fit_given_partition(disjoint_cliques(4, 1), {0, 0, 2, 2}), error);
    }
}

TEST_CASE("bootstrap moments") {
    const std::vector<RootedMotif> motifs{motif_by_name("triangle"), motif_by_name("square")};
    SUBCASE("constant kernel densities concentrate at one") {
        const Kernel k = Kernel::constant(0.4);
        const BootstrapMoments bm = bootstrap_moments(k, 400, 40, motifs, 5, 2);
        REQUIRE(bm.k == 1);
        CHECK(std::abs(bm.mean[0][0] - 1.0) < 0.05);
        CHECK(std::abs(bm.mean[0][1] - 1.0) < 0.05);
        CHECK(bm.cov[0].at(0, 0) > 0.0);
    }
    SUBCASE("minimal replicate count") {
        const Kernel k = Kernel::constant(0.5);
        const BootstrapMoments bm = bootstrap_moments(k, 60, 2, motifs, 5, 1);
        CHECK(bm.replicates == 2);
        CHECK(std::isfinite(bm.cov[0].at(0, 0)));
        CHECK(std::isfinite(bm.cov[0].at(1, 1)));
    }
    SUBCASE("tiny blocks are reported, not fatal") {
        Kernel k;
        k.k = 2;
        k.B = {0.5, 0.2, 0.2, 0.5};
        k.pi = {0.999, 0.001};
        const BootstrapMoments bm = bootstrap_moments(k, 50, 3, motifs, 5, 1);
        CHECK(bm.empty_blocks == std::vector<int>{1});
    }
    SUBCASE("replicate seeds are stable across worker counts") {
        const Kernel& k = reference_kernel();
        const BootstrapMoments a = bootstrap_moments(k, 120, 10, motifs, 9, 1);
        const BootstrapMoments b = bootstrap_moments(k, 120, 10, motifs, 9, 3);
        CHECK(a.mean == b.mean);
        for (int blk = 0; blk < a.k; ++blk) CHECK(a.cov[blk].v == b.cov[blk].v);
    }
}

TEST_CASE("standardization") {
    BootstrapMoments bm;
    bm.k = 1;
    bm.d = 2;
    bm.replicates = 2;
    bm.mean = {{1.0, 2.0}};
    bm.cov = {Matrix(2, 2)};

    DensityMatrix dm;
    dm.motifs = {motif_by_name("triangle"), motif_by_name("square")};
    dm.n = 1;
    dm.rho_hat = 0.5;
    dm.values = {3.0, 5.0};

    SUBCASE("identity covariance subtracts the mean") {
        bm.cov[0] = Matrix::identity(2);
        const Matrix t = standardize(dm, bm, {0});
        CHECK(t.at(0, 0) == doctest::Approx(2.0));
        CHECK(t.at(0, 1) == doctest::Approx(3.0));
    }
    SUBCASE("diagonal covariance scales coordinates") {
        bm.cov[0].at(0, 0) = 4.0;
        bm.cov[0].at(1, 1) = 9.0;
        const Matrix t = standardize(dm, bm, {0});
        CHECK(t.at(0, 0) == doctest::Approx(1.0));
        CHECK(t.at(0, 1) == doctest::Approx(1.0));
    }
    SUBCASE("squared norm equals the covariance quadratic form") {
        Rng rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            Matrix b(2, 2);
            for (auto& v : b.v) v = rng.normal();
            bm.cov[0] = b * b.transpose();
            bm.cov[0].at(0, 0) += 0.3;
            bm.cov[0].at(1, 1) += 0.3;
            const Matrix t = standardize(dm, bm, {0});
            const double norm2 = t.at(0, 0) * t.at(0, 0) + t.at(0, 1) * t.at(0, 1);
            const std::vector<double> diff{2.0, 3.0};
            const auto solved = solve_linear(bm.cov[0], diff);
            CHECK(norm2 == doctest::Approx(diff[0] * solved[0] + diff[1] * solved[1])
                               .epsilon(1e-10));
        }
    }
    SUBCASE("near-singular covariance is a domain error") {
        bm.cov[0].at(0, 0) = 1.0;
        bm.cov[0].at(1, 1) = 1e-15;
        CHECK_THROWS_AS(standardize(dm, bm, {0}), error);
    }
}

TEST_CASE("critical value quantile behavior") {
    const Kernel& k = reference_kernel();
    const std::vector<RootedMotif> motifs{motif_by_name("triangle"), motif_by_name("square")};
    const std::uint32_t n = 80;
    const BootstrapMoments bm = bootstrap_moments(k, n, 20, motifs, 2, 2);
    const double cv_half = critical_value(k, n, 0.5, 40, bm, motifs, 3, false, 2);
    const double cv_strict = critical_value(k, n, 0.0, 40, bm, motifs, 3, false, 2);
    CHECK(cv_strict >= cv_half);
    // Pooled quantile uses per-vertex statistics, so it sits far below the
    // max-statistic quantile at the same level.
    const double cv_pooled = critical_value(k, n, 0.5, 40, bm, motifs, 3, true, 2);
    CHECK(cv_pooled < cv_half);
}

TEST_CASE("gof pipeline") {
    SUBCASE("complete graph input fails cleanly") {
        GofConfig cfg;
        cfg.seed = 4;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t a = 0; a < 12; ++a)
            for (std::uint32_t b = a + 1; b < 12; ++b) edges.emplace_back(a, b);
        try {
            gof_test(Graph::from_edges(12, edges), cfg);
            FAIL("expected a domain error");
        } catch (const error& e) {
            CHECK(e.kind() == error::code::domain);
        }
    }
    SUBCASE("null data keeps most vertices") {
        auto [g, la] = sample_graph(reference_kernel(),
                                    SampleSpec{200, 0.171, 8, LatentMode::sample_uniform, {}, 2});
        GofConfig cfg;
        cfg.seed = 8;
        cfg.critical_replicates = 200;
        cfg.workers = 2;
        const GofResult res = gof_test(g, cfg);
        CHECK(res.critical > chi_square_quantile(0.9, 2));
        CHECK(res.rejected.size() <= 2);
        CHECK(res.stat.size() == 200);
    }
}

TEST_CASE("triadic closure perturbation") {
    const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    SUBCASE("no vertices selected leaves the graph alone") {
        const Graph g = triadic_closure(path, 0.0, 1.0, 1);
        CHECK(g.edge_count() == 2);
    }
    SUBCASE("full closure closes the open path") {
        const Graph g = triadic_closure(path, 1.0, 1.0, 1);
        CHECK(g.edge_count() == 3);
        CHECK(g.has_edge(0, 2));
    }
    SUBCASE("only closing edges are added") {
        auto [g, la] = sample_graph(reference_kernel(),
                                    SampleSpec{100, 0.2, 9, LatentMode::sample_uniform, {}, 1});
        const Graph h = triadic_closure(g, 0.2, 0.3, 2);
        CHECK(h.edge_count() >= g.edge_count());
        for (const auto& [a, b] : h.edges()) {
            if (g.has_edge(a, b)) continue;
            // new edge must close at least one 2-path
            bool closes = false;
            for (std::uint32_t w : g.neighbors(a))
                if (g.has_edge(w, b)) { closes = true; break; }
            CHECK(closes);
        }
    }
}
