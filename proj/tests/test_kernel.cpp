#include <doctest.h>

#include <cmath>

#include "rootcensus/census.hpp"
#include "rootcensus/errors.hpp"
#include "rootcensus/fixtures.hpp"
#include "rootcensus/kernel.hpp"
#include "rootcensus/overlap.hpp"
#include "rootcensus/rng.hpp"

using namespace rcs;

namespace {

Kernel two_block(double a, double b) {
    Kernel k;
    k.k = 2;
    k.B = {a, b, b, a};
    k.pi = {0.5, 0.5};
    return k;
}

// Exact moments of X_F at vertex 0 for a constant kernel on a tiny graph,
// by enumerating all 2^C(n,2) edge configurations with their probabilities.
void tiny_exact_moments(std::uint32_t n, double p, const RootedMotif& f1, const RootedMotif& f2,
                        double* mean1, double* cov12) {
    const int pairs = static_cast<int>(n * (n - 1) / 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all_pairs;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) all_pairs.emplace_back(i, j);
    double e1 = 0.0, e2 = 0.0, e12 = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (int t = 0; t < pairs; ++t)
            if (mask >> t & 1u) edges.push_back(all_pairs[t]);
        const double prob = std::pow(p, edges.size()) *
                            std::pow(1 - p, pairs - static_cast<int>(edges.size()));
        const Graph g = Graph::from_edges(n, edges);
        const double x1 = static_cast<double>(rooted_count(g, 0, f1));
        const double x2 = static_cast<double>(rooted_count(g, 0, f2));
        e1 += prob * x1;
        e2 += prob * x2;
        e12 += prob * x1 * x2;
    }
    *mean1 = e1;
    *cov12 = e12 - e1 * e2;
}

} // namespace

TEST_CASE("kernel parsing and validation") {
    const Kernel& ref = reference_kernel();
    const Kernel round = parse_kernel_json(kernel_to_json(ref));
    CHECK(round.k == ref.k);
    CHECK(round.B == ref.B);
    CHECK(round.pi == ref.pi);

    CHECK_THROWS_AS(parse_kernel_json("{\"k\":1,\"B\":[2.0],\"pi\":[1.0]}"), error);
    CHECK_THROWS_AS(parse_kernel_json("{\"k\":2,\"B\":[0.5,0.1,0.2,0.5],\"pi\":[0.5,0.5]}"),
                    error); // asymmetric
    CHECK_THROWS_AS(parse_kernel_json("{\"k\":1,\"B\":[0.5],\"pi\":[0.9]}"), error);
    CHECK_THROWS_AS(parse_kernel_json("not json"), error);
}

TEST_CASE("blockmodel density") {
    SUBCASE("constant kernel raises to the edge count") {
        const Kernel k = Kernel::constant(0.7);
        for (const auto& m : motif_catalog())
            CHECK(theoretical_density(k, m, 0) ==
                  doctest::Approx(std::pow(0.7, m.edge_count())));
    }
    SUBCASE("two-block closed forms") {
        const double a = 0.6, b = 0.2;
        const Kernel k = two_block(a, b);
        CHECK(theoretical_density(k, motif_by_name("edge"), 0) == doctest::Approx((a + b) / 2));
        CHECK(theoretical_density(k, motif_by_name("edge"), 1) == doctest::Approx((a + b) / 2));
        CHECK(theoretical_density(k, motif_by_name("triangle"), 0) ==
              doctest::Approx((a * a * a + 3 * a * b * b) / 4));
    }
    SUBCASE("gluing factorizes exactly") {
        Rng rng(99);
        for (int trial = 0; trial < 5; ++trial) {
            Kernel k;
            k.k = 3;
            k.pi = {0.2, 0.5, 0.3};
            k.B.assign(9, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    const double v = 0.1 + 0.85 * rng.uniform();
                    k.B[i * 3 + j] = v;
                    k.B[j * 3 + i] = v;
                }
            const auto& cat = motif_catalog();
            for (std::size_t x = 0; x < cat.size(); x += 3)
                for (std::size_t y = 0; y < cat.size(); y += 4) {
                    if (cat[x].order() + cat[y].order() > 11) continue;
                    const RootedMotif glue = gluing_product(cat[x], cat[y]);
                    for (int b = 0; b < 3; ++b)
                        CHECK(theoretical_density(k, glue, b) ==
                              doctest::Approx(theoretical_density(k, cat[x], b) *
                                              theoretical_density(k, cat[y], b))
                                  .epsilon(1e-12));
                }
        }
    }
    SUBCASE("term-count guard") {
        Kernel big;
        big.k = 101;
        big.B.assign(101 * 101, 0.5);
        big.pi.assign(101, 1.0 / 101);
        CHECK_THROWS_AS(theoretical_density(big, motif_by_name("bowtie"), 0), error);
    }
}

TEST_CASE("expected count formula") {
    const Kernel one = Kernel::constant(1.0);
    CHECK(expected_count(one, motif_by_name("edge"), 0, 50, 0.3) == doctest::Approx(0.3 * 49));
    CHECK(expected_count(one, motif_by_name("triangle"), 0, 100, 0.1) ==
          doctest::Approx(0.001 * 99 * 98 / 2)); // 4.851
}

TEST_CASE("variance formula") {
    SUBCASE("edge motif against the exact binomial variance") {
        const Kernel one = Kernel::constant(1.0);
        const std::uint32_t n = 500;
        const double rho = 0.02;
        const double lead = variance_count(one, motif_by_name("edge"), 0, n, rho);
        const double exact = (n - 1) * rho * (1 - rho);
        // The leading term drops a rho + O(rho^2 n) sized remainder.
        CHECK(std::abs(lead - exact) <= 2.0 * (rho + rho * rho * n) * exact + 1e-9);
    }
    SUBCASE("zero density gives zero variance") {
        Kernel k;
        k.k = 2;
        k.B = {0.0, 0.5, 0.5, 0.0}; // bipartite: no triangles
        k.pi = {0.5, 0.5};
        CHECK(variance_count(k, motif_by_name("triangle"), 0, 100, 0.5) == 0.0);
    }
}

TEST_CASE("moment targets") {
    CHECK(standardized_moment_target(2) == 1.0);
    CHECK(standardized_moment_target(4) == 3.0);
    CHECK(standardized_moment_target(6) == 15.0);
    CHECK(standardized_moment_target(8) == 105.0);
    CHECK(standardized_moment_target(3) == 0.0);
    CHECK(standardized_moment_target(5) == 0.0);
    CHECK_THROWS_AS(standardized_moment_target(9), error);
}

TEST_CASE("exact count moments against full enumeration") {
    // n = 5: 2^10 graphs; the identity-based moments must match exact
    // enumeration to float precision.
    const double p = 0.45;
    const Kernel k = Kernel::constant(1.0);
    const std::vector<RootedMotif> motifs{motif_by_name("edge"), motif_by_name("triangle")};
    const CountMoments cm = exact_count_moments(k, motifs, 0, 5, p);

    double mean_edge, var_edge;
    tiny_exact_moments(5, p, motif_by_name("edge"), motif_by_name("edge"), &mean_edge, &var_edge);
    CHECK(cm.mean[0] == doctest::Approx(mean_edge).epsilon(1e-10));
    CHECK(cm.cov.at(0, 0) == doctest::Approx(var_edge).epsilon(1e-9));

    double mean_tri, var_tri;
    tiny_exact_moments(5, p, motif_by_name("triangle"), motif_by_name("triangle"), &mean_tri,
                       &var_tri);
    CHECK(cm.mean[1] == doctest::Approx(mean_tri).epsilon(1e-10));
    CHECK(cm.cov.at(1, 1) == doctest::Approx(var_tri).epsilon(1e-9));

    double mean_cross, cov_cross;
    tiny_exact_moments(5, p, motif_by_name("edge"), motif_by_name("triangle"), &mean_cross,
                       &cov_cross);
    CHECK(cm.cov.at(0, 1) == doctest::Approx(cov_cross).epsilon(1e-9));
}

TEST_CASE("density moments rescale count moments") {
    const Kernel& k = reference_kernel();
    const std::vector<RootedMotif> motifs{motif_by_name("triangle"), motif_by_name("square")};
    const std::uint32_t n = 60;
    const double rho = 0.3;
    const CountMoments counts = exact_count_moments(k, motifs, 1, n, rho);
    const CountMoments dens = exact_density_moments(k, motifs, 1, n, rho);
    // The density statistic divides by rho_hat, which concentrates at
    // rho * mean kernel value.
    const double rho_eff = rho * k.mean_value();
    for (std::size_t t = 0; t < 2; ++t) {
        const double scale = std::pow(rho_eff, -motifs[t].edge_count()) /
                             static_cast<double>(count_in_complete(motifs[t], n));
        CHECK(dens.mean[t] == doctest::Approx(counts.mean[t] * scale).epsilon(1e-12));
        CHECK(dens.mean[t] ==
              doctest::Approx(theoretical_density(k, motifs[t], 1) /
                              std::pow(k.mean_value(), motifs[t].edge_count()))
                  .epsilon(1e-12));
        CHECK(dens.cov.at(t, t) ==
              doctest::Approx(counts.cov.at(t, t) * scale * scale).epsilon(1e-12));
    }
}
