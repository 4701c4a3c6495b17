#include "rootcensus/fixtures.hpp"

#include <cmath>
#include <sstream>

#include "rootcensus/census.hpp"
#include "rootcensus/rng.hpp"
#include "rootcensus/sample.hpp"

namespace rcs {

const CountingExample& counting_example() {
    static const CountingExample ex = [] {
        // Vertices: 0 hub-left, 1..7 rim, 8 = j (hub-right), 9 pendant, 10 = i.
        const std::vector<std::pair<std::uint32_t, std::uint32_t>> edges = {
            {0, 1}, {1, 2}, {0, 3}, {3, 4}, {3, 5}, {0, 5}, {1, 4}, {6, 2}, {7, 5},
            {0, 4}, {0, 8}, {7, 8}, {6, 8}, {9, 8}, {5, 8}, {10, 1}, {2, 10}, {3, 10},
        };
        return CountingExample{Graph::from_edges(11, edges), 10, 8};
    }();
    return ex;
}

const Kernel& reference_kernel() {
    static const Kernel k = [] {
        Kernel kn;
        kn.k = 3;
        kn.B = {0.95, 0.20, 0.10,
                0.20, 0.90, 0.25,
                0.10, 0.25, 0.95};
        kn.pi = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        kn.validate();
        return kn;
    }();
    return k;
}

const Kernel& regular_reference_kernel() {
    static const Kernel k = [] {
        Kernel kn;
        kn.k = 3;
        // All rows average 0.4; block 1 is triangle-rich.
        kn.B = {0.90, 0.15, 0.15,
                0.15, 0.50, 0.55,
                0.15, 0.55, 0.50};
        kn.pi = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        kn.validate();
        return kn;
    }();
    return k;
}

CovariateDataset make_covariate_dataset(std::uint32_t n, std::uint64_t seed) {
    CovariateDataset ds;
    ds.intercept = 0.5;
    ds.triangle_effect = 2.0;

    // Triangle-poor two-block model: the planted linear predictor then
    // stays in a balanced probability range instead of saturating, which
    // keeps the logistic problem well conditioned.
    Kernel kn;
    kn.k = 2;
    kn.B = {0.05, 0.90, 0.90, 0.05};
    kn.pi = {0.5, 0.5};
    SampleSpec spec{n, 0.08, derive_seed(seed, 0x636f76ULL), LatentMode::sample_uniform, {}, 1};
    auto [graph, latents] = sample_graph(kn, spec);
    ds.graph = std::move(graph);

    const DensityMatrix dm = census(ds.graph, {motif_by_name("triangle")}, 1);
    Rng rng(derive_seed(seed, 0x6c6162ULL));
    std::ostringstream table;
    table << "vertex_id,label,activity\n";
    for (std::uint32_t i = 0; i < n; ++i) {
        const double eta = ds.intercept + ds.triangle_effect * dm.at(i, 0);
        const int y = rng.uniform() < 1.0 / (1.0 + std::exp(-eta)) ? 1 : 0;
        const double activity = rng.normal();
        table << i << ',' << y << ',' << activity << '\n';
    }
    ds.table = table.str();
    return ds;
}

} // namespace rcs
