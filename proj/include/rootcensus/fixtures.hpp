#pragma once

#include <cstdint>
#include <string>

#include "rootcensus/graph.hpp"
#include "rootcensus/kernel.hpp"

namespace rcs {

// Small 11-vertex worked example used across tests and docs; the two
// highlighted vertices have known counts for several motifs.
struct CountingExample {
    Graph graph;
    std::uint32_t vertex_i; // degree-3 vertex on the rim
    std::uint32_t vertex_j; // degree-5 hub
};
const CountingExample& counting_example();

// Default 3-block kernel for simulation experiments: equal proportions,
// assortative with clearly separated blocks.
const Kernel& reference_kernel();

// Row-regular variant (every block has the same expected degree) with
// heterogeneous triangle densities. Used for averaged-limit experiments:
// the empirical edge fraction that normalizes the densities then has no
// latent-driven sqrt(n)-scale fluctuation, so the limit covariance of the
// density mean is exactly the across-block covariance of the theoretical
// densities.
const Kernel& regular_reference_kernel();

// Synthetic vertex-covariate dataset for the regression demo: a graph
// sampled from the reference kernel, binary labels drawn from a logistic
// model on the triangle density, plus one noise covariate.
struct CovariateDataset {
    Graph graph;
    std::string table;          // header row: vertex_id,label,activity
    double intercept;           // planted coefficients
    double triangle_effect;
};
CovariateDataset make_covariate_dataset(std::uint32_t n, std::uint64_t seed);

} // namespace rcs
