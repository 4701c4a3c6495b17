#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rootcensus/graph.hpp"
#include "rootcensus/kernel.hpp"

namespace rcs {

enum class LatentMode {
    sample_uniform, // x_i iid Uniform(0,1)
    fixed_grid,     // x_i = i/(n+1)
    fixed_list,     // caller-supplied positions
};

struct SampleSpec {
    std::uint32_t n = 0;
    double rho = 1.0;
    std::uint64_t seed = 0;
    LatentMode mode = LatentMode::sample_uniform;
    std::vector<double> latents; // used by fixed_list
    int workers = 1;
};

struct LatentAssignment {
    std::vector<double> x;
    std::vector<int> block;
};

// Inhomogeneous random graph: each pair {i,j} independently with
// probability rho * B[block(i)][block(j)]. Per-pair randomness is a pure
// function of (seed, min(i,j), max(i,j)), so the draw is reproducible and
// independent of iteration order and worker count. Latents use a separate
// stream derived from the same seed.
std::pair<Graph, LatentAssignment> sample_graph(const Kernel& kernel, const SampleSpec& spec);

LatentAssignment make_latents(const Kernel& kernel, const SampleSpec& spec);

// Restriction of the same draw to the pairs needed for counts rooted at
// vertex `root`: first the star at root, then all pairs inside its
// neighborhood. Returns the induced graph on {root} + N(root) with root
// relabeled 0, plus root's degree. Agrees exactly with sample_graph
// restricted to those pairs (the per-pair stream makes this well defined).
struct NeighborhoodSample {
    Graph graph;          // on 1 + deg vertices, root is vertex 0
    std::uint32_t degree; // |N(root)|
};
NeighborhoodSample sample_root_neighborhood(const Kernel& kernel, const SampleSpec& spec,
                                            std::uint32_t root);

} // namespace rcs
