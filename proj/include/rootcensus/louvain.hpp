#pragma once

#include <cstdint>
#include <vector>

#include "rootcensus/graph.hpp"

namespace rcs {

struct LouvainResult {
    std::vector<int> labels; // contiguous 0..k-1, ordered by first appearance
    int k = 0;
    double modularity = 0.0;
};

// Two-phase modularity maximization: local moving (vertices visited in a
// seeded shuffle of id order) followed by aggregation; repeated until no
// gain above 1e-12. Deterministic given the seed.
LouvainResult louvain(const Graph& g, std::uint64_t seed);

double modularity(const Graph& g, const std::vector<int>& labels);

} // namespace rcs
