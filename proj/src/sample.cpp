#include "rootcensus/sample.hpp"

#include <algorithm>

#include "rootcensus/errors.hpp"
#include "rootcensus/parallel.hpp"
#include "rootcensus/rng.hpp"

namespace rcs {
namespace {

constexpr std::uint64_t kLatentTag = 0x6c61746e74ULL; // stream separation tags
constexpr std::uint64_t kPairTag = 0x70616972ULL;

} // namespace

LatentAssignment make_latents(const Kernel& kernel, const SampleSpec& spec) {
    LatentAssignment la;
    la.x.resize(spec.n);
    switch (spec.mode) {
    case LatentMode::sample_uniform: {
        const std::uint64_t lseed = derive_seed(spec.seed, kLatentTag);
        for (std::uint32_t i = 0; i < spec.n; ++i) la.x[i] = to_unit(mix64(mix64(lseed) ^ i));
        break;
    }
    case LatentMode::fixed_grid:
        for (std::uint32_t i = 0; i < spec.n; ++i)
            la.x[i] = static_cast<double>(i + 1) / static_cast<double>(spec.n + 1);
        break;
    case LatentMode::fixed_list:
        require(spec.latents.size() == spec.n, error::code::invalid_argument,
                "fixed latent list must have n entries");
        la.x = spec.latents;
        break;
    }
    la.block.resize(spec.n);
    for (std::uint32_t i = 0; i < spec.n; ++i) la.block[i] = kernel.block_of(la.x[i]);
    return la;
}

std::pair<Graph, LatentAssignment> sample_graph(const Kernel& kernel, const SampleSpec& spec) {
    kernel.validate();
    require(spec.rho >= 0.0, error::code::invalid_argument, "rho must be non-negative");
    require(spec.rho * kernel.max_entry() <= 1.0 + 1e-12, error::code::invalid_argument,
            "rho * max(B) exceeds 1: not a probability");

    LatentAssignment la = make_latents(kernel, spec);
    const std::uint64_t pseed = derive_seed(spec.seed, kPairTag);

    // Probability table per block pair.
    std::vector<double> prob(static_cast<std::size_t>(kernel.k) * kernel.k);
    for (int a = 0; a < kernel.k; ++a)
        for (int b = 0; b < kernel.k; ++b)
            prob[static_cast<std::size_t>(a) * kernel.k + b] = spec.rho * kernel.b(a, b);

    const int span = spec.workers > 1 ? spec.workers : 1;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> parts(span);
    const std::size_t chunk = (spec.n + span - 1) / span;
    parallel_for(0, static_cast<std::size_t>(span), span, [&](std::size_t t) {
        auto& out = parts[t];
        const std::uint32_t lo = static_cast<std::uint32_t>(t * chunk);
        const std::uint32_t hi = static_cast<std::uint32_t>(std::min<std::size_t>(spec.n, lo + chunk));
        for (std::uint32_t i = lo; i < hi; ++i) {
            const double* row = prob.data() + static_cast<std::size_t>(la.block[i]) * kernel.k;
            for (std::uint32_t j = i + 1; j < spec.n; ++j)
                if (pair_uniform(pseed, i, j) < row[la.block[j]]) out.emplace_back(i, j);
        }
    });

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    edges.reserve(total);
    for (auto& p : parts) edges.insert(edges.end(), p.begin(), p.end());

    return {Graph::from_edges(spec.n, edges), std::move(la)};
}

NeighborhoodSample sample_root_neighborhood(const Kernel& kernel, const SampleSpec& spec,
                                            std::uint32_t root) {
    kernel.validate();
    require(root < spec.n, error::code::invalid_argument, "root out of range");
    require(spec.rho * kernel.max_entry() <= 1.0 + 1e-12, error::code::invalid_argument,
            "rho * max(B) exceeds 1: not a probability");

    LatentAssignment la = make_latents(kernel, spec);
    const std::uint64_t pseed = derive_seed(spec.seed, kPairTag);

    std::vector<std::uint32_t> nbrs;
    for (std::uint32_t j = 0; j < spec.n; ++j) {
        if (j == root) continue;
        const double p = spec.rho * kernel.b(la.block[root], la.block[j]);
        if (pair_uniform(pseed, root, j) < p) nbrs.push_back(j);
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t a = 0; a < nbrs.size(); ++a) edges.emplace_back(0u, a + 1);
    for (std::uint32_t a = 0; a < nbrs.size(); ++a)
        for (std::uint32_t b = a + 1; b < nbrs.size(); ++b) {
            const double p = spec.rho * kernel.b(la.block[nbrs[a]], la.block[nbrs[b]]);
            if (pair_uniform(pseed, nbrs[a], nbrs[b]) < p) edges.emplace_back(a + 1, b + 1);
        }

    NeighborhoodSample ns;
    ns.degree = static_cast<std::uint32_t>(nbrs.size());
    ns.graph = Graph::from_edges(ns.degree + 1, edges);
    return ns;
}

} // namespace rcs
