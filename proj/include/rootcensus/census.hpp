#pragma once

#include <cstdint>
#include <vector>

#include "rootcensus/graph.hpp"
#include "rootcensus/motif.hpp"

namespace rcs {

struct CountVector {
    RootedMotif motif;
    std::vector<std::int64_t> counts; // X_F(G,i) per vertex
};

// Rooted densities s_i(F_t, G) for every vertex and motif, together with
// the raw counts they were derived from.
struct DensityMatrix {
    std::vector<RootedMotif> motifs;
    std::uint32_t n = 0;
    double rho_hat = 0.0;                 // e(G)/e(K_n)
    std::vector<double> values;           // n x d, row major
    std::vector<CountVector> raw;

    double at(std::uint32_t vertex, std::size_t motif_index) const {
        return values[static_cast<std::size_t>(vertex) * motifs.size() + motif_index];
    }
};

// Number of subgraphs F' of G with [F', vertex] isomorphic to F
// (subgraph containment, not induced). Backtracking over injective
// embeddings anchored at the root, divided by aut(F) at the end.
std::int64_t rooted_count(const Graph& g, std::uint32_t vertex, const RootedMotif& f);

// All-vertex counts; uses closed-form per-vertex formulas for the motifs
// that admit them (edge, 2-star, cherry, triangle, square) and backtracking
// otherwise. The two routes agree bit-exactly.
CountVector count_all(const Graph& g, const RootedMotif& f, int workers = 1);

// Force the generic backtracking route (used to cross-check fast paths).
CountVector count_all_generic(const Graph& g, const RootedMotif& f, int workers = 1);

bool has_fast_path(const RootedMotif& f);

DensityMatrix census(const Graph& g, const std::vector<RootedMotif>& motifs, int workers = 1);

// Scratch-buffer variant for hot loops (replicate sweeps): single vertex,
// closed form where available.
class VertexCounter {
public:
    explicit VertexCounter(std::uint32_t n) : mark_(n, 0), hits_(n, 0) {}
    std::int64_t count(const Graph& g, std::uint32_t vertex, const RootedMotif& f);

private:
    std::vector<std::uint8_t> mark_;
    std::vector<std::uint32_t> hits_;
    std::vector<std::uint32_t> touched_;
};

} // namespace rcs
