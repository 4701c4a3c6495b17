#pragma once

#include <cstdint>
#include <vector>

#include "rootcensus/graph.hpp"
#include "rootcensus/motif.hpp"

namespace rcs {

struct OverlapEntry {
    RootedMotif shape;
    std::int64_t coeff; // c_H: ordered pairs of rooted copies covering H
};

// The family of rooted graphs formable as the union of one rooted copy of
// f1 and one of f2 sharing their root, with covering multiplicities.
struct OverlapSet {
    RootedMotif f1, f2;
    // Sorted by (order, edge count, canonical edges) descending, so the
    // gluing product comes first.
    std::vector<OverlapEntry> entries;

    const OverlapEntry& gluing() const; // |H| = |f1|+|f2|-1, e(H) = e(f1)+e(f2)
};

// Disjoint union of f1 and f2 with the two roots identified.
RootedMotif gluing_product(const RootedMotif& f1, const RootedMotif& f2);

// Direct construction: enumerate all pairs of rooted copies in a complete
// host, classify unions up to rooted isomorphism, divide pair totals by the
// number of host placements. Requires |f1|+|f2| <= 11.
OverlapSet overlap_set(const RootedMotif& f1, const RootedMotif& f2);

// Independent route: coefficients obtained bottom-up over the containment
// preorder, c_H = X_{F1}(H)X_{F2}(H) - sum of smaller c_{H'} X_{H'}(H).
// Must equal overlap_set exactly; kept permanently as a mutual oracle.
OverlapSet inductive_coefficients(const RootedMotif& f1, const RootedMotif& f2);

struct IdentityReport {
    std::int64_t lhs; // X_{F1}(G,i) * X_{F2}(G,i)
    std::int64_t rhs; // sum c_H X_H(G,i)
    bool equal;
    std::vector<std::int64_t> per_shape; // X_H(G,i) in entry order
};

// Exact integer identity linking products of rooted counts to overlap
// counts, checked at one vertex.
IdentityReport verify_product_identity(const Graph& g, std::uint32_t vertex,
                                       const RootedMotif& f1, const RootedMotif& f2,
                                       const OverlapSet* precomputed = nullptr);

} // namespace rcs
