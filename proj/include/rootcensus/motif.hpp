#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootcensus/rational.hpp"

namespace rcs {

constexpr int kMaxMotifOrder = 10;

// Small connected graph with a distinguished root vertex, stored in
// canonical form: root is vertex 0 and the non-root labels are the
// lexicographic minimizer of the edge list over all root-preserving
// relabelings. Two rooted motifs are isomorphic iff their canonical edge
// lists are identical.
class RootedMotif {
public:
    // `edges` over vertices 0..order-1, `root` any vertex; the constructor
    // canonicalizes. Throws on disconnected/self-loop/duplicate-edge input
    // and on order > kMaxMotifOrder.
    RootedMotif(int order, int root, std::vector<std::pair<int, int>> edges,
                std::string name = "");

    int order() const { return order_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    // Canonical edge list: pairs (a,b) with a<b, sorted; root is vertex 0.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& name() const { return name_; }

    // Order of the root-preserving automorphism group.
    std::uint64_t aut() const { return aut_; }

    // max e(H)/(|H|-1) over vertex subsets containing the root, |H| > 1.
    const Rational& m() const { return m_; }
    // Same over subsets excluding the root; needs order >= 3.
    const Rational& gamma() const;
    bool has_gamma() const { return gamma_.has_value(); }

    int root_degree() const;
    bool adjacent(int a, int b) const { return (adj_[a] >> b) & 1u; }
    std::uint32_t adjacency_mask(int v) const { return adj_[v]; }

    friend bool operator==(const RootedMotif& a, const RootedMotif& b) {
        return a.order_ == b.order_ && a.edges_ == b.edges_;
    }
    friend bool operator<(const RootedMotif& a, const RootedMotif& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_;
        return a.edges_ < b.edges_;
    }

    std::string describe() const;  // name if known, else order/edges summary

private:
    int order_;
    std::vector<std::pair<int, int>> edges_;
    std::array<std::uint32_t, kMaxMotifOrder> adj_{};
    std::uint64_t aut_ = 1;
    Rational m_;
    std::optional<Rational> gamma_;
    std::string name_;
};

// Re-canonicalization is the identity on an already canonical motif.
RootedMotif canonical_form(const RootedMotif& m);

// Rooted copies of F in the complete graph: (n-1)(n-2)...(n-|F|+1)/aut(F).
// Exact integer; 0 when n < |F|; throws error::code::overflow if the value
// does not fit in int64.
std::int64_t count_in_complete(const RootedMotif& f, std::uint64_t n);

// Named motifs used throughout: edge, cherry (2-path rooted at an end),
// 2-star (2-path rooted at the center), triangle, square (rooted 4-cycle),
// diamond (two triangles sharing the root edge), bowtie (two triangles
// sharing only the root), shovel (triangle with a pendant edge on a
// non-root vertex), tripod (3-star rooted at a leaf), 3-star.
const std::vector<RootedMotif>& motif_catalog();
const RootedMotif& motif_by_name(const std::string& name);
bool is_catalog_name(const std::string& name);

// JSON record {"order":k,"root":r,"edges":[[a,b],...]}; catalog names are
// accepted as aliases.
RootedMotif parse_motif_json(const std::string& text);
std::string motif_to_json(const RootedMotif& m);

// Comma-separated names, file paths (JSON motif records) or inline JSON.
std::vector<RootedMotif> resolve_motifs(const std::string& spec);

} // namespace rcs
