#include "rootcensus/motif.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "rootcensus/errors.hpp"

namespace rcs {
namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList sorted_edges(EdgeList e) {
    for (auto& [a, b] : e)
        if (a > b) std::swap(a, b);
    std::sort(e.begin(), e.end());
    return e;
}

bool connected(int order, const EdgeList& edges) {
    if (order <= 1) return true;
    std::vector<std::vector<int>> adj(order);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(order, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == order;
}

// Minimal edge list over root-preserving relabelings, plus the number of
// relabelings attaining it (= order of the root-preserving automorphism
// group). Brute force by design: motifs are tiny.
std::pair<EdgeList, std::uint64_t> canonicalize(int order, const EdgeList& edges) {
    std::vector<int> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeList best;
    std::uint64_t hits = 0;
    EdgeList mapped;
    mapped.reserve(edges.size());
    do {
        mapped.clear();
        for (const auto& [a, b] : edges) {
            int u = perm[a], v = perm[b];
            if (u > v) std::swap(u, v);
            mapped.emplace_back(u, v);
        }
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best) {
            best = mapped;
            hits = 1;
        } else if (mapped == best) {
            ++hits;
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return {std::move(best), hits};
}

Rational max_density_over_subsets(int order, const EdgeList& edges, bool with_root) {
    Rational best(0, 1);
    bool found = false;
    for (std::uint32_t mask = 0; mask < (1u << order); ++mask) {
        const bool has_root = mask & 1u;
        if (with_root != has_root) continue;
        const int size = __builtin_popcount(mask);
        if (size < 2) continue;
        std::int64_t e = 0;
        for (const auto& [a, b] : edges)
            if ((mask >> a & 1u) && (mask >> b & 1u)) ++e;
        const Rational r(e, size - 1);
        if (!found || best < r) {
            best = r;
            found = true;
        }
    }
    return best;
}

} // namespace

RootedMotif::RootedMotif(int order, int root, std::vector<std::pair<int, int>> edges,
                         std::string name)
    : order_(order), name_(std::move(name)) {
    require(order >= 2 && order <= kMaxMotifOrder, error::code::invalid_argument,
            "motif order must be in [2, " + std::to_string(kMaxMotifOrder) + "]");
    require(root >= 0 && root < order, error::code::invalid_argument, "motif root out of range");
    for (auto& [a, b] : edges) {
        require(a >= 0 && a < order && b >= 0 && b < order, error::code::invalid_argument,
                "motif edge endpoint out of range");
        require(a != b, error::code::invalid_argument, "motif has a self-loop");
    }
    // Put the root at label 0 before canonicalizing.
    if (root != 0)
        for (auto& [a, b] : edges) {
            if (a == root) a = 0; else if (a == 0) a = root;
            if (b == root) b = 0; else if (b == 0) b = root;
        }
    EdgeList e = sorted_edges(std::move(edges));
    require(std::adjacent_find(e.begin(), e.end()) == e.end(), error::code::invalid_argument,
            "motif has a duplicate edge");
    require(!e.empty(), error::code::invalid_argument, "motif has no edges");
    require(connected(order, e), error::code::invalid_argument, "motif must be connected");

    auto [canon, aut] = canonicalize(order, e);
    edges_ = std::move(canon);
    aut_ = aut;
    for (const auto& [a, b] : edges_) {
        adj_[a] |= 1u << b;
        adj_[b] |= 1u << a;
    }
    m_ = max_density_over_subsets(order_, edges_, /*with_root=*/true);
    if (order_ >= 3) gamma_ = max_density_over_subsets(order_, edges_, /*with_root=*/false);
}

const Rational& RootedMotif::gamma() const {
    require(gamma_.has_value(), error::code::domain,
            "gamma is undefined for motifs with fewer than 3 vertices");
    return *gamma_;
}

int RootedMotif::root_degree() const { return __builtin_popcount(adj_[0]); }

std::string RootedMotif::describe() const {
    if (!name_.empty()) return name_;
    std::ostringstream os;
    os << "motif(order=" << order_ << ", edges=";
    for (const auto& [a, b] : edges_) os << a << "-" << b << ",";
    os << "root=0)";
    return os.str();
}

RootedMotif canonical_form(const RootedMotif& m) {
    return RootedMotif(m.order(), 0, m.edges(), m.name());
}

std::int64_t count_in_complete(const RootedMotif& f, std::uint64_t n) {
    if (n < static_cast<std::uint64_t>(f.order())) return 0;
    __int128 acc = 1;
    for (int t = 1; t < f.order(); ++t) {
        acc *= static_cast<std::int64_t>(n - t);
        require(acc <= static_cast<__int128>(INT64_MAX) * static_cast<__int128>(f.aut()),
                error::code::overflow, "complete-graph count overflows 64 bits");
    }
    require(acc % f.aut() == 0, error::code::internal,
            "falling factorial not divisible by automorphism count");
    return static_cast<std::int64_t>(acc / f.aut());
}

const std::vector<RootedMotif>& motif_catalog() {
    static const std::vector<RootedMotif> cat = [] {
        std::vector<RootedMotif> v;
        v.emplace_back(2, 0, EdgeList{{0, 1}}, "edge");
        v.emplace_back(3, 0, EdgeList{{0, 1}, {1, 2}}, "cherry");
        v.emplace_back(3, 0, EdgeList{{0, 1}, {0, 2}}, "2-star");
        v.emplace_back(3, 0, EdgeList{{0, 1}, {0, 2}, {1, 2}}, "triangle");
        v.emplace_back(4, 0, EdgeList{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, "square");
        v.emplace_back(4, 0, EdgeList{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, "diamond");
        v.emplace_back(5, 0, EdgeList{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}, "bowtie");
        v.emplace_back(4, 0, EdgeList{{0, 1}, {0, 2}, {1, 2}, {2, 3}}, "shovel");
        v.emplace_back(4, 0, EdgeList{{0, 1}, {1, 2}, {1, 3}}, "tripod");
        v.emplace_back(4, 0, EdgeList{{0, 1}, {0, 2}, {0, 3}}, "3-star");
        return v;
    }();
    return cat;
}

const RootedMotif& motif_by_name(const std::string& name) {
    for (const auto& m : motif_catalog())
        if (m.name() == name) return m;
    fail(error::code::invalid_argument, "unknown motif name: " + name);
}

bool is_catalog_name(const std::string& name) {
    for (const auto& m : motif_catalog())
        if (m.name() == name) return true;
    return false;
}

RootedMotif parse_motif_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(error::code::parse, std::string("motif JSON: ") + e.what());
    }
    if (j.is_string()) return motif_by_name(j.get<std::string>());
    require(j.is_object() && j.contains("order") && j.contains("edges"),
            error::code::parse, "motif JSON needs {order, root, edges}");
    const int order = j.at("order").get<int>();
    const int root = j.value("root", 0);
    EdgeList edges;
    for (const auto& e : j.at("edges")) {
        require(e.is_array() && e.size() == 2, error::code::parse, "motif edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return RootedMotif(order, root, std::move(edges), j.value("name", std::string{}));
}

std::string motif_to_json(const RootedMotif& m) {
    nlohmann::ordered_json j;
    if (!m.name().empty()) j["name"] = m.name();
    j["order"] = m.order();
    j["root"] = 0;
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : m.edges()) j["edges"].push_back({a, b});
    return j.dump();
}

std::vector<RootedMotif> resolve_motifs(const std::string& spec) {
    std::vector<RootedMotif> out;
    std::string s = spec;
    if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(s);
        } catch (const nlohmann::json::exception& e) {
            fail(error::code::parse, std::string("motif spec JSON: ") + e.what());
        }
        if (j.is_array())
            for (const auto& item : j) out.push_back(parse_motif_json(item.dump()));
        else
            out.push_back(parse_motif_json(s));
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (is_catalog_name(tok)) {
            out.push_back(motif_by_name(tok));
        } else {
            std::ifstream f(tok);
            require(f.good(), error::code::invalid_argument,
                    "motif '" + tok + "' is neither a catalog name nor a readable file");
            std::stringstream buf;
            buf << f.rdbuf();
            out.push_back(parse_motif_json(buf.str()));
        }
    }
    require(!out.empty(), error::code::invalid_argument, "no motifs given");
    return out;
}

} // namespace rcs
