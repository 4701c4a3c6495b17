#include "rootcensus/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rootcensus/errors.hpp"
#include "rootcensus/parallel.hpp"
#include "rootcensus/rng.hpp"
#include "rootcensus/sample.hpp"

namespace rcs {
namespace {

constexpr std::uint64_t kMomentTag = 0x6d6f6dULL;
constexpr std::uint64_t kCriticalTag = 0x63726974ULL;
constexpr std::uint64_t kClosureTag = 0x636c6fULL;

struct PairCounts {
    Matrix edges;            // k x k, symmetric; within-block counted once
    std::vector<double> size; // block sizes
};

PairCounts block_pair_counts(const Graph& g, const std::vector<int>& labels, int k) {
    PairCounts pc{Matrix(k, k), std::vector<double>(k, 0.0)};
    for (std::uint32_t v = 0; v < g.order(); ++v) ++pc.size[labels[v]];
    for (const auto& [a, b] : g.edges()) {
        const int ca = labels[a], cb = labels[b];
        pc.edges.at(ca, cb) += 1.0;
        if (ca != cb) pc.edges.at(cb, ca) += 1.0;
    }
    return pc;
}

// Bernoulli log-likelihood of the graph under the partition's MLE block
// probabilities; exact zeros/ones contribute nothing.
double partition_log_likelihood(const PairCounts& pc, int k) {
    double ll = 0.0;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            const double pairs = a == b ? pc.size[a] * (pc.size[a] - 1.0) / 2.0
                                        : pc.size[a] * pc.size[b];
            if (pairs <= 0.0) continue;
            const double m = pc.edges.at(a, b);
            const double p = m / pairs;
            if (p > 0.0) ll += m * std::log(p);
            if (p < 1.0) ll += (pairs - m) * std::log1p(-p);
        }
    return ll;
}

double aic_of(double ll, int k) {
    return 2.0 * (static_cast<double>(k) * (k + 1) / 2.0) - 2.0 * ll;
}

std::vector<int> merge_blocks(const std::vector<int>& labels, int from, int into) {
    std::vector<int> out = labels;
    for (int& l : out) {
        if (l == from) l = into;
        if (l > from) --l;
    }
    return out;
}

} // namespace

Kernel BlockFit::to_kernel() const {
    Kernel kn;
    kn.k = k;
    kn.B = B_hat.v;
    kn.pi.resize(k, 0.0);
    for (int l : assignment) kn.pi[l] += 1.0;
    for (double& p : kn.pi) p /= static_cast<double>(assignment.size());
    kn.validate();
    return kn;
}

BlockFit fit_given_partition(const Graph& g, const std::vector<int>& labels) {
    require(!labels.empty() && labels.size() == g.order(), error::code::invalid_argument,
            "partition size mismatch");
    const int k = *std::max_element(labels.begin(), labels.end()) + 1;
    const PairCounts pc = block_pair_counts(g, labels, k);
    for (int b = 0; b < k; ++b)
        require(pc.size[b] > 0.0, error::code::domain,
                "degenerate partition: block " + std::to_string(b) + " is empty");

    BlockFit fit;
    fit.k = k;
    fit.assignment = labels;
    fit.B_hat = Matrix(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            // Ordered pairs: #{ij in G : i in P_a, j in P_b} over
            // |P_a| (|P_b| - 1{a=b}); within-block this is 2 e_bb over
            // ordered pairs, the MLE.
            const double ordered_edges = a == b ? 2.0 * pc.edges.at(a, b) : pc.edges.at(a, b);
            const double denom = pc.size[a] * (pc.size[b] - (a == b ? 1.0 : 0.0));
            fit.B_hat.at(a, b) = denom > 0.0 ? ordered_edges / denom : 0.0;
        }
    fit.log_likelihood = partition_log_likelihood(pc, k);
    fit.aic = aic_of(fit.log_likelihood, k);
    fit.modularity = modularity(g, labels);
    return fit;
}

BlockFit fit_blockmodel(const Graph& g, std::uint64_t seed) {
    require(g.edge_count() >= 1, error::code::domain, "cannot fit an empty graph");
    const LouvainResult base = louvain(g, seed);

    struct Candidate {
        std::vector<int> labels;
        int k;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({base.labels, base.k});

    // Merge pass: repeatedly fuse the block pair that best preserves the
    // likelihood, down to 90% of the base block count.
    const int k_lo = static_cast<int>(std::ceil(0.9 * base.k));
    {
        std::vector<int> cur = base.labels;
        int k = base.k;
        while (k - 1 >= std::max(1, k_lo) && k > 1) {
            double best_ll = -1e300;
            std::vector<int> best_labels;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    std::vector<int> merged = merge_blocks(cur, b, a);
                    const PairCounts pc = block_pair_counts(g, merged, k - 1);
                    const double ll = partition_log_likelihood(pc, k - 1);
                    if (ll > best_ll) {
                        best_ll = ll;
                        best_labels = std::move(merged);
                    }
                }
            cur = std::move(best_labels);
            --k;
            candidates.push_back({cur, k});
        }
    }

    // Split pass: re-run community detection inside the loosest block, up
    // to 110% of the base count.
    const int k_hi = static_cast<int>(std::floor(1.1 * base.k));
    {
        std::vector<int> cur = base.labels;
        int k = base.k;
        int attempt = 0;
        while (k + 1 <= k_hi) {
            // Loosest block: lowest internal edge density.
            const PairCounts pc = block_pair_counts(g, cur, k);
            int worst = -1;
            double worst_density = 2.0;
            for (int b = 0; b < k; ++b) {
                const double pairs = pc.size[b] * (pc.size[b] - 1.0) / 2.0;
                if (pc.size[b] < 4) continue;
                const double density = pairs > 0 ? pc.edges.at(b, b) / pairs : 0.0;
                if (density < worst_density) {
                    worst_density = density;
                    worst = b;
                }
            }
            if (worst < 0) break;
            // Induced subgraph of the worst block.
            std::vector<std::uint32_t> members;
            for (std::uint32_t v = 0; v < g.order(); ++v)
                if (cur[v] == worst) members.push_back(v);
            std::vector<int> local(g.order(), -1);
            for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
            std::vector<std::pair<std::uint32_t, std::uint32_t>> sub_edges;
            for (const auto& [a, b] : g.edges())
                if (local[a] >= 0 && local[b] >= 0)
                    sub_edges.emplace_back(static_cast<std::uint32_t>(local[a]),
                                           static_cast<std::uint32_t>(local[b]));
            if (sub_edges.empty()) break;
            const Graph sub = Graph::from_edges(static_cast<std::uint32_t>(members.size()), sub_edges);
            const LouvainResult split = louvain(sub, derive_seed(seed, 0x73706c69ULL + attempt));
            ++attempt;
            if (split.k < 2) break;
            // Keep the split's largest community in place, move the rest out.
            std::vector<int> next = cur;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (split.labels[i] > 0) next[members[i]] = k + split.labels[i] - 1;
            k += split.k - 1;
            cur = std::move(next);
            candidates.push_back({cur, k});
            if (k > k_hi) break;
        }
    }

    BlockFit best;
    bool have = false;
    for (const auto& cand : candidates) {
        BlockFit fit = fit_given_partition(g, cand.labels);
        if (!have || fit.aic < best.aic - 1e-9 ||
            (std::abs(fit.aic - best.aic) <= 1e-9 && fit.k < best.k)) {
            best = std::move(fit);
            have = true;
        }
    }
    return best;
}

BootstrapMoments bootstrap_moments(const Kernel& kernel, std::uint32_t n, int N,
                                   const std::vector<RootedMotif>& motifs, std::uint64_t seed,
                                   int workers) {
    require(N >= 2, error::code::invalid_argument, "bootstrap needs at least 2 replicates");
    kernel.validate();
    const int k = kernel.k;
    const std::size_t d = motifs.size();

    // Grid latents induce the block of every vertex, identical across
    // replicates.
    SampleSpec grid{n, 1.0, 0, LatentMode::fixed_grid, {}, workers};
    const LatentAssignment la = make_latents(kernel, grid);
    std::vector<std::vector<std::uint32_t>> block_members(k);
    for (std::uint32_t i = 0; i < n; ++i) block_members[la.block[i]].push_back(i);

    BootstrapMoments bm;
    bm.k = k;
    bm.d = static_cast<int>(d);
    bm.replicates = N;
    for (int b = 0; b < k; ++b)
        if (block_members[b].empty()) bm.empty_blocks.push_back(b);

    // Per replicate and block: average density vector and average outer
    // product of per-vertex values. Slots indexed by replicate for a
    // reduction whose order does not depend on scheduling.
    std::vector<std::vector<double>> rep_mean(N, std::vector<double>(k * d, 0.0));
    std::vector<std::vector<double>> rep_outer(N, std::vector<double>(k * d * d, 0.0));

    parallel_for(0, static_cast<std::size_t>(N), workers, [&](std::size_t t) {
        SampleSpec spec{n, 1.0, derive_seed(seed, kMomentTag + t), LatentMode::fixed_grid, {}, 1};
        auto [graph, latents] = sample_graph(kernel, spec);
        const DensityMatrix dm = census(graph, motifs, 1);
        auto& mean_slot = rep_mean[t];
        auto& outer_slot = rep_outer[t];
        for (int b = 0; b < k; ++b) {
            if (block_members[b].empty()) continue;
            const double inv = 1.0 / static_cast<double>(block_members[b].size());
            for (std::uint32_t i : block_members[b])
                for (std::size_t p = 0; p < d; ++p) {
                    const double sp = dm.at(i, p);
                    mean_slot[b * d + p] += sp * inv;
                    for (std::size_t q = 0; q < d; ++q)
                        outer_slot[(b * d + p) * d + q] += sp * dm.at(i, q) * inv;
                }
        }
    });

    bm.mean.assign(k, std::vector<double>(d, 0.0));
    bm.cov.assign(k, Matrix(d, d));
    for (int b = 0; b < k; ++b) {
        if (block_members[b].empty()) continue;
        for (int t = 0; t < N; ++t)
            for (std::size_t p = 0; p < d; ++p) bm.mean[b][p] += rep_mean[t][b * d + p];
        for (std::size_t p = 0; p < d; ++p) bm.mean[b][p] /= static_cast<double>(N);
        for (int t = 0; t < N; ++t)
            for (std::size_t p = 0; p < d; ++p)
                for (std::size_t q = 0; q < d; ++q)
                    bm.cov[b].at(p, q) += rep_outer[t][(b * d + p) * d + q];
        // sum_t avg_i (s - mean)(s - mean)^T = sum_t avg_i s s^T - N mean mean^T
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = 0; q < d; ++q)
                bm.cov[b].at(p, q) = (bm.cov[b].at(p, q) -
                                      N * bm.mean[b][p] * bm.mean[b][q]) /
                                     static_cast<double>(N - 1);
    }
    return bm;
}

Matrix standardize(const DensityMatrix& densities, const BootstrapMoments& moments,
                   const std::vector<int>& assignment) {
    const std::size_t d = densities.motifs.size();
    require(static_cast<int>(d) == moments.d, error::code::invalid_argument,
            "moments and densities disagree on motif count");
    require(assignment.size() == densities.n, error::code::invalid_argument,
            "assignment size mismatch");

    std::vector<Matrix> roots(moments.k);
    std::vector<char> needed(moments.k, 0);
    for (int b : assignment) {
        require(b >= 0 && b < moments.k, error::code::invalid_argument, "block label out of range");
        needed[b] = 1;
    }
    for (int b = 0; b < moments.k; ++b)
        if (needed[b]) {
            try {
                roots[b] = inverse_sqrt_symmetric(moments.cov[b]);
            } catch (const error& e) {
                fail(error::code::domain,
                     "block " + std::to_string(b) + ": " + e.what());
            }
        }

    Matrix t(densities.n, d);
    std::vector<double> centered(d);
    for (std::uint32_t i = 0; i < densities.n; ++i) {
        const int b = assignment[i];
        for (std::size_t p = 0; p < d; ++p) centered[p] = densities.at(i, p) - moments.mean[b][p];
        for (std::size_t p = 0; p < d; ++p) {
            double acc = 0.0;
            for (std::size_t q = 0; q < d; ++q) acc += roots[b].at(p, q) * centered[q];
            t.at(i, p) = acc;
        }
    }
    return t;
}

std::vector<double> squared_norms(const Matrix& t_hat) {
    std::vector<double> out(t_hat.rows, 0.0);
    for (std::size_t i = 0; i < t_hat.rows; ++i)
        for (std::size_t j = 0; j < t_hat.cols; ++j) out[i] += t_hat.at(i, j) * t_hat.at(i, j);
    return out;
}

namespace {

std::vector<std::vector<double>> replicate_statistics(const Kernel& fitted, std::uint32_t n,
                                                      int R, const BootstrapMoments& moments,
                                                      const std::vector<RootedMotif>& motifs,
                                                      std::uint64_t seed, int workers) {
    std::vector<std::vector<double>> rep_stats(R);
    parallel_for(0, static_cast<std::size_t>(R), workers, [&](std::size_t r) {
        SampleSpec spec{n, 1.0, derive_seed(seed, kCriticalTag + r), LatentMode::fixed_grid, {}, 1};
        auto [graph, latents] = sample_graph(fitted, spec);
        const DensityMatrix dm = census(graph, motifs, 1);
        rep_stats[r] = squared_norms(standardize(dm, moments, latents.block));
    });
    return rep_stats;
}

} // namespace

double critical_value(const Kernel& fitted, std::uint32_t n, double alpha, int R,
                      const BootstrapMoments& moments, const std::vector<RootedMotif>& motifs,
                      std::uint64_t seed, bool pooled, int workers) {
    require(R >= 1, error::code::invalid_argument, "need at least one replicate");
    require(alpha >= 0.0 && alpha < 1.0, error::code::invalid_argument, "alpha in [0,1)");
    const auto rep_stats = replicate_statistics(fitted, n, R, moments, motifs, seed, workers);
    std::vector<double> values;
    if (pooled) {
        for (const auto& s : rep_stats) values.insert(values.end(), s.begin(), s.end());
    } else {
        values.reserve(R);
        for (const auto& s : rep_stats) values.push_back(*std::max_element(s.begin(), s.end()));
    }
    return quantile_order_stat(std::move(values), 1.0 - alpha);
}

CriticalValues critical_value_detail(const Kernel& fitted, std::uint32_t n, double alpha, int R,
                                     const BootstrapMoments& moments,
                                     const std::vector<RootedMotif>& motifs, std::uint64_t seed,
                                     int workers) {
    require(R >= 1, error::code::invalid_argument, "need at least one replicate");
    require(alpha > 0.0 && alpha < 1.0, error::code::invalid_argument, "alpha in (0,1)");
    const auto rep_stats = replicate_statistics(fitted, n, R, moments, motifs, seed, workers);
    std::vector<double> maxima;
    std::vector<double> pooled;
    maxima.reserve(R);
    pooled.reserve(static_cast<std::size_t>(R) * n);
    for (const auto& s : rep_stats) {
        maxima.push_back(*std::max_element(s.begin(), s.end()));
        pooled.insert(pooled.end(), s.begin(), s.end());
    }
    CriticalValues cv{};
    cv.max_quantile = quantile_order_stat(maxima, 1.0 - alpha);
    cv.pooled_quantile = quantile_order_stat(pooled, 1.0 - alpha);
    cv.marginal_bonferroni =
        quantile_order_stat(std::move(pooled), 1.0 - alpha / static_cast<double>(n));
    return cv;
}

GofResult gof_test(const Graph& g, const GofConfig& cfg) {
    GofResult res;
    res.alpha = cfg.alpha;
    const std::vector<RootedMotif> motifs =
        cfg.motifs.empty() ? std::vector<RootedMotif>{motif_by_name("triangle"),
                                                      motif_by_name("square")}
                           : cfg.motifs;

    require(g.edge_count() < g.complete_edge_count(), error::code::domain,
            "complete graph: rho_hat = 1 and the fitted model has zero variance");
    res.fit = fit_blockmodel(g, cfg.seed);
    const Kernel fitted = res.fit.to_kernel();

    res.moments = bootstrap_moments(fitted, g.order(), cfg.moment_replicates, motifs,
                                    derive_seed(cfg.seed, 1), cfg.workers);
    const DensityMatrix dm = census(g, motifs, cfg.workers);
    res.t_hat = standardize(dm, res.moments, res.fit.assignment);
    res.stat = squared_norms(res.t_hat);
    const CriticalValues cvs =
        critical_value_detail(fitted, g.order(), cfg.alpha, cfg.critical_replicates, res.moments,
                              motifs, derive_seed(cfg.seed, 2), cfg.workers);
    res.critical = cfg.pooled_quantile ? cvs.pooled_quantile : cvs.max_quantile;
    res.bonferroni = chi_square_quantile(1.0 - cfg.alpha / static_cast<double>(g.order()),
                                         static_cast<int>(motifs.size()));
    res.bonferroni_empirical = cvs.marginal_bonferroni;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        if (res.stat[i] > res.critical) res.rejected.push_back(i);
    return res;
}

Graph triadic_closure(const Graph& g, double vertex_frac, double close_frac, std::uint64_t seed) {
    require(vertex_frac >= 0.0 && vertex_frac <= 1.0 && close_frac >= 0.0 && close_frac <= 1.0,
            error::code::invalid_argument, "fractions must lie in [0,1]");
    Rng rng(derive_seed(seed, kClosureTag));
    const std::uint32_t n = g.order();

    // Seeded sample of ceil(vertex_frac * n) vertices.
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    for (std::uint32_t i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<std::uint32_t>(rng.below(i + 1))]);
    const std::uint32_t chosen =
        static_cast<std::uint32_t>(std::ceil(vertex_frac * static_cast<double>(n)));

    // Open 2-paths at v in both roles: v an endpoint (v-a-w, edge v-w
    // missing) and v the center (a-v-b, edge a-b missing). Each open path
    // is sampled independently; repeated candidate edges get repeated
    // trials and collapse in the edge set.
    std::set<std::pair<std::uint32_t, std::uint32_t>> new_edges;
    for (std::uint32_t c = 0; c < chosen; ++c) {
        const std::uint32_t v = order[c];
        for (std::uint32_t a : g.neighbors(v))
            for (std::uint32_t w : g.neighbors(a)) {
                if (w == v || g.has_edge(v, w)) continue;
                if (rng.uniform() < close_frac)
                    new_edges.emplace(std::min(v, w), std::max(v, w));
            }
        const auto nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (g.has_edge(nb[i], nb[j])) continue;
                if (rng.uniform() < close_frac)
                    new_edges.emplace(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
            }
    }

    auto edges = g.edges();
    for (const auto& e : new_edges) edges.push_back(e);
    return Graph::from_edges(n, edges);
}

} // namespace rcs
