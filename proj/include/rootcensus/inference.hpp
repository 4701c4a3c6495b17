#pragma once

#include <cstdint>
#include <vector>

#include "rootcensus/census.hpp"
#include "rootcensus/graph.hpp"
#include "rootcensus/kernel.hpp"
#include "rootcensus/louvain.hpp"
#include "rootcensus/stats.hpp"

namespace rcs {

struct BlockFit {
    int k = 0;
    std::vector<int> assignment; // per-vertex block label
    Matrix B_hat;                // empirical edge frequencies (MLE per block pair)
    double log_likelihood = 0.0;
    double aic = 0.0;
    double modularity = 0.0;

    // Fitted model as a sampling kernel: B_hat with the observed block
    // proportions; edge probabilities are B_hat directly (rho absorbed).
    Kernel to_kernel() const;
};

// Block-kernel estimator: Louvain partition, then B_hat[b][b'] as the
// fraction of realized pairs, with an AIC scan over nearby block counts
// (merging close blocks / splitting loose ones); ties go to the smaller k.
BlockFit fit_blockmodel(const Graph& g, std::uint64_t seed);

// B_hat and likelihood for a fixed partition.
BlockFit fit_given_partition(const Graph& g, const std::vector<int>& labels);

struct BootstrapMoments {
    int k = 0;
    int d = 0;
    int replicates = 0;
    std::vector<std::vector<double>> mean; // per block: d density means
    std::vector<Matrix> cov;               // per block: d x d covariance
    std::vector<int> empty_blocks;         // excluded (no vertices at this n)
};

// Parametric bootstrap of per-block density moments: N replicates on the
// fixed latent grid x_i = i/(n+1); per block, the mean density vector and
// the covariance of per-vertex deviations (divisor N-1 over replicate
// aggregates).
BootstrapMoments bootstrap_moments(const Kernel& kernel, std::uint32_t n, int N,
                                   const std::vector<RootedMotif>& motifs, std::uint64_t seed,
                                   int workers = 1);

// t_i = cov_b^{-1/2} (s_i - mean_b) with the symmetric inverse square root;
// rows are vertices. Throws on a near-singular block covariance.
Matrix standardize(const DensityMatrix& densities, const BootstrapMoments& moments,
                   const std::vector<int>& assignment);

std::vector<double> squared_norms(const Matrix& t_hat);

// Bootstrap critical value: R replicates from the fitted kernel, each
// standardized with the same moments; per replicate the max over vertices
// of |t_i|^2; returns the ceil((1-alpha)R)-th order statistic. When
// `pooled`, all n*R vertex statistics are pooled before taking the
// quantile instead (the literal one-quantile reading).
double critical_value(const Kernel& fitted, std::uint32_t n, double alpha, int R,
                      const BootstrapMoments& moments, const std::vector<RootedMotif>& motifs,
                      std::uint64_t seed, bool pooled = false, int workers = 1);

// All critical values derivable from one replicate sweep: the max-statistic
// quantile, the pooled single-quantile reading, and a union-bound value
// (per-vertex 1 - alpha/n quantile of the pooled replicate statistics,
// i.e. Bonferroni on the true finite-sample marginals).
struct CriticalValues {
    double max_quantile;
    double pooled_quantile;
    double marginal_bonferroni;
};
CriticalValues critical_value_detail(const Kernel& fitted, std::uint32_t n, double alpha, int R,
                                     const BootstrapMoments& moments,
                                     const std::vector<RootedMotif>& motifs, std::uint64_t seed,
                                     int workers = 1);

struct GofConfig {
    double alpha = 0.1;
    int moment_replicates = 50;   // N
    int critical_replicates = 500; // R
    std::uint64_t seed = 0;
    bool pooled_quantile = false;
    int workers = 1;
    std::vector<RootedMotif> motifs; // defaults to {triangle, square}
};

struct GofResult {
    BlockFit fit;
    BootstrapMoments moments;
    Matrix t_hat;              // n x d
    std::vector<double> stat;  // |t_i|^2
    double critical;
    double bonferroni;           // chi^2(d) quantile at 1 - alpha/n (asymptotic)
    double bonferroni_empirical; // union bound on the bootstrap marginals
    double alpha;
    std::vector<std::uint32_t> rejected;
};

GofResult gof_test(const Graph& g, const GofConfig& cfg);

// For each vertex in a seeded `vertex_frac` sample, closes an independent
// `close_frac` Bernoulli selection of the open 2-paths through it, with
// the vertex either an endpoint or the center of the path.
Graph triadic_closure(const Graph& g, double vertex_frac, double close_frac, std::uint64_t seed);

} // namespace rcs
