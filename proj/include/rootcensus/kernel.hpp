#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rootcensus/motif.hpp"
#include "rootcensus/stats.hpp"

namespace rcs {

// Piecewise-constant symmetric kernel: block probability matrix B and
// block proportions pi partitioning [0,1].
struct Kernel {
    int k = 1;
    std::vector<double> B;  // k x k, row major, symmetric, entries in [0,1]
    std::vector<double> pi; // positive, sums to 1

    double b(int i, int j) const { return B[static_cast<std::size_t>(i) * k + j]; }
    double max_entry() const;
    // Mean kernel value sum pi_a pi_b B_ab; the empirical edge fraction
    // e(G)/e(K_n) concentrates at rho times this value.
    double mean_value() const;
    void validate() const;

    // Block of a latent position via cumulative proportions.
    int block_of(double x) const;
    std::vector<double> cumulative() const;

    static Kernel constant(double c);
};

Kernel parse_kernel_json(const std::string& text);
Kernel load_kernel_file(const std::string& path);
std::string kernel_to_json(const Kernel& k);

// s_b(F, kappa): expected edge-probability product of F with the root in
// block `root_block` and the other vertices placed by pi. Exact sum over
// k^(|F|-1) block assignments; rejected above 1e8 terms.
double theoretical_density(const Kernel& k, const RootedMotif& f, int root_block);

// Same expectation conditioning an arbitrary motif vertex (not necessarily
// the root) to the given block. Equal to theoretical_density when
// position == 0.
double positional_density(const Kernel& k, const RootedMotif& f, int position, int block);

// E X_F = s_b(F,kappa) rho^e(F) X_F(K_n, i).
double expected_count(const Kernel& k, const RootedMotif& f, int root_block,
                      std::uint64_t n, double rho);

// Leading-order variance of X_F: sum over the overlap family of F with
// itself, gluing excluded, of c_H s_b(H) rho^e(H) (n)_{|H|-1} / aut(H).
// The exact variance carries an extra (1 + O(1/n)) factor that is dropped
// here; see exact_count_moments for the full finite-n value.
double variance_count(const Kernel& k, const RootedMotif& f, int root_block,
                      std::uint64_t n, double rho);

// Target for Monte Carlo standardized-moment checks: (k-1)!! for even k,
// 0 for odd k; k <= 8.
double standardized_moment_target(int k);

// Exact finite-n mean vector and covariance matrix of the rooted counts
// (X_{F_1},...,X_{F_d}) at a vertex whose block is fixed, via the exact
// product identity: E[X_1 X_2] = sum c_H E[X_H].
struct CountMoments {
    std::vector<double> mean;
    Matrix cov;
};
CountMoments exact_count_moments(const Kernel& k, const std::vector<RootedMotif>& motifs,
                                 int root_block, std::uint64_t n, double rho);

// Same moments for the normalized densities s_i. The statistic divides by
// rho_hat = e(G)/e(K_n), which concentrates at rho * mean_value(kernel),
// so the plug-in scale is (rho * kappa_bar)^-e / X_F(K_n); equivalently
// the densities estimate s_b(F, kappa / kappa_bar). The O(n^-1/2)
// fluctuation of rho_hat itself is neglected (it is dominated by the count
// noise in every regime used here).
CountMoments exact_density_moments(const Kernel& k, const std::vector<RootedMotif>& motifs,
                                   int root_block, std::uint64_t n, double rho);

} // namespace rcs
