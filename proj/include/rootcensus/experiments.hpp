#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootcensus/kernel.hpp"
#include "rootcensus/motif.hpp"
#include "rootcensus/stats.hpp"

namespace rcs {

struct ExperimentConfig {
    Kernel kernel;
    std::uint32_t n = 1000;
    double rho_exponent = 1.0 / 3.0;  // rho = n^-a unless rho_override is set
    std::optional<double> rho_override;
    int replicates = 200;
    std::vector<RootedMotif> motifs;
    int root_block = 0;               // target vertex policy: root fixed at this block's center
    std::uint64_t seed = 0;
    int workers = 1;

    double rho() const;
    double root_latent() const;       // midpoint of the root block's interval
};

struct MomentEntry {
    int order;      // moment order, or combined order for mixed entries
    int order2;     // second coordinate power (mixed entries only, else 0)
    double value;
    double se;      // batch-means standard error (10 batches)
    double target;  // (k-1)!! / 0, or the pair-partition value for mixed moments
};

// Per-vertex limit experiment: replicates with the root vertex's latent
// fixed, densities standardized by the exact blockmodel mean/covariance,
// moment table, QQ data of |t|^2 against chi^2(d), and a KS test.
struct MomentReport {
    std::uint32_t n;
    double rho;
    int replicates;
    double min_n_rho_m;                      // regime diagnostic over motifs
    bool supercritical;                       // min_n_rho_m > 1
    std::vector<std::string> motif_names;
    std::vector<std::vector<MomentEntry>> per_motif; // orders 2..6
    std::vector<MomentEntry> mixed;                  // d >= 2: whitened cross moments
    std::vector<double> qq_sample;                   // sorted |t|^2
    std::vector<double> qq_theory;                   // chi^2(d) quantiles
    double ks_statistic;
    double ks_p_value;
};

MomentReport vertex_clt_experiment(const ExperimentConfig& cfg);

// Zero-one regime experiment: fraction of replicates with a positive rooted
// count at the target vertex, along a schedule of graph sizes. Only motifs
// whose non-root vertices all touch the root can use the fast neighborhood
// restriction; others sample the full graph.
struct SubcriticalReport {
    std::vector<std::uint32_t> sizes;
    std::vector<double> rho;
    std::vector<double> positive_frequency;
    std::vector<double> markov_bound; // E X_F, an upper bound on the frequency
};

SubcriticalReport subcritical_experiment(const ExperimentConfig& cfg,
                                         const std::vector<std::uint32_t>& size_schedule);

// Averaged central-limit experiment for f over (density vector, label).
enum class AvgMap {
    identity,        // f(s, y) = s
    label_indicator, // f(s, y) = s * 1{y = 1}, y iid Bernoulli(label_prob)
};

struct AvgCltConfig {
    ExperimentConfig base;
    AvgMap map = AvgMap::identity;
    double label_prob = 0.5;
};

struct AvgCltReport {
    std::uint32_t n;
    double rho;
    int replicates;
    // Exact limit covariance of the sqrt(n)-scaled mean. The density mean
    // is an order-|F| U-statistic (normalized by the edge fraction), so
    // the projection onto one latent sums the conditional density over
    // every motif position; conditioning only at the root understates the
    // variance (by |F|^2 for vertex-transitive motifs).
    Matrix exact_cov;
    Matrix root_only_cov;  // the naive per-vertex limit value, for reference
    Matrix empirical_cov;  // of sqrt(n) * (replicate mean - grand mean)
    std::vector<double> ks_p_value; // per coordinate, against Normal(0, exact variance)
    bool degenerate;                // exact covariance is zero: no normal limit
    double max_abs_scaled_mean;     // collapse diagnostic for the degenerate case
};

AvgCltReport average_clt_experiment(const AvgCltConfig& cfg);

// GoF calibration experiments (level under the null, power under triadic
// closure). Each pipeline samples a graph, fits it, and runs the full test.
struct GofCalibrationConfig {
    Kernel kernel;
    std::uint32_t n = 200;
    double rho_exponent = 1.0 / 3.0;
    double alpha = 0.1;
    int pipelines = 200;
    int moment_replicates = 50;
    int critical_replicates = 500;
    std::uint64_t seed = 0;
    int workers = 1;
    bool perturb = false;         // apply triadic closure before testing
    double vertex_frac = 0.05;
    double close_frac = 0.05;
};

struct GofCalibrationReport {
    int pipelines;
    double alpha;
    int bootstrap_rejections;
    int bonferroni_rejections;        // asymptotic chi^2 bound
    int union_bound_rejections;       // Bonferroni on the bootstrap marginals
    double bootstrap_rate;
    double bonferroni_rate;
    double union_bound_rate;
    double band_lo, band_hi;          // 99% binomial band around alpha
    int errors;                       // pipelines that failed to run
    std::vector<double> critical_values;
    std::vector<double> bonferroni_values;
};

GofCalibrationReport gof_calibration_experiment(const GofCalibrationConfig& cfg);

// Named presets for the validate entry point; overrides_json may adjust
// n, replicates, seed, alpha, workers. Returns a JSON report string and,
// for QQ presets, fills `qq_table` with a delimited table.
std::string run_preset(const std::string& name, const std::string& overrides_json,
                       std::string* qq_table);
std::vector<std::string> preset_names();

} // namespace rcs
