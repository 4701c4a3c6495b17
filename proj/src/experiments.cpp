#include "rootcensus/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rootcensus/census.hpp"
#include "rootcensus/errors.hpp"
#include "rootcensus/fixtures.hpp"
#include "rootcensus/inference.hpp"
#include "rootcensus/parallel.hpp"
#include "rootcensus/rng.hpp"
#include "rootcensus/sample.hpp"

namespace rcs {
namespace {

constexpr std::uint64_t kReplicateTag = 0x726570ULL;
constexpr std::uint64_t kLatentTag = 0x766c6174ULL;
constexpr std::uint64_t kLabelTag = 0x79746167ULL;
constexpr std::uint64_t kPipelineTag = 0x70697065ULL;

std::vector<double> replicate_latents(const ExperimentConfig& cfg, std::uint64_t rep,
                                      bool pin_root) {
    Rng rng(derive_seed(derive_seed(cfg.seed, kLatentTag), rep));
    std::vector<double> x(cfg.n);
    for (auto& v : x) v = rng.uniform();
    if (pin_root && cfg.n > 0) x[0] = cfg.root_latent();
    return x;
}

double density_of_count(std::int64_t count, const RootedMotif& f, const Graph& g) {
    const double rho_hat =
        static_cast<double>(g.edge_count()) / static_cast<double>(g.complete_edge_count());
    return std::pow(rho_hat, -f.edge_count()) * static_cast<double>(count) /
           static_cast<double>(count_in_complete(f, g.order()));
}

bool root_dominated(const RootedMotif& f) {
    for (int v = 1; v < f.order(); ++v)
        if (!f.adjacent(0, v)) return false;
    return true;
}

} // namespace

double ExperimentConfig::rho() const {
    if (rho_override) return *rho_override;
    return std::pow(static_cast<double>(n), -rho_exponent);
}

double ExperimentConfig::root_latent() const {
    require(root_block >= 0 && root_block < kernel.k, error::code::invalid_argument,
            "root block out of range");
    double lo = 0.0;
    for (int b = 0; b < root_block; ++b) lo += kernel.pi[b];
    return lo + kernel.pi[root_block] / 2.0;
}

MomentReport vertex_clt_experiment(const ExperimentConfig& cfg) {
    require(!cfg.motifs.empty(), error::code::invalid_argument, "experiment needs motifs");
    cfg.kernel.validate();
    const double rho = cfg.rho();
    const std::size_t d = cfg.motifs.size();
    const int L = cfg.replicates;
    require(L >= 20, error::code::invalid_argument, "need at least 20 replicates");

    MomentReport rep;
    rep.n = cfg.n;
    rep.rho = rho;
    rep.replicates = L;
    rep.min_n_rho_m = 1e300;
    for (const auto& f : cfg.motifs) {
        rep.motif_names.push_back(f.describe());
        rep.min_n_rho_m =
            std::min(rep.min_n_rho_m, cfg.n * std::pow(rho, f.m().value()));
    }
    rep.supercritical = rep.min_n_rho_m > 1.0;

    const CountMoments dm = exact_density_moments(cfg.kernel, cfg.motifs, cfg.root_block,
                                                  cfg.n, rho);
    const Matrix whiten = inverse_sqrt_symmetric(dm.cov);

    std::vector<std::vector<double>> t_rows(L, std::vector<double>(d, 0.0));
    parallel_for(0, static_cast<std::size_t>(L), cfg.workers, [&](std::size_t l) {
        SampleSpec spec{cfg.n, rho, derive_seed(cfg.seed, kReplicateTag + l),
                        LatentMode::fixed_list, replicate_latents(cfg, l, true), 1};
        auto [graph, latents] = sample_graph(cfg.kernel, spec);
        VertexCounter counter(cfg.n);
        std::vector<double> centered(d);
        for (std::size_t t = 0; t < d; ++t) {
            const std::int64_t c = counter.count(graph, 0, cfg.motifs[t]);
            centered[t] = density_of_count(c, cfg.motifs[t], graph) - dm.mean[t];
        }
        for (std::size_t p = 0; p < d; ++p) {
            double acc = 0.0;
            for (std::size_t q = 0; q < d; ++q) acc += whiten.at(p, q) * centered[q];
            t_rows[l][p] = acc;
        }
    });

    // Per-motif standardized moments, orders 2..6.
    for (std::size_t t = 0; t < d; ++t) {
        std::vector<double> z(L);
        for (int l = 0; l < L; ++l) z[l] = t_rows[l][t];
        std::vector<MomentEntry> entries;
        for (int order = 2; order <= 6; ++order) {
            MomentEntry e{};
            e.order = order;
            e.value = standardized_moment(z, order);
            e.se = batch_se(z, 10, [order](const std::vector<double>& blk) {
                return standardized_moment(blk, order);
            });
            e.target = standardized_moment_target(order);
            entries.push_back(e);
        }
        rep.per_motif.push_back(std::move(entries));
    }

    // Whitened cross moments: pair-partition targets for the first two
    // coordinates (E uv = 0, E u^2 v^2 = 1, E u^3 v = 0).
    if (d >= 2) {
        auto mixed = [&](int p1, int p2) {
            MomentEntry e{};
            e.order = p1;
            e.order2 = p2;
            std::vector<double> prod(L);
            for (int l = 0; l < L; ++l)
                prod[l] = std::pow(t_rows[l][0], p1) * std::pow(t_rows[l][1], p2);
            e.value = mean(prod);
            e.se = batch_se(prod, 10, [](const std::vector<double>& blk) { return mean(blk); });
            const int total = p1 + p2;
            if (total % 2 == 1) e.target = 0.0;
            else if (p1 == 1 && p2 == 1) e.target = 0.0;
            else if (p1 == 2 && p2 == 2) e.target = 1.0;
            else if ((p1 == 3 && p2 == 1) || (p1 == 1 && p2 == 3)) e.target = 0.0;
            else e.target = standardized_moment_target(p1) * standardized_moment_target(p2);
            rep.mixed.push_back(e);
            return e;
        };
        mixed(1, 1);
        mixed(2, 2);
        mixed(3, 1);
    }

    rep.qq_sample.resize(L);
    for (int l = 0; l < L; ++l) {
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += t_rows[l][t] * t_rows[l][t];
        rep.qq_sample[l] = s;
    }
    std::sort(rep.qq_sample.begin(), rep.qq_sample.end());
    rep.qq_theory.resize(L);
    for (int l = 0; l < L; ++l)
        rep.qq_theory[l] =
            chi_square_quantile((l + 0.5) / static_cast<double>(L), static_cast<int>(d));
    const auto ks = ks_test_sorted(rep.qq_sample, [&](double v) {
        return chi_square_cdf(v, static_cast<int>(d));
    });
    rep.ks_statistic = ks.statistic;
    rep.ks_p_value = ks.p_value;
    return rep;
}

SubcriticalReport subcritical_experiment(const ExperimentConfig& cfg,
                                         const std::vector<std::uint32_t>& size_schedule) {
    require(cfg.motifs.size() == 1, error::code::invalid_argument,
            "regime experiment uses a single motif");
    const RootedMotif& f = cfg.motifs.front();
    const bool fast = root_dominated(f);
    SubcriticalReport rep;
    for (const std::uint32_t n : size_schedule) {
        ExperimentConfig local = cfg;
        local.n = n;
        const double rho = local.rho();
        const int L = cfg.replicates;
        std::vector<char> positive(L, 0);
        parallel_for(0, static_cast<std::size_t>(L), cfg.workers, [&](std::size_t l) {
            SampleSpec spec{n, rho, derive_seed(derive_seed(cfg.seed, n), kReplicateTag + l),
                            LatentMode::fixed_list, replicate_latents(local, l, true), 1};
            std::int64_t count = 0;
            if (fast) {
                const NeighborhoodSample ns = sample_root_neighborhood(cfg.kernel, spec, 0);
                VertexCounter counter(ns.graph.order());
                count = counter.count(ns.graph, 0, f);
            } else {
                auto [graph, latents] = sample_graph(cfg.kernel, spec);
                VertexCounter counter(n);
                count = counter.count(graph, 0, f);
            }
            positive[l] = count > 0 ? 1 : 0;
        });
        double freq = 0.0;
        for (char c : positive) freq += c;
        freq /= static_cast<double>(L);
        rep.sizes.push_back(n);
        rep.rho.push_back(rho);
        rep.positive_frequency.push_back(freq);
        rep.markov_bound.push_back(expected_count(cfg.kernel, f, cfg.root_block, n, rho));
    }
    return rep;
}

AvgCltReport average_clt_experiment(const AvgCltConfig& cfg) {
    const ExperimentConfig& base = cfg.base;
    require(!base.motifs.empty(), error::code::invalid_argument, "experiment needs motifs");
    base.kernel.validate();
    const double rho = base.rho();
    const std::size_t d = base.motifs.size();
    const int L = base.replicates;

    AvgCltReport rep;
    rep.n = base.n;
    rep.rho = rho;
    rep.replicates = L;

    // Exact limit covariance of sqrt(n) times the density mean. The mean
    // over vertices is (up to vanishing noise) an order-|F| U-statistic
    // normalized by the empirical edge fraction, so its projection onto a
    // single latent carries one conditional density per motif POSITION,
    // plus the edge-fraction term:
    //   G_t(x, y) = f-part + q * [ sum_v s^{(v)}_x(F_t) - s_x(F_t)
    //                              - 2 e(F_t) M_t (r(x) - kbar) / kbar ]
    // with M_t = E s_x(F_t), r(x) the kernel row mean, all densities
    // normalized by kbar^e. Conditioning only at the root (the literal
    // per-vertex limit value) would understate the variance: for a
    // vertex-transitive motif the projection is |F| times s_x. The
    // root-only covariance is kept in the report for reference.
    const int kblocks = base.kernel.k;
    const double kappa_bar = base.kernel.mean_value();
    std::vector<std::vector<double>> s_block(kblocks, std::vector<double>(d, 0.0));
    std::vector<std::vector<double>> w_block(kblocks, std::vector<double>(d, 0.0));
    for (int b = 0; b < kblocks; ++b)
        for (std::size_t t = 0; t < d; ++t) {
            const double norm = std::pow(kappa_bar, base.motifs[t].edge_count());
            s_block[b][t] = theoretical_density(base.kernel, base.motifs[t], b) / norm;
            for (int v = 0; v < base.motifs[t].order(); ++v)
                w_block[b][t] += positional_density(base.kernel, base.motifs[t], v, b) / norm;
        }
    std::vector<double> row_mean(kblocks, 0.0);
    for (int b = 0; b < kblocks; ++b)
        for (int a = 0; a < kblocks; ++a) row_mean[b] += base.kernel.pi[a] * base.kernel.b(b, a);
    std::vector<double> m_t(d, 0.0);
    for (int b = 0; b < kblocks; ++b)
        for (std::size_t t = 0; t < d; ++t) m_t[t] += base.kernel.pi[b] * s_block[b][t];

    const double q = cfg.map == AvgMap::label_indicator ? cfg.label_prob : 1.0;
    // Atoms of (block, label) with their probabilities; label enters only
    // through the f-part.
    struct Atom {
        double prob;
        std::vector<double> g;
    };
    std::vector<Atom> atoms;
    for (int b = 0; b < kblocks; ++b)
        for (int y = 0; y <= (cfg.map == AvgMap::label_indicator ? 1 : 0); ++y) {
            Atom at;
            at.prob = base.kernel.pi[b] *
                      (cfg.map == AvgMap::label_indicator ? (y ? cfg.label_prob
                                                               : 1.0 - cfg.label_prob)
                                                          : 1.0);
            at.g.resize(d);
            for (std::size_t t = 0; t < d; ++t) {
                const double fpart =
                    cfg.map == AvgMap::label_indicator ? s_block[b][t] * y : s_block[b][t];
                const double drift = (w_block[b][t] - s_block[b][t]) -
                                     2.0 * base.motifs[t].edge_count() * m_t[t] *
                                         (row_mean[b] - kappa_bar) / kappa_bar;
                at.g[t] = fpart + q * drift;
            }
            atoms.push_back(std::move(at));
        }
    auto atom_cov = [&](const std::vector<std::vector<double>>& values) {
        std::vector<double> mu(d, 0.0);
        for (std::size_t a = 0; a < atoms.size(); ++a)
            for (std::size_t t = 0; t < d; ++t) mu[t] += atoms[a].prob * values[a][t];
        Matrix c(d, d);
        for (std::size_t a = 0; a < atoms.size(); ++a)
            for (std::size_t t = 0; t < d; ++t)
                for (std::size_t u = 0; u < d; ++u)
                    c.at(t, u) +=
                        atoms[a].prob * (values[a][t] - mu[t]) * (values[a][u] - mu[u]);
        return c;
    };
    std::vector<std::vector<double>> g_values, froot_values;
    {
        std::size_t a = 0;
        for (int b = 0; b < kblocks; ++b)
            for (int y = 0; y <= (cfg.map == AvgMap::label_indicator ? 1 : 0); ++y, ++a) {
                g_values.push_back(atoms[a].g);
                std::vector<double> fr(d);
                for (std::size_t t = 0; t < d; ++t)
                    fr[t] = cfg.map == AvgMap::label_indicator ? s_block[b][t] * y
                                                               : s_block[b][t];
                froot_values.push_back(std::move(fr));
            }
    }
    rep.exact_cov = atom_cov(g_values);
    rep.root_only_cov = atom_cov(froot_values);

    double max_sigma = 0.0;
    for (double v : rep.exact_cov.v) max_sigma = std::max(max_sigma, std::abs(v));
    rep.degenerate = max_sigma < 1e-12;

    std::vector<std::vector<double>> means(L, std::vector<double>(d, 0.0));
    parallel_for(0, static_cast<std::size_t>(L), base.workers, [&](std::size_t l) {
        SampleSpec spec{base.n, rho, derive_seed(base.seed, kReplicateTag + l),
                        LatentMode::fixed_list, replicate_latents(base, l, false), 1};
        auto [graph, latents] = sample_graph(base.kernel, spec);
        const DensityMatrix dm = census(graph, base.motifs, 1);
        Rng label_rng(derive_seed(derive_seed(base.seed, kLabelTag), l));
        std::vector<double> acc(d, 0.0);
        for (std::uint32_t i = 0; i < base.n; ++i) {
            double w = 1.0;
            if (cfg.map == AvgMap::label_indicator)
                w = label_rng.uniform() < cfg.label_prob ? 1.0 : 0.0;
            if (w == 0.0) continue;
            for (std::size_t t = 0; t < d; ++t) acc[t] += w * dm.at(i, t);
        }
        for (std::size_t t = 0; t < d; ++t) means[l][t] = acc[t] / static_cast<double>(base.n);
    });

    // sqrt(n)-scaled deviations around the grand mean.
    std::vector<double> grand(d, 0.0);
    for (const auto& m : means)
        for (std::size_t t = 0; t < d; ++t) grand[t] += m[t];
    for (auto& g : grand) g /= static_cast<double>(L);
    const double sn = std::sqrt(static_cast<double>(base.n));
    std::vector<std::vector<double>> scaled(L, std::vector<double>(d, 0.0));
    double max_abs = 0.0;
    for (int l = 0; l < L; ++l)
        for (std::size_t t = 0; t < d; ++t) {
            scaled[l][t] = sn * (means[l][t] - grand[t]);
            max_abs = std::max(max_abs, std::abs(scaled[l][t]));
        }
    rep.max_abs_scaled_mean = max_abs;
    rep.empirical_cov = covariance(scaled);

    if (!rep.degenerate) {
        for (std::size_t t = 0; t < d; ++t) {
            const double sd = std::sqrt(rep.exact_cov.at(t, t));
            std::vector<double> z(L);
            for (int l = 0; l < L; ++l) z[l] = scaled[l][t];
            std::sort(z.begin(), z.end());
            const auto ks = ks_test_sorted(z, [&](double v) { return normal_cdf(v / sd); });
            rep.ks_p_value.push_back(ks.p_value);
        }
    }
    return rep;
}

GofCalibrationReport gof_calibration_experiment(const GofCalibrationConfig& cfg) {
    cfg.kernel.validate();
    const double rho = std::pow(static_cast<double>(cfg.n), -cfg.rho_exponent);
    GofCalibrationReport rep{};
    rep.pipelines = cfg.pipelines;
    rep.alpha = cfg.alpha;
    rep.critical_values.assign(cfg.pipelines, 0.0);
    rep.bonferroni_values.assign(cfg.pipelines, 0.0);

    std::vector<int> boot(cfg.pipelines, 0), bonf(cfg.pipelines, 0), unionb(cfg.pipelines, 0),
        err(cfg.pipelines, 0);
    parallel_for(0, static_cast<std::size_t>(cfg.pipelines), cfg.workers, [&](std::size_t l) {
        try {
            SampleSpec spec{cfg.n, rho, derive_seed(cfg.seed, kPipelineTag + l),
                            LatentMode::sample_uniform, {}, 1};
            auto [graph, latents] = sample_graph(cfg.kernel, spec);
            Graph observed = cfg.perturb
                                 ? triadic_closure(graph, cfg.vertex_frac, cfg.close_frac,
                                                   derive_seed(cfg.seed, 0x7065ULL + l))
                                 : std::move(graph);
            GofConfig gc;
            gc.alpha = cfg.alpha;
            gc.moment_replicates = cfg.moment_replicates;
            gc.critical_replicates = cfg.critical_replicates;
            gc.seed = derive_seed(cfg.seed, 0x676f66ULL + l);
            gc.workers = 1;
            const GofResult res = gof_test(observed, gc);
            const double max_stat = *std::max_element(res.stat.begin(), res.stat.end());
            boot[l] = max_stat > res.critical ? 1 : 0;
            bonf[l] = max_stat > res.bonferroni ? 1 : 0;
            unionb[l] = max_stat > res.bonferroni_empirical ? 1 : 0;
            rep.critical_values[l] = res.critical;
            rep.bonferroni_values[l] = res.bonferroni;
        } catch (const std::exception&) {
            err[l] = 1;
        }
    });
    for (int l = 0; l < cfg.pipelines; ++l) {
        rep.bootstrap_rejections += boot[l];
        rep.bonferroni_rejections += bonf[l];
        rep.union_bound_rejections += unionb[l];
        rep.errors += err[l];
    }
    rep.bootstrap_rate = static_cast<double>(rep.bootstrap_rejections) / cfg.pipelines;
    rep.bonferroni_rate = static_cast<double>(rep.bonferroni_rejections) / cfg.pipelines;
    rep.union_bound_rate = static_cast<double>(rep.union_bound_rejections) / cfg.pipelines;
    const double se = std::sqrt(cfg.alpha * (1.0 - cfg.alpha) / cfg.pipelines);
    rep.band_lo = cfg.alpha - 2.576 * se;
    rep.band_hi = cfg.alpha + 2.576 * se;
    return rep;
}

namespace {

using Json = nlohmann::ordered_json;

Json moment_report_json(const MomentReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["rho"] = rep.rho;
    j["replicates"] = rep.replicates;
    j["min_n_rho_m"] = rep.min_n_rho_m;
    j["supercritical"] = rep.supercritical;
    j["motifs"] = rep.motif_names;
    j["moments"] = Json::array();
    for (std::size_t t = 0; t < rep.per_motif.size(); ++t)
        for (const auto& e : rep.per_motif[t])
            j["moments"].push_back({{"motif", rep.motif_names[t]},
                                    {"order", e.order},
                                    {"value", e.value},
                                    {"se", e.se},
                                    {"target", e.target}});
    j["mixed_moments"] = Json::array();
    for (const auto& e : rep.mixed)
        j["mixed_moments"].push_back({{"powers", {e.order, e.order2}},
                                      {"value", e.value},
                                      {"se", e.se},
                                      {"target", e.target}});
    j["ks_statistic"] = rep.ks_statistic;
    j["ks_p_value"] = rep.ks_p_value;
    return j;
}

std::string qq_table_text(const MomentReport& rep) {
    std::ostringstream os;
    os << "rank\tsample\ttheory\n";
    for (std::size_t i = 0; i < rep.qq_sample.size(); ++i)
        os << (i + 1) << '\t' << rep.qq_sample[i] << '\t' << rep.qq_theory[i] << '\n';
    return os.str();
}

Json calibration_json(const GofCalibrationReport& rep) {
    Json j;
    j["pipelines"] = rep.pipelines;
    j["alpha"] = rep.alpha;
    j["bootstrap_rejections"] = rep.bootstrap_rejections;
    j["bootstrap_rate"] = rep.bootstrap_rate;
    j["bonferroni_rejections"] = rep.bonferroni_rejections;
    j["bonferroni_rate"] = rep.bonferroni_rate;
    j["union_bound_rejections"] = rep.union_bound_rejections;
    j["union_bound_rate"] = rep.union_bound_rate;
    j["band"] = {rep.band_lo, rep.band_hi};
    j["errors"] = rep.errors;
    return j;
}

struct PresetOverrides {
    std::optional<std::uint32_t> n;
    std::optional<int> replicates;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<int> workers;
};

PresetOverrides parse_overrides(const std::string& overrides_json) {
    PresetOverrides o;
    if (overrides_json.empty()) return o;
    Json j;
    try {
        j = Json::parse(overrides_json);
    } catch (const nlohmann::json::exception& e) {
        fail(error::code::parse, std::string("preset overrides: ") + e.what());
    }
    if (j.contains("n")) o.n = j["n"].get<std::uint32_t>();
    if (j.contains("replicates")) o.replicates = j["replicates"].get<int>();
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("alpha")) o.alpha = j["alpha"].get<double>();
    if (j.contains("workers")) o.workers = j["workers"].get<int>();
    return o;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig-c1-qq", "level", "power", "subcritical", "avg-clt"};
}

std::string run_preset(const std::string& name, const std::string& overrides_json,
                       std::string* qq_table) {
    const PresetOverrides o = parse_overrides(overrides_json);
    Json out;
    out["preset"] = name;

    if (name == "fig-c1-qq") {
        ExperimentConfig cfg;
        cfg.kernel = reference_kernel();
        cfg.n = o.n.value_or(5000);
        cfg.replicates = o.replicates.value_or(200);
        cfg.motifs = {motif_by_name("triangle"), motif_by_name("square")};
        cfg.seed = o.seed.value_or(1);
        cfg.workers = o.workers.value_or(1);
        const MomentReport rep = vertex_clt_experiment(cfg);
        out["report"] = moment_report_json(rep);
        if (qq_table) *qq_table = qq_table_text(rep);
    } else if (name == "level" || name == "power") {
        GofCalibrationConfig cfg;
        cfg.kernel = reference_kernel();
        cfg.n = o.n.value_or(200);
        cfg.alpha = o.alpha.value_or(0.1);
        cfg.pipelines = o.replicates.value_or(name == "level" ? 200 : 100);
        cfg.seed = o.seed.value_or(1);
        cfg.workers = o.workers.value_or(1);
        cfg.perturb = name == "power";
        const GofCalibrationReport rep = gof_calibration_experiment(cfg);
        out["report"] = calibration_json(rep);
    } else if (name == "subcritical") {
        ExperimentConfig cfg;
        cfg.kernel = Kernel::constant(1.0);
        cfg.rho_exponent = 0.8;
        cfg.replicates = o.replicates.value_or(800);
        cfg.motifs = {motif_by_name("triangle")};
        cfg.seed = o.seed.value_or(1);
        cfg.workers = o.workers.value_or(1);
        const SubcriticalReport rep =
            subcritical_experiment(cfg, {500, 1000, 2000, 4000});
        Json j;
        j["sizes"] = rep.sizes;
        j["rho"] = rep.rho;
        j["positive_frequency"] = rep.positive_frequency;
        j["markov_bound"] = rep.markov_bound;
        out["report"] = j;
    } else if (name == "avg-clt") {
        AvgCltConfig cfg;
        cfg.base.kernel = regular_reference_kernel();
        cfg.base.n = o.n.value_or(4000);
        cfg.base.replicates = o.replicates.value_or(500);
        cfg.base.motifs = {motif_by_name("triangle")};
        cfg.base.seed = o.seed.value_or(1);
        cfg.base.workers = o.workers.value_or(1);
        const AvgCltReport rep = average_clt_experiment(cfg);
        Json j;
        j["n"] = rep.n;
        j["rho"] = rep.rho;
        j["replicates"] = rep.replicates;
        j["exact_variance"] = rep.exact_cov.v;
        j["empirical_variance"] = rep.empirical_cov.v;
        j["ks_p_value"] = rep.ks_p_value;
        j["degenerate"] = rep.degenerate;
        out["report"] = j;
    } else {
        fail(error::code::invalid_argument, "unknown preset: " + name);
    }
    return out.dump(2);
}

} // namespace rcs
