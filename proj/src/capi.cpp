#include "rootcensus.h"

#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <unordered_map>

#include "rootcensus/census.hpp"
#include "rootcensus/errors.hpp"
#include "rootcensus/experiments.hpp"
#include "rootcensus/fixtures.hpp"
#include "rootcensus/glm.hpp"
#include "rootcensus/graph.hpp"
#include "rootcensus/inference.hpp"
#include "rootcensus/kernel.hpp"
#include "rootcensus/overlap.hpp"
#include "rootcensus/report.hpp"
#include "rootcensus/rng.hpp"
#include "rootcensus/sample.hpp"

struct rcs_graph {
    rcs::Graph graph;
    std::vector<std::string> labels;
    std::uint64_t dropped_duplicates = 0;
    std::uint64_t dropped_self_loops = 0;
};

struct rcs_kernel {
    rcs::Kernel kernel;
};

struct rcs_result {
    std::string json;
};

namespace {

thread_local std::string g_last_error;

rcs_status status_of(const rcs::error& e) {
    switch (e.kind()) {
    case rcs::error::code::invalid_argument: return RCS_ERROR_INVALID_ARGUMENT;
    case rcs::error::code::io: return RCS_ERROR_IO;
    case rcs::error::code::parse: return RCS_ERROR_PARSE;
    case rcs::error::code::domain: return RCS_ERROR_DOMAIN;
    case rcs::error::code::overflow: return RCS_ERROR_OVERFLOW;
    case rcs::error::code::internal: return RCS_ERROR_INTERNAL;
    }
    return RCS_ERROR_INTERNAL;
}

template <typename F>
rcs_status guarded(F&& body) {
    try {
        body();
        return RCS_OK;
    } catch (const rcs::error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RCS_ERROR_INTERNAL;
    }
}

rcs::Json parse_options(const char* options_json) {
    if (options_json == nullptr || options_json[0] == '\0') return rcs::Json::object();
    try {
        return rcs::Json::parse(options_json);
    } catch (const nlohmann::json::exception& e) {
        rcs::fail(rcs::error::code::parse, std::string("options JSON: ") + e.what());
    }
}

rcs_result* wrap(const rcs::Json& j) { return new rcs_result{j.dump(2)}; }

std::vector<rcs::RootedMotif> motifs_from_options(const rcs::Json& opt,
                                                  const std::string& fallback) {
    return rcs::resolve_motifs(opt.value("motifs", fallback));
}

rcs::Json census_payload(const rcs_graph* g, const std::vector<rcs::RootedMotif>& motifs,
                         int workers) {
    const rcs::DensityMatrix dm = rcs::census(g->graph, motifs, workers);
    rcs::Json payload;
    payload["n"] = g->graph.order();
    payload["edge_count"] = g->graph.edge_count();
    payload["rho_hat"] = dm.rho_hat;
    payload["dropped_duplicates"] = g->dropped_duplicates;
    payload["dropped_self_loops"] = g->dropped_self_loops;
    payload["motifs"] = rcs::Json::array();
    for (const auto& m : motifs) payload["motifs"].push_back(m.describe());
    payload["vertex_labels"] = g->labels;
    payload["counts"] = rcs::Json::array();
    for (const auto& cv : dm.raw) payload["counts"].push_back(cv.counts);
    payload["densities"] = rcs::Json::array();
    for (std::size_t t = 0; t < motifs.size(); ++t) {
        std::vector<double> col(dm.n);
        for (std::uint32_t i = 0; i < dm.n; ++i) col[i] = dm.at(i, t);
        payload["densities"].push_back(col);
    }
    return payload;
}

} // namespace

extern "C" {

const char* rcs_version(void) { return "0.1.0"; }

const char* rcs_last_error(void) { return g_last_error.c_str(); }

rcs_status rcs_graph_load_file(const char* path, rcs_graph** out) {
    return guarded([&] {
        rcs::require(path && out, rcs::error::code::invalid_argument, "null argument");
        rcs::LoadResult lr = rcs::load_edge_list_file(path);
        *out = new rcs_graph{std::move(lr.graph), std::move(lr.labels), lr.dropped_duplicates,
                             lr.dropped_self_loops};
    });
}

rcs_status rcs_graph_parse(const char* text, rcs_graph** out) {
    return guarded([&] {
        rcs::require(text && out, rcs::error::code::invalid_argument, "null argument");
        rcs::LoadResult lr = rcs::load_edge_list_text(text);
        *out = new rcs_graph{std::move(lr.graph), std::move(lr.labels), lr.dropped_duplicates,
                             lr.dropped_self_loops};
    });
}

uint32_t rcs_graph_order(const rcs_graph* g) { return g ? g->graph.order() : 0; }

uint64_t rcs_graph_edge_count(const rcs_graph* g) { return g ? g->graph.edge_count() : 0; }

void rcs_graph_free(rcs_graph* g) { delete g; }

rcs_status rcs_kernel_load_file(const char* path, rcs_kernel** out) {
    return guarded([&] {
        rcs::require(path && out, rcs::error::code::invalid_argument, "null argument");
        *out = new rcs_kernel{rcs::load_kernel_file(path)};
    });
}

rcs_status rcs_kernel_parse(const char* json, rcs_kernel** out) {
    return guarded([&] {
        rcs::require(json && out, rcs::error::code::invalid_argument, "null argument");
        *out = new rcs_kernel{rcs::parse_kernel_json(json)};
    });
}

int rcs_kernel_blocks(const rcs_kernel* k) { return k ? k->kernel.k : 0; }

void rcs_kernel_free(rcs_kernel* k) { delete k; }

const char* rcs_result_json(const rcs_result* r) { return r ? r->json.c_str() : ""; }

void rcs_result_free(rcs_result* r) { delete r; }

rcs_status rcs_census_run(const rcs_graph* g, const char* motifs, const char* options_json,
                          rcs_result** out) {
    return guarded([&] {
        rcs::require(g && motifs && out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        const auto motif_list = rcs::resolve_motifs(motifs);
        rcs::Json config{{"motifs", motifs}, {"workers", opt.value("workers", 1)}};
        *out = wrap(rcs::make_report("census", config,
                                     census_payload(g, motif_list, opt.value("workers", 1))));
    });
}

rcs_status rcs_overlap_run(const char* motif1, const char* motif2, rcs_result** out) {
    return guarded([&] {
        rcs::require(motif1 && motif2 && out, rcs::error::code::invalid_argument, "null argument");
        const auto f1 = rcs::resolve_motifs(motif1);
        const auto f2 = rcs::resolve_motifs(motif2);
        rcs::require(f1.size() == 1 && f2.size() == 1, rcs::error::code::invalid_argument,
                     "overlap takes exactly one motif per side");
        const rcs::OverlapSet direct = rcs::overlap_set(f1[0], f2[0]);
        const rcs::OverlapSet inductive = rcs::inductive_coefficients(f1[0], f2[0]);
        rcs::Json payload;
        payload["f1"] = rcs::Json::parse(rcs::motif_to_json(f1[0]));
        payload["f2"] = rcs::Json::parse(rcs::motif_to_json(f2[0]));
        payload["entries"] = rcs::Json::array();
        bool agree = direct.entries.size() == inductive.entries.size();
        for (std::size_t t = 0; t < direct.entries.size(); ++t) {
            const auto& e = direct.entries[t];
            rcs::Json je;
            je["shape"] = rcs::Json::parse(rcs::motif_to_json(e.shape));
            je["coeff"] = e.coeff;
            if (agree) {
                const auto& o = inductive.entries[t];
                je["coeff_inductive"] = o.coeff;
                agree = agree && o.shape == e.shape && o.coeff == e.coeff;
            }
            payload["entries"].push_back(je);
        }
        payload["routes_agree"] = agree;
        rcs::require(agree, rcs::error::code::internal,
                     "direct and inductive overlap coefficients disagree");
        *out = wrap(rcs::make_report("overlap", {{"f1", motif1}, {"f2", motif2}}, payload));
    });
}

rcs_status rcs_verify_identity_run(const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        const int graphs = opt.value("graphs", 50);
        const int max_n = opt.value("max_n", 30);
        const std::uint64_t seed = opt.value("seed", 1ull);
        std::vector<rcs::RootedMotif> motifs;
        if (opt.contains("motifs")) motifs = motifs_from_options(opt, "");
        else motifs = rcs::motif_catalog();

        // Precompute overlap sets once per unordered pair.
        struct PairSet {
            std::size_t a, b;
            rcs::OverlapSet os;
        };
        std::vector<PairSet> pairs;
        for (std::size_t a = 0; a < motifs.size(); ++a)
            for (std::size_t b = a; b < motifs.size(); ++b)
                if (motifs[a].order() + motifs[b].order() <= 11)
                    pairs.push_back({a, b, rcs::overlap_set(motifs[a], motifs[b])});

        std::uint64_t checks = 0, failures = 0;
        rcs::Rng rng(rcs::derive_seed(seed, 0x69646eULL));
        for (int gidx = 0; gidx < graphs; ++gidx) {
            const std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.below(
                                             static_cast<std::uint64_t>(std::max(1, max_n - 7))));
            const double p = 0.08 + 0.22 * rng.uniform();
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = i + 1; j < n; ++j)
                    if (rng.uniform() < p) edges.emplace_back(i, j);
            const rcs::Graph graph = rcs::Graph::from_edges(n, edges);
            for (const auto& pr : pairs) {
                // All catalog shapes appear across pairs; checking a couple
                // of vertices per pair keeps the sweep O(minutes) while
                // every pair still sees every graph.
                for (std::uint32_t v : {0u, n / 2}) {
                    const auto repn = rcs::verify_product_identity(graph, v, motifs[pr.a],
                                                                   motifs[pr.b], &pr.os);
                    ++checks;
                    if (!repn.equal) ++failures;
                }
            }
        }
        rcs::Json payload;
        payload["graphs"] = graphs;
        payload["pairs"] = pairs.size();
        payload["checks"] = checks;
        payload["failures"] = failures;
        payload["pass"] = failures == 0;
        *out = wrap(rcs::make_report("verify-identity",
                                     {{"graphs", graphs}, {"max_n", max_n}, {"seed", seed}},
                                     payload));
    });
}

rcs_status rcs_simulate_run(const rcs_kernel* k, const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(k && out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        rcs::SampleSpec spec;
        spec.n = opt.value("n", 100u);
        spec.rho = opt.value("rho", 1.0);
        spec.seed = opt.value("seed", 1ull);
        spec.workers = opt.value("workers", 1);
        const std::string mode = opt.value("latent_mode", "uniform");
        if (mode == "uniform") spec.mode = rcs::LatentMode::sample_uniform;
        else if (mode == "grid") spec.mode = rcs::LatentMode::fixed_grid;
        else rcs::fail(rcs::error::code::invalid_argument, "latent_mode must be uniform|grid");
        auto [graph, latents] = rcs::sample_graph(k->kernel, spec);
        std::ostringstream edges;
        rcs::write_edge_list(graph, edges);
        rcs::Json payload;
        payload["n"] = graph.order();
        payload["edge_count"] = graph.edge_count();
        payload["edges"] = edges.str();
        payload["latents"] = latents.x;
        payload["blocks"] = latents.block;
        *out = wrap(rcs::make_report("simulate",
                                     {{"n", spec.n}, {"rho", spec.rho}, {"seed", spec.seed},
                                      {"latent_mode", mode}},
                                     payload));
    });
}

rcs_status rcs_moments_run(const rcs_kernel* k, const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(k && out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        const std::uint32_t n = opt.value("n", 500u);
        const int N = opt.value("replicates", 50);
        const std::uint64_t seed = opt.value("seed", 1ull);
        const int workers = opt.value("workers", 1);
        const auto motifs = motifs_from_options(opt, "triangle,square");
        const rcs::BootstrapMoments bm =
            rcs::bootstrap_moments(k->kernel, n, N, motifs, seed, workers);
        rcs::Json payload;
        payload["k"] = bm.k;
        payload["replicates"] = bm.replicates;
        payload["mean"] = bm.mean;
        payload["cov"] = rcs::Json::array();
        for (const auto& c : bm.cov) payload["cov"].push_back(c.v);
        payload["empty_blocks"] = bm.empty_blocks;
        *out = wrap(rcs::make_report("moments", {{"n", n}, {"replicates", N}, {"seed", seed}},
                                     payload));
    });
}

rcs_status rcs_fit_run(const rcs_graph* g, const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(g && out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        const std::uint64_t seed = opt.value("seed", 1ull);
        const rcs::BlockFit fit = rcs::fit_blockmodel(g->graph, seed);
        rcs::Json payload;
        payload["k"] = fit.k;
        payload["assignment"] = fit.assignment;
        payload["B_hat"] = fit.B_hat.v;
        payload["log_likelihood"] = fit.log_likelihood;
        payload["aic"] = fit.aic;
        payload["modularity"] = fit.modularity;
        *out = wrap(rcs::make_report("fit", {{"seed", seed}}, payload));
    });
}

rcs_status rcs_gof_run(const rcs_graph* g, const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(g && out, rcs::error::code::invalid_argument, "null argument");
        const rcs::Json opt = parse_options(options_json);
        rcs::GofConfig cfg;
        cfg.alpha = opt.value("alpha", 0.1);
        cfg.moment_replicates = opt.value("moment_replicates", 50);
        cfg.critical_replicates = opt.value("critical_replicates", 500);
        cfg.seed = opt.value("seed", 1ull);
        cfg.pooled_quantile = opt.value("pooled", false);
        cfg.workers = opt.value("workers", 1);
        if (opt.contains("motifs")) cfg.motifs = motifs_from_options(opt, "triangle,square");
        const rcs::GofResult res = rcs::gof_test(g->graph, cfg);
        rcs::Json payload;
        payload["k"] = res.fit.k;
        payload["B_hat"] = res.fit.B_hat.v;
        payload["assignment"] = res.fit.assignment;
        payload["alpha"] = res.alpha;
        payload["critical_value"] = res.critical;
        payload["bonferroni_value"] = res.bonferroni;
        payload["bonferroni_empirical"] = res.bonferroni_empirical;
        payload["stat"] = res.stat;
        payload["t_hat"] = rcs::Json::array();
        for (std::size_t i = 0; i < res.t_hat.rows; ++i) {
            std::vector<double> row(res.t_hat.cols);
            for (std::size_t j = 0; j < res.t_hat.cols; ++j) row[j] = res.t_hat.at(i, j);
            payload["t_hat"].push_back(row);
        }
        payload["rejected"] = res.rejected;
        *out = wrap(rcs::make_report(
            "gof",
            {{"alpha", cfg.alpha}, {"moment_replicates", cfg.moment_replicates},
             {"critical_replicates", cfg.critical_replicates}, {"seed", cfg.seed},
             {"pooled", cfg.pooled_quantile}},
            payload));
    });
}

rcs_status rcs_regress_run(const rcs_graph* g, const char* covariates_text,
                           const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(g && covariates_text && out, rcs::error::code::invalid_argument,
                     "null argument");
        const rcs::Json opt = parse_options(options_json);
        const auto motifs = motifs_from_options(opt, "triangle,square");
        const double alpha = opt.value("alpha", 0.05);
        const int workers = opt.value("workers", 1);

        // Covariate table: header "vertex_id,label[,extra...]"; comma or
        // whitespace separated; vertex ids are the original tokens.
        std::istringstream in(covariates_text);
        std::string line;
        rcs::require(static_cast<bool>(std::getline(in, line)), rcs::error::code::parse,
                     "covariate table is empty");
        auto split = [](const std::string& s) {
            std::vector<std::string> toks;
            std::string cur;
            for (char c : s) {
                if (c == ',' || c == '\t' || c == ' ') {
                    if (!cur.empty()) toks.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!cur.empty()) toks.push_back(cur);
            return toks;
        };
        const auto header = split(line);
        rcs::require(header.size() >= 2, rcs::error::code::parse,
                     "covariate header needs vertex_id,label[,extra...]");
        std::unordered_map<std::string, std::uint32_t> id_of;
        for (std::uint32_t v = 0; v < g->labels.size(); ++v) id_of.emplace(g->labels[v], v);

        const rcs::DensityMatrix dm = rcs::census(g->graph, motifs, workers);
        std::vector<std::vector<double>> rows;
        std::vector<int> y;
        std::uint64_t dropped = 0;
        std::uint64_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            const auto toks = split(line);
            if (toks.empty()) continue;
            rcs::require(toks.size() == header.size(), rcs::error::code::parse,
                         "covariate line " + std::to_string(lineno) + ": wrong column count");
            const auto it = id_of.find(toks[0]);
            if (it == id_of.end()) {
                ++dropped;
                continue;
            }
            std::vector<double> row{1.0};
            for (std::size_t t = 0; t < motifs.size(); ++t) row.push_back(dm.at(it->second, t));
            for (std::size_t c = 2; c < toks.size(); ++c) row.push_back(std::stod(toks[c]));
            rows.push_back(std::move(row));
            y.push_back(std::stoi(toks[1]));
        }
        rcs::require(!rows.empty(), rcs::error::code::invalid_argument,
                     "no covariate rows match graph vertices");
        rcs::Matrix x(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) x.at(i, j) = rows[i][j];
        const rcs::RegressionFit fit = rcs::logistic_fit(x, y, 1.0 - alpha);

        std::vector<std::string> names{"intercept"};
        for (const auto& m : motifs) names.push_back(m.describe());
        for (std::size_t c = 2; c < header.size(); ++c) names.push_back(header[c]);

        rcs::Json payload;
        payload["observations"] = rows.size();
        payload["dropped_rows"] = dropped;
        payload["coefficients"] = names;
        payload["beta"] = fit.beta;
        payload["se"] = fit.se;
        payload["z"] = fit.z;
        payload["ci_lo"] = fit.ci_lo;
        payload["ci_hi"] = fit.ci_hi;
        payload["converged"] = fit.converged;
        payload["iterations"] = fit.iterations;
        payload["gradient_norm"] = fit.gradient_norm;
        payload["log_likelihood"] = fit.log_likelihood;
        *out = wrap(rcs::make_report("regress", {{"alpha", alpha}}, payload));
    });
}

rcs_status rcs_validate_run(const char* preset, const char* options_json, rcs_result** out) {
    return guarded([&] {
        rcs::require(preset && out, rcs::error::code::invalid_argument, "null argument");
        std::string qq;
        const std::string report =
            rcs::run_preset(preset, options_json ? options_json : "", &qq);
        rcs::Json payload = rcs::Json::parse(report);
        if (!qq.empty()) payload["qq_table"] = qq;
        *out = wrap(rcs::make_report("validate", {{"preset", preset}}, payload));
    });
}

rcs_status rcs_fixtures_write(const char* directory, rcs_result** out) {
    return guarded([&] {
        rcs::require(directory && out, rcs::error::code::invalid_argument, "null argument");
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(directory, ec);
        rcs::require(!ec, rcs::error::code::io, "cannot create directory: " + std::string(directory));
        const fs::path dir(directory);

        const auto& ex = rcs::counting_example();
        std::ostringstream graph_text;
        graph_text << "# worked counting example: vertex " << ex.vertex_i << " and vertex "
                   << ex.vertex_j << " are the reference roots\n";
        rcs::write_edge_list(ex.graph, graph_text);
        rcs::write_text_file((dir / "counting_example.edges").string(), graph_text.str());

        rcs::write_text_file((dir / "reference_kernel.json").string(),
                             rcs::kernel_to_json(rcs::reference_kernel()) + "\n");

        const rcs::CovariateDataset ds = rcs::make_covariate_dataset(2000, 7);
        std::ostringstream ds_edges;
        rcs::write_edge_list(ds.graph, ds_edges);
        rcs::write_text_file((dir / "school.edges").string(), ds_edges.str());
        rcs::write_text_file((dir / "school_covariates.csv").string(), ds.table);

        rcs::Json payload;
        payload["files"] = {"counting_example.edges", "reference_kernel.json", "school.edges",
                            "school_covariates.csv"};
        payload["planted"] = {{"intercept", ds.intercept},
                              {"triangle_effect", ds.triangle_effect}};
        *out = wrap(rcs::make_report("fixtures", {{"directory", directory}}, payload));
    });
}

} // extern "C"
