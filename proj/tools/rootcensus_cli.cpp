// Command line front end for the rootcensus shared library. All work is
// done through the C API; this file only parses flags, assembles option
// JSON, writes result files, and prints short summaries.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootcensus.h"

namespace {

using Json = nlohmann::ordered_json;

int exit_code_for(rcs_status st) {
    switch (st) {
    case RCS_OK: return 0;
    case RCS_ERROR_INTERNAL:
    case RCS_ERROR_OVERFLOW: return 2;
    default: return 1;
    }
}

int report_failure(rcs_status st) {
    std::cerr << "error: " << rcs_last_error() << "\n";
    return exit_code_for(st);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out.good()) throw CLI::RuntimeError("cannot write " + path, 1);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw CLI::RuntimeError("cannot read " + path, 1);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
    const auto dot = out.rfind('.');
    return (dot == std::string::npos ? out : out.substr(0, dot)) + suffix;
}

struct GraphHandle {
    rcs_graph* g = nullptr;
    ~GraphHandle() { rcs_graph_free(g); }
};
struct KernelHandle {
    rcs_kernel* k = nullptr;
    ~KernelHandle() { rcs_kernel_free(k); }
};
struct ResultHandle {
    rcs_result* r = nullptr;
    ~ResultHandle() { rcs_result_free(r); }
    Json json() const { return Json::parse(rcs_result_json(r)); }
};

// Every run is replayable: if no seed was given, draw one and print it.
uint64_t resolve_seed(std::optional<uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    const uint64_t s = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    std::cout << "seed " << s << " (generated; pass --seed to replay)\n";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rooted subgraph census, blockmodel simulation and inference"};
    app.require_subcommand(1);

    std::string graph_path, kernel_path, covariates_path, out_path = "result.json";
    std::string motifs = "triangle,square";
    std::string preset, motif1, motif2, fixtures_dir = "fixtures";
    std::optional<uint64_t> seed;
    int workers = 1;
    int replicates = 0;
    double alpha = 0.1;
    double rho = 0.0;
    uint32_t n = 0;
    bool pooled = false;
    std::string latent_mode = "uniform";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output JSON path");
        cmd->add_option("--seed", seed, "RNG seed (generated and printed when absent)");
        cmd->add_option("--workers", workers, "worker threads");
    };

    std::string table_path;
    auto* census = app.add_subcommand("census", "per-vertex rooted counts and densities");
    census->add_option("--graph", graph_path, "edge list file")->required();
    census->add_option("--motifs", motifs, "catalog names, files, or inline JSON");
    census->add_option("--table-out", table_path, "delimited table path (default: <out>.tsv)");
    add_common(census);

    auto* overlap = app.add_subcommand("overlap", "overlap family of two motifs");
    overlap->add_option("--f1", motif1, "first motif")->required();
    overlap->add_option("--f2", motif2, "second motif")->required();
    add_common(overlap);

    auto* verify = app.add_subcommand("verify-identity", "product identity sweep");
    int sweep_graphs = 50;
    int sweep_max_n = 30;
    verify->add_option("--graphs", sweep_graphs, "number of random graphs");
    verify->add_option("--max-n", sweep_max_n, "maximum graph order");
    verify->add_option("--motifs", motifs, "motifs for the sweep (default catalog)");
    add_common(verify);

    auto* simulate = app.add_subcommand("simulate", "sample a random graph from a kernel");
    simulate->add_option("--kernel", kernel_path, "kernel JSON file")->required();
    simulate->add_option("--n", n, "vertex count")->required();
    simulate->add_option("--rho", rho, "sparsity in (0,1]")->required();
    simulate->add_option("--latent-mode", latent_mode, "uniform|grid");
    simulate->add_option("--edges-out", table_path, "edge list path (default: <out>.edges)");
    add_common(simulate);

    auto* moments = app.add_subcommand("moments", "bootstrap per-block density moments");
    moments->add_option("--kernel", kernel_path, "kernel JSON file")->required();
    moments->add_option("--n", n, "replicate graph order")->required();
    moments->add_option("--replicates", replicates, "bootstrap replicates")->capture_default_str();
    moments->add_option("--motifs", motifs, "motifs");
    add_common(moments);

    auto* fit = app.add_subcommand("fit", "block-kernel estimate of a graph");
    fit->add_option("--graph", graph_path, "edge list file")->required();
    add_common(fit);

    auto* gof = app.add_subcommand("gof", "vertex-level goodness-of-fit test");
    gof->add_option("--graph", graph_path, "edge list file")->required();
    gof->add_option("--alpha", alpha, "test level")->capture_default_str();
    gof->add_option("--replicates", replicates, "critical-value replicates (default 500)");
    gof->add_option("--motifs", motifs, "motifs");
    gof->add_flag("--pooled", pooled, "pool all replicate statistics before the quantile");
    add_common(gof);

    auto* regress = app.add_subcommand("regress", "logistic regression on rooted densities");
    regress->add_option("--graph", graph_path, "edge list file")->required();
    regress->add_option("--covariates", covariates_path, "covariate table")->required();
    regress->add_option("--motifs", motifs, "density predictors");
    regress->add_option("--alpha", alpha, "1 - confidence level")->default_val(0.05);
    add_common(regress);

    auto* validate = app.add_subcommand("validate", "named validation experiments");
    validate->add_option("--preset", preset, "fig-c1-qq|level|power|subcritical|avg-clt")
        ->required();
    validate->add_option("--n", n, "override graph order");
    validate->add_option("--replicates", replicates, "override replicate count");
    validate->add_option("--alpha", alpha, "override level");
    add_common(validate);

    auto* fixtures = app.add_subcommand("fixtures", "write bundled demo assets");
    fixtures->add_option("--dir", fixtures_dir, "target directory")->capture_default_str();
    add_common(fixtures);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints the usage message
        return code == 0 ? 0 : 1;     // user error is exit 1 (--help is 0)
    }

    try {
        ResultHandle result;
        rcs_status st = RCS_OK;

        if (census->parsed()) {
            GraphHandle g;
            st = rcs_graph_load_file(graph_path.c_str(), &g.g);
            if (st != RCS_OK) return report_failure(st);
            Json opt{{"workers", workers}};
            st = rcs_census_run(g.g, motifs.c_str(), opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            const auto& res = r["result"];
            // vertex id, then per motif: raw count and density.
            std::ostringstream tsv;
            tsv << "vertex";
            for (const auto& m : res["motifs"]) {
                tsv << '\t' << m.get<std::string>() << "_count";
                tsv << '\t' << m.get<std::string>() << "_density";
            }
            tsv << '\n';
            const auto& labels = res["vertex_labels"];
            for (std::size_t i = 0; i < labels.size(); ++i) {
                tsv << labels[i].get<std::string>();
                for (std::size_t t = 0; t < res["motifs"].size(); ++t)
                    tsv << '\t' << res["counts"][t][i].dump() << '\t'
                        << res["densities"][t][i].dump();
                tsv << '\n';
            }
            const std::string tpath = table_path.empty() ? sibling_path(out_path, ".tsv")
                                                         : table_path;
            write_file(tpath, tsv.str());
            write_file(out_path, result.json().dump(2) + "\n");
            std::cout << "census: n=" << res["n"] << " e=" << res["edge_count"]
                      << " rho_hat=" << res["rho_hat"] << "\ntable: " << tpath
                      << "\nreport: " << out_path << "\n";
            return 0;
        }

        if (overlap->parsed()) {
            st = rcs_overlap_run(motif1.c_str(), motif2.c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            write_file(out_path, r.dump(2) + "\n");
            std::cout << "overlap entries:\n";
            for (const auto& e : r["result"]["entries"])
                std::cout << "  order " << e["shape"]["order"] << " edges "
                          << e["shape"]["edges"].size() << "  c_H = " << e["coeff"] << "\n";
            std::cout << "report: " << out_path << "\n";
            return 0;
        }

        if (verify->parsed()) {
            Json opt{{"graphs", sweep_graphs}, {"max_n", sweep_max_n},
                     {"seed", resolve_seed(seed)}};
            if (verify->get_option("--motifs")->count()) opt["motifs"] = motifs;
            st = rcs_verify_identity_run(opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            write_file(out_path, r.dump(2) + "\n");
            const bool pass = r["result"]["pass"].get<bool>();
            std::cout << (pass ? "PASS" : "FAIL") << ": " << r["result"]["checks"]
                      << " identity checks, " << r["result"]["failures"] << " failures\n"
                      << "report: " << out_path << "\n";
            return pass ? 0 : 1;
        }

        if (simulate->parsed()) {
            KernelHandle k;
            st = rcs_kernel_load_file(kernel_path.c_str(), &k.k);
            if (st != RCS_OK) return report_failure(st);
            Json opt{{"n", n}, {"rho", rho}, {"seed", resolve_seed(seed)},
                     {"latent_mode", latent_mode}, {"workers", workers}};
            st = rcs_simulate_run(k.k, opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            Json r = result.json();
            const std::string epath = table_path.empty() ? sibling_path(out_path, ".edges")
                                                         : table_path;
            write_file(epath, r["result"]["edges"].get<std::string>());
            std::ostringstream latents;
            latents << "vertex\tx\tblock\n";
            for (std::size_t i = 0; i < r["result"]["latents"].size(); ++i)
                latents << i << '\t' << r["result"]["latents"][i].dump() << '\t'
                        << r["result"]["blocks"][i].dump() << '\n';
            write_file(sibling_path(out_path, ".latents.tsv"), latents.str());
            r["result"].erase("edges"); // bulk data lives in the side files
            write_file(out_path, r.dump(2) + "\n");
            std::cout << "simulated n=" << r["result"]["n"] << " e=" << r["result"]["edge_count"]
                      << "\nedges: " << epath << "\nreport: " << out_path << "\n";
            return 0;
        }

        if (moments->parsed()) {
            KernelHandle k;
            st = rcs_kernel_load_file(kernel_path.c_str(), &k.k);
            if (st != RCS_OK) return report_failure(st);
            Json opt{{"n", n}, {"replicates", replicates > 0 ? replicates : 50},
                     {"motifs", motifs}, {"seed", resolve_seed(seed)}, {"workers", workers}};
            st = rcs_moments_run(k.k, opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            write_file(out_path, result.json().dump(2) + "\n");
            std::cout << "moments written: " << out_path << "\n";
            return 0;
        }

        if (fit->parsed()) {
            GraphHandle g;
            st = rcs_graph_load_file(graph_path.c_str(), &g.g);
            if (st != RCS_OK) return report_failure(st);
            Json opt{{"seed", resolve_seed(seed)}};
            st = rcs_fit_run(g.g, opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            write_file(out_path, r.dump(2) + "\n");
            std::cout << "fit: k=" << r["result"]["k"] << " aic=" << r["result"]["aic"]
                      << " modularity=" << r["result"]["modularity"] << "\nreport: " << out_path
                      << "\n";
            return 0;
        }

        if (gof->parsed()) {
            GraphHandle g;
            st = rcs_graph_load_file(graph_path.c_str(), &g.g);
            if (st != RCS_OK) return report_failure(st);
            Json opt{{"alpha", alpha}, {"seed", resolve_seed(seed)}, {"workers", workers},
                     {"pooled", pooled}};
            if (replicates > 0) opt["critical_replicates"] = replicates;
            if (gof->get_option("--motifs")->count()) opt["motifs"] = motifs;
            st = rcs_gof_run(g.g, opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            write_file(out_path, r.dump(2) + "\n");
            std::cout << "gof: k=" << r["result"]["k"] << " critical="
                      << r["result"]["critical_value"] << " rejected="
                      << r["result"]["rejected"].size() << " vertices\nreport: " << out_path
                      << "\n";
            return 0;
        }

        if (regress->parsed()) {
            GraphHandle g;
            st = rcs_graph_load_file(graph_path.c_str(), &g.g);
            if (st != RCS_OK) return report_failure(st);
            const std::string table = read_file(covariates_path);
            Json opt{{"motifs", motifs}, {"alpha", alpha}, {"workers", workers}};
            st = rcs_regress_run(g.g, table.c_str(), opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            const Json r = result.json();
            write_file(out_path, r.dump(2) + "\n");
            const auto& res = r["result"];
            std::cout << "regress: " << res["observations"] << " observations, dropped "
                      << res["dropped_rows"] << "\n";
            for (std::size_t j = 0; j < res["beta"].size(); ++j)
                std::cout << "  " << res["coefficients"][j].get<std::string>() << " = "
                          << res["beta"][j].dump() << " (z = " << res["z"][j].dump() << ")\n";
            std::cout << "report: " << out_path << "\n";
            return 0;
        }

        if (validate->parsed()) {
            Json opt{{"seed", resolve_seed(seed)}, {"workers", workers}};
            if (n > 0) opt["n"] = n;
            if (replicates > 0) opt["replicates"] = replicates;
            if (validate->get_option("--alpha")->count()) opt["alpha"] = alpha;
            st = rcs_validate_run(preset.c_str(), opt.dump().c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            Json r = result.json();
            if (r["result"].contains("qq_table")) {
                const std::string qpath = sibling_path(out_path, ".qq.tsv");
                write_file(qpath, r["result"]["qq_table"].get<std::string>());
                r["result"].erase("qq_table");
                std::cout << "qq table: " << qpath << "\n";
            }
            write_file(out_path, r.dump(2) + "\n");
            std::cout << "validate " << preset << " done\nreport: " << out_path << "\n";
            return 0;
        }

        if (fixtures->parsed()) {
            st = rcs_fixtures_write(fixtures_dir.c_str(), &result.r);
            if (st != RCS_OK) return report_failure(st);
            write_file(out_path, result.json().dump(2) + "\n");
            std::cout << "fixtures written to " << fixtures_dir << "\n";
            return 0;
        }
    } catch (const CLI::RuntimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
