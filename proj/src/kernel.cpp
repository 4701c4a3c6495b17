#include "rootcensus/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rootcensus/errors.hpp"
#include "rootcensus/overlap.hpp"

namespace rcs {

double Kernel::max_entry() const { return *std::max_element(B.begin(), B.end()); }

double Kernel::mean_value() const {
    double total = 0.0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) total += pi[a] * pi[b] * this->b(a, b);
    return total;
}

void Kernel::validate() const {
    require(k >= 1, error::code::invalid_argument, "kernel needs at least one block");
    require(B.size() == static_cast<std::size_t>(k) * k, error::code::invalid_argument,
            "kernel B must be k x k");
    require(pi.size() == static_cast<std::size_t>(k), error::code::invalid_argument,
            "kernel pi must have k entries");
    double total = 0.0;
    for (double p : pi) {
        require(p > 0.0, error::code::invalid_argument, "kernel pi entries must be positive");
        total += p;
    }
    require(std::abs(total - 1.0) < 1e-9, error::code::invalid_argument, "kernel pi must sum to 1");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            require(b(i, j) >= 0.0 && b(i, j) <= 1.0, error::code::invalid_argument,
                    "kernel entries must lie in [0,1]");
            require(std::abs(b(i, j) - b(j, i)) < 1e-12, error::code::invalid_argument,
                    "kernel B must be symmetric");
        }
    // Integrability: every row must see some mass.
    for (int i = 0; i < k; ++i) {
        double row = 0.0;
        for (int j = 0; j < k; ++j) row += b(i, j) * pi[j];
        require(row > 0.0, error::code::invalid_argument,
                "kernel row " + std::to_string(i) + " integrates to zero");
    }
}

std::vector<double> Kernel::cumulative() const {
    std::vector<double> cum(k);
    double acc = 0.0;
    for (int b = 0; b < k; ++b) {
        acc += pi[b];
        cum[b] = acc;
    }
    cum[k - 1] = 1.0;
    return cum;
}

int Kernel::block_of(double x) const {
    double acc = 0.0;
    for (int b = 0; b < k - 1; ++b) {
        acc += pi[b];
        if (x <= acc) return b;
    }
    return k - 1;
}

Kernel Kernel::constant(double c) { return Kernel{1, {c}, {1.0}}; }

Kernel parse_kernel_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(error::code::parse, std::string("kernel JSON: ") + e.what());
    }
    require(j.contains("k") && j.contains("B") && j.contains("pi"), error::code::parse,
            "kernel JSON needs {k, B, pi}");
    Kernel kn;
    kn.k = j.at("k").get<int>();
    kn.B = j.at("B").get<std::vector<double>>();
    kn.pi = j.at("pi").get<std::vector<double>>();
    kn.validate();
    return kn;
}

Kernel load_kernel_file(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), error::code::io, "cannot open kernel file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_kernel_json(buf.str());
}

std::string kernel_to_json(const Kernel& k) {
    nlohmann::ordered_json j;
    j["k"] = k.k;
    j["B"] = k.B;
    j["pi"] = k.pi;
    return j.dump();
}

double positional_density(const Kernel& k, const RootedMotif& f, int position, int block) {
    k.validate();
    require(block >= 0 && block < k.k, error::code::invalid_argument, "block out of range");
    require(position >= 0 && position < f.order(), error::code::invalid_argument,
            "motif position out of range");
    const int free = f.order() - 1;
    const double terms = std::pow(static_cast<double>(k.k), free);
    require(terms <= 1e8, error::code::invalid_argument,
            "blockmodel density sum too large (k^(|F|-1) > 1e8); use Monte Carlo instead");

    std::vector<int> assign(f.order(), 0);
    assign[position] = block;
    std::vector<int> open; // motif vertices averaged over pi
    for (int v = 0; v < f.order(); ++v)
        if (v != position) open.push_back(v);

    double total = 0.0;
    std::vector<int> idx(free, 0);
    for (;;) {
        for (int t = 0; t < free; ++t) assign[open[t]] = idx[t];
        double w = 1.0;
        for (int t = 0; t < free; ++t) w *= k.pi[idx[t]];
        for (const auto& [a, b] : f.edges()) w *= k.b(assign[a], assign[b]);
        total += w;
        int pos = 0;
        while (pos < free && ++idx[pos] == k.k) idx[pos++] = 0;
        if (pos == free) break;
    }
    return total;
}

double theoretical_density(const Kernel& k, const RootedMotif& f, int root_block) {
    return positional_density(k, f, 0, root_block);
}

namespace {

long double falling(std::uint64_t n, int k) {
    long double acc = 1.0L;
    for (int t = 0; t < k; ++t) acc *= static_cast<long double>(n - t);
    return acc;
}

} // namespace

double expected_count(const Kernel& k, const RootedMotif& f, int root_block,
                      std::uint64_t n, double rho) {
    const long double s = theoretical_density(k, f, root_block);
    const long double scale = powl(rho, f.edge_count()) *
                              falling(n - 1, f.order() - 1) / static_cast<long double>(f.aut());
    return static_cast<double>(s * scale);
}

double variance_count(const Kernel& k, const RootedMotif& f, int root_block,
                      std::uint64_t n, double rho) {
    const OverlapSet os = overlap_set(f, f);
    const int glue_order = 2 * f.order() - 1;
    const int glue_edges = 2 * f.edge_count();
    long double total = 0.0L;
    for (const auto& entry : os.entries) {
        if (entry.shape.order() == glue_order && entry.shape.edge_count() == glue_edges)
            continue; // F^2 excluded: its term cancels against (E X)^2 at leading order
        const long double s = theoretical_density(k, entry.shape, root_block);
        total += static_cast<long double>(entry.coeff) * s * powl(rho, entry.shape.edge_count()) *
                 falling(n, entry.shape.order() - 1) / static_cast<long double>(entry.shape.aut());
    }
    return static_cast<double>(total);
}

double standardized_moment_target(int k) {
    require(k >= 1 && k <= 8, error::code::invalid_argument, "moment order must be in [1,8]");
    if (k % 2 == 1) return 0.0;
    double v = 1.0;
    for (int t = k - 1; t > 1; t -= 2) v *= t;
    return v;
}

CountMoments exact_count_moments(const Kernel& k, const std::vector<RootedMotif>& motifs,
                                 int root_block, std::uint64_t n, double rho) {
    const std::size_t d = motifs.size();
    CountMoments cm;
    cm.mean.resize(d);
    cm.cov = Matrix(d, d);
    std::vector<long double> mu(d);
    for (std::size_t t = 0; t < d; ++t) {
        mu[t] = static_cast<long double>(theoretical_density(k, motifs[t], root_block)) *
                powl(rho, motifs[t].edge_count()) * falling(n - 1, motifs[t].order() - 1) /
                static_cast<long double>(motifs[t].aut());
        cm.mean[t] = static_cast<double>(mu[t]);
    }
    for (std::size_t t1 = 0; t1 < d; ++t1)
        for (std::size_t t2 = t1; t2 < d; ++t2) {
            const OverlapSet os = overlap_set(motifs[t1], motifs[t2]);
            long double exy = 0.0L;
            for (const auto& entry : os.entries) {
                const long double s = theoretical_density(k, entry.shape, root_block);
                exy += static_cast<long double>(entry.coeff) * s *
                       powl(rho, entry.shape.edge_count()) *
                       falling(n - 1, entry.shape.order() - 1) /
                       static_cast<long double>(entry.shape.aut());
            }
            const double cov = static_cast<double>(exy - mu[t1] * mu[t2]);
            cm.cov.at(t1, t2) = cov;
            cm.cov.at(t2, t1) = cov;
        }
    return cm;
}

CountMoments exact_density_moments(const Kernel& k, const std::vector<RootedMotif>& motifs,
                                   int root_block, std::uint64_t n, double rho) {
    CountMoments counts = exact_count_moments(k, motifs, root_block, n, rho);
    const std::size_t d = motifs.size();
    const long double rho_eff = static_cast<long double>(rho) * k.mean_value();
    std::vector<long double> scale(d);
    for (std::size_t t = 0; t < d; ++t)
        scale[t] = powl(rho_eff, -motifs[t].edge_count()) /
                   static_cast<long double>(count_in_complete(motifs[t], n));
    CountMoments dm;
    dm.mean.resize(d);
    dm.cov = Matrix(d, d);
    for (std::size_t t = 0; t < d; ++t)
        dm.mean[t] = static_cast<double>(static_cast<long double>(counts.mean[t]) * scale[t]);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            dm.cov.at(i, j) = static_cast<double>(
                static_cast<long double>(counts.cov.at(i, j)) * scale[i] * scale[j]);
    return dm;
}

} // namespace rcs
