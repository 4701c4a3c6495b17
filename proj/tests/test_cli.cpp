#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("RCS_CLI_PATH");
    REQUIRE_MESSAGE(p != nullptr, "RCS_CLI_PATH must point at the CLI binary");
    return p;
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path workdir() {
    const fs::path dir = fs::temp_directory_path() / "rcs_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("census subcommand") {
    const fs::path dir = workdir();
    const fs::path graph = dir / "tri.edges";
    std::ofstream(graph) << "0 1\n1 2\n2 0\n2 3\n";
    const fs::path out = dir / "census.json";

    CHECK(run("census --graph " + graph.string() + " --motifs triangle,square --out " +
              out.string()) == 0);
    const Json j = Json::parse(slurp(out));
    CHECK(j["result"]["n"] == 4);
    CHECK(j["result"]["counts"][0][2] == 1); // triangles at vertex 2

    const std::string table = slurp(dir / "census.tsv");
    CHECK(table.find("triangle_count") != std::string::npos);
    // header + one row per vertex
    CHECK(std::count(table.begin(), table.end(), '\n') == 5);
}

TEST_CASE("exit codes") {
    CHECK(run("census --graph /missing.edges --out /tmp/x.json") == 1);
    CHECK(run("census --no-such-flag") == 1);
    CHECK(run("") != 0);
}

TEST_CASE("simulate then fit round trip") {
    const fs::path dir = workdir();
    const fs::path kernel = dir / "kernel.json";
    std::ofstream(kernel) << "{\"k\":2,\"B\":[0.6,0.05,0.05,0.6],\"pi\":[0.5,0.5]}";
    const fs::path out = dir / "sim.json";

    CHECK(run("simulate --kernel " + kernel.string() + " --n 120 --rho 0.5 --seed 3 --out " +
              out.string()) == 0);
    CHECK(fs::exists(dir / "sim.edges"));
    CHECK(fs::exists(dir / "sim.latents.tsv"));

    const fs::path fit_out = dir / "fit.json";
    CHECK(run("fit --graph " + (dir / "sim.edges").string() + " --seed 1 --out " +
              fit_out.string()) == 0);
    const Json fit = Json::parse(slurp(fit_out));
    CHECK(fit["result"]["k"] == 2);
}

TEST_CASE("reports replay byte-identically modulo timestamp") {
    const fs::path dir = workdir();
    const fs::path graph = dir / "replay.edges";
    std::ofstream(graph) << "0 1\n1 2\n2 0\n3 1\n3 2\n";
    const fs::path out1 = dir / "r1.json";
    const fs::path out2 = dir / "r2.json";

    const std::string cmd = "census --graph " + graph.string() + " --motifs triangle --seed 5";
    CHECK(run(cmd + " --out " + out1.string()) == 0);
    CHECK(run(cmd + " --out " + out2.string()) == 0);
    Json a = Json::parse(slurp(out1));
    Json b = Json::parse(slurp(out2));
    a.erase("timestamp_ms");
    b.erase("timestamp_ms");
    CHECK(a == b);
}

TEST_CASE("overlap and verify-identity subcommands") {
    const fs::path dir = workdir();
    const fs::path out = dir / "ov.json";
    CHECK(run("overlap --f1 triangle --f2 cherry --out " + out.string()) == 0);
    const Json j = Json::parse(slurp(out));
    CHECK(j["result"]["entries"].size() == 4);

    const fs::path vout = dir / "verify.json";
    CHECK(run("verify-identity --graphs 3 --max-n 10 --seed 2 --motifs edge,triangle --out " +
              vout.string()) == 0);
    CHECK(Json::parse(slurp(vout))["result"]["pass"] == true);
}

TEST_CASE("gof and regress subcommands") {
    const fs::path dir = workdir();
    // Build demo data via the fixtures subcommand.
    const fs::path fixdir = dir / "assets";
    CHECK(run("fixtures --dir " + fixdir.string() + " --out " + (dir / "fx.json").string()) == 0);

    const fs::path gout = dir / "gof.json";
    CHECK(run("gof --graph " + (fixdir / "school.edges").string() +
              " --alpha 0.1 --replicates 50 --seed 4 --workers 2 --out " + gout.string()) == 0);
    const Json g = Json::parse(slurp(gout));
    CHECK(g["result"].contains("critical_value"));
    CHECK(g["result"].contains("rejected"));

    const fs::path rout = dir / "regress.json";
    CHECK(run("regress --graph " + (fixdir / "school.edges").string() + " --covariates " +
              (fixdir / "school_covariates.csv").string() + " --motifs triangle --out " +
              rout.string()) == 0);
    const Json r = Json::parse(slurp(rout));
    CHECK(r["result"]["converged"] == true);
    CHECK(r["result"]["beta"].size() == 3); // intercept, triangle, activity
}

TEST_CASE("validate subcommand emits a qq table") {
    const fs::path dir = workdir();
    const fs::path out = dir / "val.json";
    CHECK(run("validate --preset fig-c1-qq --n 120 --replicates 30 --seed 7 --out " +
              out.string()) == 0);
    CHECK(fs::exists(dir / "val.qq.tsv"));
    const Json j = Json::parse(slurp(out));
    CHECK(j["result"]["report"]["ks_p_value"].is_number());
}
