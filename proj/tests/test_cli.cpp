#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cqbus/cli.hpp"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cqbus::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    const fs::path dir = fs::path(CQBUS_BINARY_DIR) / "cli_scratch";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string write(const std::string& name, const std::string& text) {
    const std::string path = scratch(name);
    std::ofstream(path) << text;
    return path;
}

std::string source(const std::string& rel) { return std::string(CQBUS_SOURCE_DIR) + "/" + rel; }

} // namespace

TEST_CASE("bell on default parameters reports fidelity 1", "[cli]") {
    const Result r = run({"bell"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(std::abs(doc["results"]["fidelity"].get<double>() - 1.0) < 1e-9);
    REQUIRE(doc["results"]["checkpoints"].contains("waypoint_gg1_fidelity"));
    REQUIRE(doc["meta"]["command"] == "bell");
}

TEST_CASE("spectrum of the empty manifold is -omega/2", "[cli]") {
    const Result r = run({"spectrum", "--n", "0"});
    REQUIRE(r.code == 0);
    const json levels = json::parse(r.out)["results"]["levels"];
    REQUIRE(levels.size() == 1);
    REQUIRE(levels[0]["analytic"].get<double>() == -0.5);
    REQUIRE(std::abs(levels[0]["numeric"].get<double>() + 0.5) < 1e-14);
}

TEST_CASE("spectrum and dispersive as CSV", "[cli]") {
    const Result s = run({"spectrum", "--n", "3", "--format", "csv"});
    REQUIRE(s.code == 0);
    REQUIRE(s.out.rfind("level,analytic,numeric,abs_diff,residual\n", 0) == 0);
    const Result d = run({"dispersive", "--ratios", "3,10"});
    REQUIRE(d.code == 0);
    REQUIRE(d.out.rfind("delta_over_lambda,lambda,delta,bound,observed,abs_diff\n3,", 0) == 0);
    REQUIRE(std::count(d.out.begin(), d.out.end(), '\n') == 3);
}

TEST_CASE("malformed schedule exits 2 and writes nothing", "[cli]") {
    const std::string sched = write("bad.sched", "schedule \"x\" {\n  resonate q0 for 1/0;\n}\n");
    const std::string out = scratch("bad_out.json");
    fs::remove(out);
    const Result r = run({"run", sched, "--out", out});
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("2:20: division by zero") != std::string::npos);
    REQUIRE_FALSE(fs::exists(out));
}

TEST_CASE("physics errors exit 3", "[cli]") {
    // Counter-rotating terms at lambda = 0.05 push population into the top
    // Fock level of the default cutoff.
    const std::string out = scratch("lab_out.json");
    fs::remove(out);
    const Result r = run({"wstate", "--tier", "lab", "--out", out});
    REQUIRE(r.code == 3);
    REQUIRE_FALSE(fs::exists(out));
}

TEST_CASE("run writes final state and trace", "[cli]") {
    const std::string out = scratch("run_out.json");
    const Result r = run({"run", source("schedules/bell.sched"), "--init", "e,g,g,0", "--out", out});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream in(out);
    const json doc = json::parse(in);
    REQUIRE(doc["results"]["trace"].size() == 2);
    REQUIRE(doc["inputs"]["schedule"]["segments"].size() == 2);
    REQUIRE(doc["results"]["final_state"]["amplitudes"].size() == 40);
}

TEST_CASE("identical inputs give byte-identical output", "[cli]") {
    const Result a = run({"phase-gate", "--tier", "rwa"});
    const Result b = run({"phase-gate", "--tier", "rwa"});
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
    const Result stamped = run({"phase-gate", "--stamp"});
    REQUIRE(json::parse(stamped.out)["meta"].contains("stamp"));
}

TEST_CASE("validation errors exit 2", "[cli]") {
    REQUIRE(run({}).code == 2);
    REQUIRE(run({"bell", "--tier", "exact"}).code == 2);
    REQUIRE(run({"bell", "--bogus"}).code == 2);
    REQUIRE(run({"device"}).code == 2);  // effective defaults, no SI inputs
    REQUIRE(run({"run", "/nonexistent.sched"}).code == 2);
    REQUIRE(run({"run", source("schedules/bell.sched"), "--init", "e,g"}).code == 2);
    const std::string params = write("bad_params.json", "{\"effective\": {\"omega\": 1}}");
    REQUIRE(run({"bell", "--params", params}).code == 2);
    REQUIRE(run({"--help"}).code == 0);
}

TEST_CASE("device prints derived quantities from SI inputs", "[cli]") {
    const Result r = run({"device", "--params", source("data/sample_si.json")});
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out)["results"];
    REQUIRE(res.contains("E_c"));
    REQUIRE(res.contains("omega_k"));
    REQUIRE(res["qubits"].size() == 2);
    REQUIRE(res["qubits"][0].contains("eta"));
    REQUIRE(res["qubits"][0].contains("lambda"));
}
