#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "cqbus/errors.hpp"
#include "cqbus/params_io.hpp"
#include "cqbus/report_io.hpp"

using namespace cqbus;
using Catch::Approx;
using nlohmann::json;

TEST_CASE("built-in defaults match the shipped parameter file", "[io]") {
    const io::Parameters shipped = io::load_parameters(std::string(CQBUS_SOURCE_DIR) + "/data/default_params.json");
    const io::Parameters builtin = io::default_parameters();
    REQUIRE(io::to_json(shipped) == io::to_json(builtin));
    REQUIRE(builtin.bus.qubits.size() == 3);
    REQUIRE(builtin.bus.omega == 1.0);
    REQUIRE(builtin.bus.fock_cutoff == 4);
    REQUIRE(builtin.lambda_binding == 0.05);
    REQUIRE(builtin.bus.qubits[0].Omega == 1.3);
    REQUIRE(builtin.bus.qubits[2].Omega == 1.9);
}

TEST_CASE("effective parameters", "[io]") {
    const json doc = json::parse(R"({"effective": {"omega": 2.0, "qubits": [{"Omega": 2.5, "lambda": -0.01}]}})");
    const io::Parameters p = io::parse_parameters(doc);
    REQUIRE(p.bus.fock_cutoff == 4);
    REQUIRE(p.lambda_binding == 0.01);
    REQUIRE(p.bus.qubits[0].eta == 0.0);

    REQUIRE_THROWS_AS(io::parse_parameters(json::parse(R"({"effective": {"omega": 1, "qubits": []}})")),
                      ContractViolation);
    REQUIRE_THROWS_AS(io::parse_parameters(json::parse(R"({"effective": {"omega": 1, "qubit": []}})")),
                      ContractViolation);
    REQUIRE_THROWS_AS(
        io::parse_parameters(json::parse(R"({"effective": {"omega": -1, "qubits": [{"Omega": 1, "lambda": 0.1}]}})")),
        ContractViolation);
    REQUIRE_THROWS_AS(
        io::parse_parameters(json::parse(R"({"effective": {"omega": 1, "qubits": [{"Omega": "x", "lambda": 0.1}]}})")),
        ContractViolation);
    REQUIRE_THROWS_AS(io::parse_parameters(json::parse(R"({"other": {}})")), ContractViolation);
    REQUIRE_THROWS_AS(io::load_parameters("/nonexistent/params.json"), ContractViolation);
}

TEST_CASE("SI parameters go through the device model", "[io]") {
    const io::Parameters p = io::load_parameters(std::string(CQBUS_SOURCE_DIR) + "/data/sample_si.json");
    REQUIRE(p.mode == "si");
    REQUIRE(p.bus.omega == Approx(2.0 * std::numbers::pi * 5e9).epsilon(1e-13));
    REQUIRE(p.devices.size() == 2);
    REQUIRE(p.devices[0].charging_energy == Approx(695467087794.111).epsilon(1e-12));
    REQUIRE(p.bus.qubits[0].Omega == Approx(device::qubit_frequency(p.devices[0])));
    REQUIRE(p.bus.qubits[0].lambda > 0.0);

    json bad = json::parse(R"({"si": {"C_J": 3e-16, "C_g": 1e-16, "E_c_hz": 1e9, "E_J_hz": 5e9,
        "geometry": {"S": 1e-12, "d": 1e-6, "l": 0.01, "L": 1e-6, "C_line": 1e-10},
        "qubits": [{"n_g": 0.3, "flux_ratio": 0.25}]}})");
    REQUIRE_THROWS_AS(io::parse_parameters(bad), ContractViolation);
}

TEST_CASE("documents use 17 significant digits and null for non-finite values", "[io]") {
    json doc = {{"a", 0.1}, {"b", std::numeric_limits<double>::infinity()}, {"c", {1, 2}}, {"d", "q\"x"}};
    const std::string text = io::dump(doc);
    REQUIRE(text.find("\"a\": 0.10000000000000001") != std::string::npos);
    REQUIRE(text.find("\"b\": null") != std::string::npos);
    REQUIRE(text.find("\"c\": [1, 2]") != std::string::npos);
    REQUIRE(text.find("\"d\": \"q\\\"x\"") != std::string::npos);
    REQUIRE(json::parse(text)["a"].get<double>() == 0.1);
    REQUIRE(io::format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("document sections and optional stamp", "[io]") {
    const json plain = io::make_document("x", json::object(), json::object(), false);
    REQUIRE(plain.contains("meta"));
    REQUIRE(plain.contains("inputs"));
    REQUIRE(plain.contains("results"));
    REQUIRE_FALSE(plain["meta"].contains("stamp"));
    REQUIRE(io::make_document("x", json::object(), json::object(), true)["meta"].contains("stamp"));
}

TEST_CASE("CSV rows", "[io]") {
    const std::string csv = io::to_csv({"a", "b"}, {{json(1), json(0.5)}, {json("x"), json(0.1)}});
    REQUIRE(csv == "a,b\n1,0.5\nx,0.10000000000000001\n");
}
