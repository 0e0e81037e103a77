#include "cqbus/params_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "cqbus/errors.hpp"

namespace cqbus::io {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ContractViolation(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) throw ContractViolation(where + ": unknown field '" + key + "'");
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ContractViolation(where + ": missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) throw ContractViolation(where + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ContractViolation(where + "." + key + ": must be finite");
    return d;
}

std::size_t count(const json& obj, const std::string& key, const std::string& where, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ContractViolation(where + "." + key + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

const json& qubit_list(const json& obj, const std::string& where) {
    if (!obj.contains("qubits") || !obj.at("qubits").is_array() || obj.at("qubits").empty()) {
        throw ContractViolation(where + ": 'qubits' must be a non-empty array");
    }
    return obj.at("qubits");
}

Parameters parse_effective(const json& e) {
    const std::string where = "effective";
    check_keys(e, where, {"omega", "fock_cutoff", "lambda", "qubits"});
    Parameters p;
    p.mode = "effective";
    p.bus.omega = number(e, "omega", where);
    if (!(p.bus.omega > 0)) throw ContractViolation("effective.omega must be positive");
    p.bus.fock_cutoff = count(e, "fock_cutoff", where, 4);
    std::size_t k = 0;
    for (const json& q : qubit_list(e, where)) {
        const std::string w = where + ".qubits[" + std::to_string(k++) + "]";
        check_keys(q, w, {"Omega", "lambda", "eta"});
        QubitDrive d{number(q, "Omega", w), number(q, "lambda", w), q.contains("eta") ? number(q, "eta", w) : 0.0};
        if (d.Omega < 0) throw ContractViolation(w + ".Omega must be non-negative");
        p.bus.qubits.push_back(d);
    }
    p.lambda_binding = e.contains("lambda") ? number(e, "lambda", where) : std::abs(p.bus.qubits.front().lambda);
    return p;
}

Parameters parse_si(const json& s) {
    const std::string where = "si";
    check_keys(s, where, {"C_J", "C_g", "E_c_hz", "E_J_hz", "geometry", "fock_cutoff", "qubits"});
    constexpr double two_pi = 2.0 * std::numbers::pi;

    double e_c = 0.0;
    if (s.contains("E_c_hz")) {
        if (s.contains("C_J") || s.contains("C_g")) throw ContractViolation("si: give either E_c_hz or C_J/C_g, not both");
        e_c = two_pi * number(s, "E_c_hz", where);
    } else {
        e_c = device::charging_energy(number(s, "C_J", where), number(s, "C_g", where));
    }
    const double e_j = two_pi * number(s, "E_J_hz", where);

    if (!s.contains("geometry")) throw ContractViolation("si: missing field 'geometry'");
    const json& g = s.at("geometry");
    check_keys(g, "si.geometry", {"S", "d", "l", "L", "C_line", "k"});
    device::GeometryParams geo{number(g, "S", "si.geometry"), number(g, "d", "si.geometry"),
                               number(g, "l", "si.geometry"), number(g, "L", "si.geometry"),
                               number(g, "C_line", "si.geometry"),
                               static_cast<int>(count(g, "k", "si.geometry", 1))};
    geo.validate();

    Parameters p;
    p.mode = "si";
    p.bus.omega = device::mode_frequency(geo);
    p.bus.fock_cutoff = count(s, "fock_cutoff", where, 4);
    std::size_t k = 0;
    for (const json& q : qubit_list(s, where)) {
        const std::string w = where + ".qubits[" + std::to_string(k++) + "]";
        check_keys(q, w, {"n_g", "flux_ratio"});
        device::DeviceParams d{e_c, e_j, number(q, "n_g", w), number(q, "flux_ratio", w), geo};
        d.validate();
        const device::EffectiveQubit eff = device::effective_qubit(d, p.bus.omega);
        p.bus.qubits.push_back({eff.omega, eff.lambda_max, eff.eta});
        p.devices.push_back(d);
    }
    p.lambda_binding = std::abs(p.bus.qubits.front().lambda);
    return p;
}

} // namespace

Parameters parse_parameters(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.size() != 1) {
        throw ContractViolation("parameters: expected exactly one of {\"effective\": ...} or {\"si\": ...}");
    }
    Parameters p;
    if (doc.contains("effective")) p = parse_effective(doc.at("effective"));
    else if (doc.contains("si")) p = parse_si(doc.at("si"));
    else throw ContractViolation("parameters: expected \"effective\" or \"si\"");
    if (p.bus.fock_cutoff < 1) throw ContractViolation("parameters: fock_cutoff must be at least 1");
    if (!(p.lambda_binding > 0)) throw ContractViolation("parameters: lambda binding must be positive");
    return p;
}

Parameters load_parameters(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot read parameter file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ContractViolation("parameter file '" + path + "': " + e.what());
    }
    return parse_parameters(doc);
}

Parameters default_parameters() {
    nlohmann::json doc = {{"effective",
                           {{"omega", 1.0},
                            {"fock_cutoff", 4},
                            {"lambda", 0.05},
                            {"qubits",
                             {{{"Omega", 1.3}, {"lambda", 0.05}, {"eta", 0.0}},
                              {{"Omega", 1.6}, {"lambda", 0.05}, {"eta", 0.0}},
                              {{"Omega", 1.9}, {"lambda", 0.05}, {"eta", 0.0}}}}}}};
    return parse_parameters(doc);
}

nlohmann::json to_json(const Parameters& p) {
    nlohmann::json qubits = nlohmann::json::array();
    for (const QubitDrive& q : p.bus.qubits) qubits.push_back({{"Omega", q.Omega}, {"lambda", q.lambda}, {"eta", q.eta}});
    return {{"mode", p.mode},
            {"omega", p.bus.omega},
            {"fock_cutoff", p.bus.fock_cutoff},
            {"lambda", p.lambda_binding},
            {"qubits", qubits}};
}

} // namespace cqbus::io
