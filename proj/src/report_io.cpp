#include "cqbus/report_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace cqbus::io {

using nlohmann::json;

std::string format_double(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write(std::ostringstream& os, const json& v, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) { os << "{}"; return; }
        os << "{\n";
        bool first = true;
        for (const auto& [key, value] : v.items()) {
            if (!first) os << ",\n";
            first = false;
            os << pad << json(key).dump() << ": ";
            write(os, value, depth + 1);
        }
        os << "\n" << close << "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) { os << "[]"; return; }
        // Short rows of scalars stay on one line.
        bool flat = v.size() <= 4;
        for (const json& e : v) flat = flat && e.is_primitive();
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                write(os, v[i], depth + 1);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",\n";
            os << pad;
            write(os, v[i], depth + 1);
        }
        os << "\n" << close << "]";
        return;
    }
    case json::value_t::number_float:
        os << format_double(v.get<double>());
        return;
    default:
        os << v.dump();
    }
}

} // namespace

std::string dump(const json& doc) {
    std::ostringstream os;
    write(os, doc, 0);
    os << "\n";
    return os.str();
}

json to_json(const StateVector& psi) {
    const HilbertSpace& s = psi.space();
    json amps = json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        amps.push_back({{"ket", s.label(i)}, {"re", psi[i].real()}, {"im", psi[i].imag()}});
    }
    return {{"qubits", s.n_qubits()}, {"fock_cutoff", s.fock_cutoff()}, {"norm", psi.norm()}, {"amplitudes", amps}};
}

json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

json to_json(const schedule::PulseSchedule& s) {
    json segs = json::array();
    for (const schedule::Segment& seg : s.segments) {
        json o = {{"resonant", seg.resonant}, {"duration", seg.duration}};
        if (seg.coupling) o["coupling"] = *seg.coupling;
        segs.push_back(o);
    }
    json out = {{"name", s.name}, {"lambda", s.lambda}, {"segments", segs}};
    try {
        out["text"] = schedule::emit(s);
    } catch (const std::exception&) {
        out["text"] = nullptr;  // per-segment couplings have no surface syntax
    }
    return out;
}

json to_json(const protocols::ProtocolReport& r) {
    json out = {{"protocol", r.protocol}, {"tier", to_string(r.tier)}, {"target", r.target},
                {"fidelity", r.fidelity}, {"leakage", r.leakage}};
    if (r.schedule) out["schedule"] = to_json(*r.schedule);
    if (r.phase_gate) {
        const protocols::PhaseGateAnalysis& a = *r.phase_gate;
        json phases = json::array();
        for (int k = 0; k < 4; ++k) {
            phases.push_back({{"index", k + 1}, {"derived", a.derived[k]}, {"formula", a.formula[k]},
                              {"difference", a.difference[k]}});
        }
        out["phases"] = phases;
        out["diagonality_residual"] = a.off_diagonal;
        out["max_modulus_error"] = a.max_modulus_error;
        out["state_map_matches"] = a.state_map_matches;
        out["matrix_form_matches"] = a.matrix_form_matches;
        out["theta4_literal_reproducible"] = a.theta4_literal_reproducible;
        out["theta4_literal_log_modulus"] = a.theta4_literal_log_modulus;
    }
    json cps = json::object();
    for (const protocols::Checkpoint& c : r.checkpoints) cps[c.name] = c.value;
    out["checkpoints"] = cps;
    out["notes"] = r.notes;
    if (r.gate) out["gate"] = to_json(*r.gate);
    if (r.state) out["final_state"] = to_json(*r.state);
    return out;
}

json make_document(const std::string& command, json inputs, json results, bool stamp) {
    json meta = {{"tool", "cqbus"}, {"command", command}, {"format_version", 1}};
    if (stamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["stamp"] = buf;
    }
    return {{"meta", meta}, {"inputs", std::move(inputs)}, {"results", std::move(results)}};
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            const json& v = row[i];
            if (v.is_number_float()) os << format_double(v.get<double>());
            else if (v.is_string()) os << v.get<std::string>();
            else os << v.dump();
        }
        os << "\n";
    }
    return os.str();
}

} // namespace cqbus::io
