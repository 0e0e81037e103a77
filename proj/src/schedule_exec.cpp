#include "cqbus/executor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "cqbus/analytic_evolution.hpp"

namespace cqbus {

std::string to_string(Tier tier) {
    switch (tier) {
    case Tier::analytic: return "analytic";
    case Tier::rwa: return "rwa";
    case Tier::lab: return "lab";
    }
    return "unknown";
}

Tier parse_tier(const std::string& text) {
    if (text == "analytic") return Tier::analytic;
    if (text == "rwa" || text == "rwa-numeric") return Tier::rwa;
    if (text == "lab" || text == "lab-frame") return Tier::lab;
    throw ContractViolation("unknown tier '" + text + "' (expected analytic, rwa or lab)");
}

BusConfig segment_config(const BusConfig& cfg, const schedule::Segment& segment, const ExecuteOptions& options) {
    BusConfig out = cfg;
    for (QubitDrive& q : out.qubits) {
        if (!options.idle_coupling) q.lambda = 0.0;
    }
    for (std::size_t q : segment.resonant) {
        if (q >= cfg.qubits.size()) throw ContractViolation("segment addresses qubit q" + std::to_string(q) +
                                                            " outside the configuration");
        out.qubits[q].Omega = cfg.omega;
        out.qubits[q].lambda = segment.coupling.value_or(cfg.qubits[q].lambda);
    }
    return out;
}

namespace {

bool is_resonant(const schedule::Segment& seg, std::size_t q) {
    return std::find(seg.resonant.begin(), seg.resonant.end(), q) != seg.resonant.end();
}

StateVector analytic_window(const StateVector& psi, const BusConfig& cfg, const schedule::Segment& seg,
                            bool idle_frame) {
    const double t = seg.duration;
    StateVector out = psi;
    for (std::size_t q = 0; q < cfg.qubits.size() && !idle_frame; ++q) {
        if (!is_resonant(seg, q)) out = analytic::idle_phase(out, q, cfg.qubits[q].Omega, t);
    }
    auto coupling = [&](std::size_t q) { return seg.coupling.value_or(cfg.qubits[q].lambda); };
    switch (seg.resonant.size()) {
    case 0:
        return analytic::free_resonator(out, cfg.omega, t);
    case 1:
        return analytic::jc_resonant_step(out, seg.resonant[0], coupling(seg.resonant[0]), cfg.omega, t);
    case 2: {
        const double a = coupling(seg.resonant[0]);
        const double b = coupling(seg.resonant[1]);
        if (a != b) {
            throw ContractViolation("analytic tier: joint resonance needs equal couplings (got " +
                                    schedule::format_number(a) + " and " + schedule::format_number(b) + ")");
        }
        return analytic::joint_resonant_step(out, seg.resonant[0], seg.resonant[1], a, cfg.omega, t);
    }
    default:
        throw ContractViolation("analytic tier supports at most two simultaneously resonant qubits");
    }
}

void check_top_level(const StateVector& psi, std::size_t segment) {
    const HilbertSpace& s = psi.space();
    double pop = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (s.photons(i) == s.fock_cutoff()) pop += std::norm(psi[i]);
    if (pop > kNumericTruncationTolerance) {
        throw TruncationError("segment " + std::to_string(segment) + ": population " + std::to_string(pop) +
                              " reached the Fock cutoff");
    }
}

} // namespace

ExecutionResult execute(const schedule::PulseSchedule& schedule, const BusConfig& cfg, const StateVector& initial,
                        Tier tier, const ExecuteOptions& options) {
    if (!(initial.space() == cfg.space())) {
        throw SpaceMismatch("execute: initial state does not match the bus configuration");
    }
    if (schedule.segments.empty()) throw ContractViolation("execute: schedule has no segments");

    // Windows with the same resonant set and coupling share one eigendecomposition.
    std::map<std::pair<std::vector<std::size_t>, std::optional<double>>, Propagator> cache;

    ExecutionResult result{initial, {}};
    for (std::size_t k = 0; k < schedule.segments.size(); ++k) {
        const schedule::Segment& seg = schedule.segments[k];
        if (!(seg.duration > 0.0)) throw ContractViolation("execute: segment durations must be positive");
        const BusConfig window = segment_config(cfg, seg, options);
        if (tier == Tier::analytic) {
            result.final_state = analytic_window(result.final_state, cfg, seg, options.idle_frame);
        } else {
            auto key = std::make_pair(seg.resonant, seg.coupling);
            std::sort(key.first.begin(), key.first.end());
            auto it = cache.find(key);
            if (it == cache.end()) {
                const HermitianOperator h = tier == Tier::rwa ? build_multi(window) : build_lab_frame(window);
                it = cache.emplace(key, Propagator(h)).first;
            }
            result.final_state = it->second.apply(result.final_state, seg.duration);
            check_top_level(result.final_state, k);
            for (std::size_t q = 0; q < cfg.qubits.size() && options.idle_frame; ++q) {
                if (!is_resonant(seg, q)) {
                    result.final_state = analytic::idle_phase(result.final_state, q, cfg.qubits[q].Omega, -seg.duration);
                }
            }
        }
        result.trace.push_back(result.final_state);
    }
    return result;
}

} // namespace cqbus
