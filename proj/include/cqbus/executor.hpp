#pragma once

#include <string>
#include <vector>

#include "cqbus/bus_hamiltonian.hpp"
#include "cqbus/schedule.hpp"

namespace cqbus {

/// Simulation fidelity level.
///   analytic: closed-form steps, idle qubits exactly decoupled
///   rwa:      exact propagation of the RWA bus Hamiltonian per window
///   lab:      exact propagation including counter-rotating terms
enum class Tier { analytic, rwa, lab };

std::string to_string(Tier tier);
/// Accepts "analytic", "rwa", "rwa-numeric", "lab", "lab-frame".
Tier parse_tier(const std::string& text);

struct ExecuteOptions {
    /// Numeric tiers: keep the configured coupling of idle (detuned) qubits.
    /// When false, idle qubits are decoupled exactly as in the analytic tier.
    bool idle_coupling = true;
    /// Report states in the interaction frame of idle qubits: after every
    /// window, undo the free precession exp(+i Omega_q t rho_z / 2) of each
    /// qubit that was not resonant in it. The analytic tier then simply skips
    /// idle phases.
    bool idle_frame = false;
};

/// Population allowed in the top Fock level after a numeric window.
inline constexpr double kNumericTruncationTolerance = 1e-6;

struct ExecutionResult {
    StateVector final_state;
    std::vector<StateVector> trace;  ///< state after each segment
};

/// Bus configuration in force during one window: resonant qubits are tuned to
/// Omega = omega with the segment coupling (or their own), idle qubits keep
/// their configured frequency and coupling (zeroed unless idle_coupling).
BusConfig segment_config(const BusConfig& cfg, const schedule::Segment& segment,
                         const ExecuteOptions& options = {});

/// Runs a compiled schedule from `initial`.
///
/// Throws ContractViolation if a segment addresses a qubit outside the
/// configuration, or (analytic tier) more than two simultaneously resonant
/// qubits or a joint pair with unequal couplings. Throws TruncationError
/// when population reaches the Fock cutoff.
ExecutionResult execute(const schedule::PulseSchedule& schedule, const BusConfig& cfg,
                        const StateVector& initial, Tier tier, const ExecuteOptions& options = {});

} // namespace cqbus
