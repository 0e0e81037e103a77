#pragma once

// Sequential-resonance protocols on the charge-qubit bus and their checks.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cqbus/device_model.hpp"
#include "cqbus/executor.hpp"

namespace cqbus::protocols {

struct ProtocolOptions {
    /// Coupling used in every resonant window (lambda retuned for gate
    /// operations). Unset: each resonant qubit uses its configured coupling.
    std::optional<double> resonant_coupling;
    ExecuteOptions execute;
};

struct Checkpoint {
    std::string name;
    double value;
};

/// Derived phase-gate phases next to the closed-form theta_1..theta_4.
struct PhaseGateAnalysis {
    std::array<double, 4> derived{};   ///< arg of the diagonal, [0, 2pi)
    std::array<double, 4> formula{};   ///< theta_k mod 2pi, theta_4 read without the stray i
    std::array<double, 4> difference{};  ///< derived - formula wrapped to (-pi, pi]
    /// e^{+i theta_k} on every basis state (state-map form).
    bool state_map_matches = false;
    /// The printed matrix form diag(e^{i th1}, e^{-i th2}, e^{-i th3}, e^{-i th4}).
    bool matrix_form_matches = false;
    /// Literal theta_4 = -i(...)pi/lambda gives a factor of modulus e^{x}, not a phase.
    bool theta4_literal_reproducible = false;
    double theta4_literal_log_modulus = 0.0;  ///< ln|e^{i theta_4}| for the printed theta_4
    double off_diagonal = 0.0;
    double max_modulus_error = 0.0;  ///< max | |U_kk| - 1 |
};

struct ProtocolReport {
    std::string protocol;
    std::optional<schedule::PulseSchedule> schedule;
    Tier tier = Tier::analytic;
    std::optional<StateVector> state;  ///< final state (state protocols)
    std::optional<CMatrix> gate;       ///< effective matrix on the computational subspace
    std::string target;                ///< description of the reference
    double fidelity = 0.0;
    double leakage = 0.0;              ///< resonator population outside |0> at the end
    std::optional<PhaseGateAnalysis> phase_gate;
    std::vector<Checkpoint> checkpoints;
    std::vector<std::string> notes;
};

inline constexpr double kPhaseTolerance = 1e-8;

/// Wraps to (-pi, pi].
double wrap_pi(double phase);

/// theta_1..theta_4 (theta_4 without the stray i), not reduced mod 2pi.
std::array<double, 4> phase_gate_formula(double omega, double Omega_i, double Omega_j, double lambda);

/// Schedules produced by the protocol generators.
schedule::PulseSchedule phase_gate_schedule(std::size_t i, std::size_t j, const BusConfig& cfg,
                                            const ProtocolOptions& options = {});
schedule::PulseSchedule bell_schedule(std::size_t i, std::size_t j, const BusConfig& cfg,
                                      const ProtocolOptions& options = {});
schedule::PulseSchedule w_schedule(std::size_t i, std::size_t j, std::size_t k, const BusConfig& cfg,
                                   const ProtocolOptions& options = {});

/// i, j and i again resonant for one full vacuum Rabi period 2 pi/|lambda|
/// each, starting from the resonator vacuum. Reports the effective 4x4 matrix
/// on {|g g>, |g e>, |e g>, |e e>} (other qubits in g, resonator in |0>), its
/// phases, and the process fidelity to diag(e^{i theta_k}).
ProtocolReport phase_gate(std::size_t i, std::size_t j, const BusConfig& cfg, Tier tier,
                          const ProtocolOptions& options = {});

/// |e_i g_j 0> -> i resonant for pi/(2|lambda|) -> |g g 1> -> i, j jointly
/// resonant for pi/(2 sqrt2 |lambda|) -> (|g e> + |e g>)/sqrt2.
ProtocolReport bell_protocol(std::size_t i, std::size_t j, const BusConfig& cfg, Tier tier,
                             const ProtocolOptions& options = {});

/// |g_i g_j e_k 0> -> k resonant for acos(1/sqrt3)/|lambda| -> i, j jointly
/// resonant for t2 = pi/(2 sqrt2 |lambda|) ->
/// (1/sqrt3)[|g g e> - e^{-i omega t2}(|g e g> + |e g g>)].
///
/// The reference phase tracks only the resonator and the resonant pair, so the
/// fidelity is evaluated in the interaction frame of idle qubits
/// (ExecuteOptions::idle_frame). The raw lab-frame overlap is reported as the
/// checkpoint "lab_frame_literal_fidelity".
ProtocolReport w_protocol(std::size_t i, std::size_t j, std::size_t k, const BusConfig& cfg, Tier tier,
                          const ProtocolOptions& options = {});

/// Maximum transfer |e,0> -> |g,1> of a detuned qubit: lambda^2 / (lambda^2 + Delta^2/4).
double dispersive_leakage_bound(double lambda, double Delta);

/// The same maximum found numerically: propagate the one-excitation problem
/// of build_jc over a time grid spanning at least one oscillation, then
/// refine the best sample by golden-section search.
double observed_max_transfer(double lambda, double Delta, double omega = 1.0);

struct SingleQubitGateRequest {
    std::size_t qubit = 0;
    /// Idle operating point of the qubit; defines the computational basis.
    device::DeviceParams device;
    double gate_charge = 0.5;   ///< n_g during the gate
    double flux_ratio = 0.0;    ///< Phi_e / Phi_0 during the gate
    double duration = 0.0;
    /// Coupling during the gate; required when the device has no geometry.
    std::optional<double> coupling;
    double warn_ratio = 0.01;   ///< |lambda/Delta| above this adds a note
    double max_ratio = 0.1;     ///< |lambda/Delta| above this is an error
};

/// Rapid switch of (n_g, Phi_e) to new values for `duration`, then back. The
/// ideal gate is exp(-i H_q t) of the reduced charge Hamiltonian, expressed in
/// the idle eigenbasis. The analytic tier applies it exactly; numeric tiers
/// propagate the bus Hamiltonian with the qubit at its gate-point Omega,
/// lambda and eta, and the report fidelity is the process fidelity of the
/// achieved 2x2 block to the ideal gate. Throws PhysicsError when
/// |lambda/Delta| exceeds max_ratio.
ProtocolReport single_qubit_gate(const SingleQubitGateRequest& request, const BusConfig& cfg, Tier tier,
                                 const ExecuteOptions& options = {});

/// exp(-i H_q t) in the charge basis.
Eigen::Matrix2cd charge_propagator(const device::DeviceParams& p, double t);

} // namespace cqbus::protocols
