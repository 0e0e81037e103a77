#pragma once

// Closed-form evolution under the bus Hamiltonian, global phases included.
//
// Each step acts on the full N-qubit space but only touches the listed qubits
// (and the resonator, for resonant steps). A complete evolution over a window
// composes one resonant step with idle_phase for every qubit that is not
// resonant; global idle windows use free_resonator instead of a resonant step.

#include <cstddef>

#include "cqbus/quantum_core.hpp"

namespace cqbus::analytic {

/// Amplitude norm allowed on ladders cut by the Fock truncation.
inline constexpr double kTruncationTolerance = 1e-9;

/// One qubit resonant with the mode (Omega = omega) for time t:
///   |g,0>   -> |g,0>
///   |g,n+1> -> e^{-i(n+1)wt} [cos(sqrt(n+1) l t)|g,n+1> - i sin(sqrt(n+1) l t)|e,n>]
///   |e,n>   -> e^{-i(n+1)wt} [cos(sqrt(n+1) l t)|e,n>   - i sin(sqrt(n+1) l t)|g,n+1>]
/// A negative lambda flips the sign of the -i sin terms.
/// Throws TruncationError if |e, n_max> carries amplitude above the tolerance.
StateVector jc_resonant_step(const StateVector& psi, std::size_t qubit, double lambda, double omega,
                             double t);

/// Free precession of a decoupled qubit: |g> -> e^{+i Omega t/2}|g>, |e> -> e^{-i Omega t/2}|e>.
StateVector idle_phase(const StateVector& psi, std::size_t qubit, double Omega, double t);

/// Free resonator with no resonant qubit: |n> -> e^{-i w (n + 1/2) t}|n>.
StateVector free_resonator(const StateVector& psi, double omega, double t);

/// Two qubits jointly resonant with equal coupling; evolves each excitation
/// manifold in the closed-form eigenbasis of two_qubit_resonant_eigensystem.
/// Throws TruncationError if a manifold cut by the Fock truncation is populated.
StateVector joint_resonant_step(const StateVector& psi, std::size_t first, std::size_t second,
                                double lambda, double omega, double t);

} // namespace cqbus::analytic
