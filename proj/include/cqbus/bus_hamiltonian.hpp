#pragma once

// Hamiltonians of N charge qubits sharing one resonator mode (hbar = 1):
//
//   H = omega (a^dag a + 1/2) - 1/2 sum_k Omega_k rho_z^(k)
//       + sum_k lambda_k (a^dag rho_-^(k) + rho_+^(k) a)
//
// with rho_z = |g><g| - |e><e| in each qubit's eigenbasis. The zero-point term
// omega/2 is kept so that absolute phases match the closed forms.

#include <cstddef>
#include <span>
#include <vector>

#include "cqbus/quantum_core.hpp"

namespace cqbus {

struct QubitDrive {
    double Omega;   ///< qubit angular frequency
    double lambda;  ///< coupling to the resonator
    double eta = 0.0;  ///< mixing angle, used only by the lab-frame builder
};

struct BusConfig {
    double omega;                     ///< resonator angular frequency
    std::vector<QubitDrive> qubits;
    std::size_t fock_cutoff = 4;

    HilbertSpace space() const { return HilbertSpace(qubits.size(), fock_cutoff); }
};

/// Single qubit + resonator, Jaynes-Cummings form.
HermitianOperator build_jc(double omega, double Omega, double lambda, std::size_t fock_cutoff);

/// N-qubit bus Hamiltonian under the rotating-wave approximation.
HermitianOperator build_multi(const BusConfig& cfg);

/// Lab-frame Hamiltonian with the linearized flux coupling
/// g_k (a + a^dag) sigma_x^(k), sigma_x taken in the charge basis. In the
/// eigenbasis sigma_x = sin(eta) rho_z + cos(eta) (rho_+ + rho_-), and
/// g_k cos(eta_k) = lambda_k, so each qubit contributes
///
///   lambda_k (a + a^dag)(rho_+ + rho_-) + lambda_k tan(eta_k) (a + a^dag) rho_z.
///
/// Counter-rotating terms break excitation-number conservation. At
/// cos(eta) = 0 lambda vanishes and the longitudinal term is taken as zero.
HermitianOperator build_lab_frame(const BusConfig& cfg);

/// N = a^dag a + sum_k |e_k><e_k|.
HermitianOperator excitation_number(const HilbertSpace& space);

/// Basis indices with total excitation number n, ascending.
std::vector<std::size_t> manifold_indices(const HilbertSpace& space, std::size_t n);

/// Principal submatrix on the given indices.
CMatrix extract_block(const HermitianOperator& h, std::span<const std::size_t> indices);

/// Two-qubit ket |a, b, photons> of a joint-resonance manifold.
struct PairKet {
    QubitLevel first;
    QubitLevel second;
    std::size_t photons;
};

/// Closed-form eigensystem of two qubits resonant with the mode (Omega = omega)
/// with equal coupling, inside the manifold of n excitations.
///
/// Basis order: |g,g,n>, |g,e,n-1>, |e,g,n-1>, |e,e,n-2>, keeping only kets
/// with a non-negative photon number. Levels are returned in the order
/// E1, E2, E3, E4 = w(n-1/2) - lambda sqrt(4n-2), w(n-1/2), w(n-1/2), w(n-1/2) + lambda sqrt(4n-2)
/// for n >= 2; for n = 1 the three levels psi_1, psi_3, psi_4; for n = 0 the
/// single ground level -omega/2.
struct PairManifold {
    std::size_t excitations;
    std::vector<PairKet> basis;
    std::vector<int> labels;     ///< level numbers 1..4 (0 for the n = 0 ground)
    Eigen::VectorXd energies;
    CMatrix vectors;             ///< column k is the eigenvector of energies(k)
};

PairManifold two_qubit_resonant_eigensystem(int n, double omega, double lambda);

} // namespace cqbus
