#pragma once

// Dense complex linear algebra over N two-level qubits coupled to one
// truncated resonator mode. Units: hbar = 1, energies are angular frequencies.
//
// Basis ordering: qubit 0 is the most significant tensor factor, the
// resonator is the last (least significant) one. A qubit bit of 0 means |g>,
// 1 means |e>. For qubit bits b_0..b_{N-1} and photon number n,
//
//     index = (b_0 * 2^{N-1} + ... + b_{N-1}) * (n_max + 1) + n.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqbus/errors.hpp"

namespace cqbus {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class QubitLevel : int { g = 0, e = 1 };

class HilbertSpace {
public:
    HilbertSpace(std::size_t n_qubits, std::size_t fock_cutoff);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    /// Maximum photon number n_max; the mode has n_max + 1 levels.
    std::size_t fock_cutoff() const noexcept { return fock_cutoff_; }
    std::size_t fock_levels() const noexcept { return fock_cutoff_ + 1; }
    std::size_t dimension() const noexcept { return dimension_; }

    std::size_t index(std::span<const QubitLevel> qubits, std::size_t photons) const;
    QubitLevel qubit_level(std::size_t index, std::size_t qubit) const;
    std::size_t photons(std::size_t index) const { return index % fock_levels(); }
    /// Qubit bit pattern of a basis index (qubit 0 is the MSB).
    std::size_t qubit_bits(std::size_t index) const { return index / fock_levels(); }
    /// Index with the given qubit's level replaced.
    std::size_t with_qubit(std::size_t index, std::size_t qubit, QubitLevel level) const;
    std::size_t with_photons(std::size_t index, std::size_t photons) const;
    /// Total excitation number: photons plus excited qubits.
    std::size_t excitations(std::size_t index) const;

    /// Human-readable label such as "e,g,0".
    std::string label(std::size_t index) const;

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    std::size_t n_qubits_;
    std::size_t fock_cutoff_;
    std::size_t dimension_;
};

class StateVector {
public:
    StateVector(HilbertSpace space, CVector amplitudes);

    /// Product basis state, e.g. basis(space, {e, g}, 0) for |e,g,0>.
    static StateVector basis(const HilbertSpace& space, std::span<const QubitLevel> qubits,
                             std::size_t photons);
    static StateVector basis(const HilbertSpace& space, std::size_t index);
    /// Parses a ket label such as "e,g,0" (one letter per qubit, then photons).
    static StateVector from_label(const HilbertSpace& space, const std::string& label);

    const HilbertSpace& space() const noexcept { return space_; }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    double norm() const { return amplitudes_.norm(); }
    StateVector normalized() const;
    Complex inner(const StateVector& other) const; ///< <this|other>

private:
    HilbertSpace space_;
    CVector amplitudes_;
};

class HermitianOperator {
public:
    /// Throws ContractViolation unless the matrix is Hermitian within
    /// kHermitianTolerance relative to its largest entry.
    HermitianOperator(HilbertSpace space, CMatrix matrix);

    const HilbertSpace& space() const noexcept { return space_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

    static constexpr double kHermitianTolerance = 1e-12;

private:
    HilbertSpace space_;
    CMatrix matrix_;
};

class UnitaryOperator {
public:
    /// Throws ContractViolation unless max|U^dagger U - I| <= kUnitaryTolerance.
    UnitaryOperator(HilbertSpace space, CMatrix matrix);

    const HilbertSpace& space() const noexcept { return space_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

    StateVector apply(const StateVector& psi) const;

    static constexpr double kUnitaryTolerance = 1e-10;

private:
    HilbertSpace space_;
    CMatrix matrix_;
};

struct Eigensystem {
    Eigen::VectorXd values;  ///< ascending
    CMatrix vectors;         ///< orthonormal columns
};

/// Full eigendecomposition. Eigenvectors inside a degenerate cluster are not
/// canonicalized; compare subspaces or residuals, never entries.
Eigensystem eig_hermitian(const HermitianOperator& h);

/// Eigendecomposition of H, cached so that exp(-iHt) can be applied for many t.
class Propagator {
public:
    explicit Propagator(const HermitianOperator& h);

    /// exp(-i H t) psi. Negative t evolves backwards.
    StateVector apply(const StateVector& psi, double t) const;
    UnitaryOperator unitary(double t) const;
    const Eigensystem& eigensystem() const noexcept { return eig_; }

private:
    HilbertSpace space_;
    Eigensystem eig_;
};

StateVector propagate(const HermitianOperator& h, const StateVector& psi, double t);

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

/// Matrix <b_r|U|b_c> of U restricted to the given basis.
CMatrix restrict_to_basis(const CMatrix& u, std::span<const StateVector> basis);

/// Largest off-diagonal magnitude of a square matrix.
double off_diagonal_residual(const CMatrix& m);

/// arg of the diagonal entries mapped to [0, 2pi), without a diagonality check.
std::vector<double> diagonal_phases(const CMatrix& m);

/// arg(<b_k|U|b_k>) in [0, 2pi). Throws ContractViolation naming the largest
/// off-diagonal magnitude if U is not diagonal on the basis within 1e-8.
std::vector<double> unitary_phases_mod_2pi(const UnitaryOperator& u,
                                           std::span<const StateVector> basis);
std::vector<double> unitary_phases_mod_2pi(const CMatrix& restricted);

inline constexpr double kDiagonalTolerance = 1e-8;

/// Population outside the resonator vacuum.
double resonator_leakage(const StateVector& psi);

/// <target| rho |target>, where rho is the reduced density matrix of
/// `target_qubits` after tracing out every other qubit and the resonator.
/// `target` lives on a space of target_qubits.size() qubits with cutoff 0.
double reduced_fidelity(const StateVector& full, std::span<const std::size_t> target_qubits,
                        const StateVector& target);

/// Same as reduced_fidelity, but requires the resonator to be in |0>: throws
/// PhysicsError if the amplitude norm outside the vacuum exceeds 1e-6.
double partial_trace_fidelity(const StateVector& full, std::span<const std::size_t> target_qubits,
                              const StateVector& target);

inline constexpr double kResonatorAmplitudeLeakage = 1e-6;

} // namespace cqbus
