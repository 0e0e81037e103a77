#include "cqbus/analytic_evolution.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cqbus/bus_hamiltonian.hpp"

namespace cqbus::analytic {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_qubit(const HilbertSpace& s, std::size_t q, const char* what) {
    if (q >= s.n_qubits()) throw ContractViolation(std::string(what) + ": qubit index out of range");
}

Complex amp(const CVector& v, std::size_t i) { return v(static_cast<Eigen::Index>(i)); }
Complex& amp(CVector& v, std::size_t i) { return v(static_cast<Eigen::Index>(i)); }

} // namespace

StateVector jc_resonant_step(const StateVector& psi, std::size_t qubit, double lambda, double omega,
                             double t) {
    const HilbertSpace& s = psi.space();
    require_qubit(s, qubit, "jc_resonant_step");
    const CVector& in = psi.amplitudes();
    CVector out = in;
    const std::size_t top = s.fock_cutoff();

    for (std::size_t i = 0; i < s.dimension(); ++i) {
        if (s.qubit_level(i, qubit) != QubitLevel::g) {
            // |e, n_max> has no partner inside the truncated space.
            if (s.photons(i) == top) {
                if (std::abs(amp(in, i)) > kTruncationTolerance) {
                    throw TruncationError("jc_resonant_step: populated ladder reaches the Fock cutoff at |" +
                                          s.label(i) + ">");
                }
                amp(out, i) = std::polar(1.0, -static_cast<double>(top + 1) * omega * t) * amp(in, i);
            }
            continue;
        }
        const std::size_t n = s.photons(i);
        if (n == 0) continue;  // |g,0> is stationary
        const std::size_t j = s.with_photons(s.with_qubit(i, qubit, QubitLevel::e), n - 1);
        const double theta = std::sqrt(static_cast<double>(n)) * lambda * t;
        const Complex phase = std::polar(1.0, -static_cast<double>(n) * omega * t);
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        amp(out, i) = phase * (c * amp(in, i) - kI * sn * amp(in, j));
        amp(out, j) = phase * (c * amp(in, j) - kI * sn * amp(in, i));
    }
    return StateVector(s, std::move(out));
}

StateVector idle_phase(const StateVector& psi, std::size_t qubit, double Omega, double t) {
    const HilbertSpace& s = psi.space();
    require_qubit(s, qubit, "idle_phase");
    const Complex g_phase = std::polar(1.0, 0.5 * Omega * t);
    const Complex e_phase = std::conj(g_phase);
    CVector out = psi.amplitudes();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        amp(out, i) *= s.qubit_level(i, qubit) == QubitLevel::g ? g_phase : e_phase;
    }
    return StateVector(s, std::move(out));
}

StateVector free_resonator(const StateVector& psi, double omega, double t) {
    const HilbertSpace& s = psi.space();
    CVector out = psi.amplitudes();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        amp(out, i) *= std::polar(1.0, -omega * (static_cast<double>(s.photons(i)) + 0.5) * t);
    }
    return StateVector(s, std::move(out));
}

StateVector joint_resonant_step(const StateVector& psi, std::size_t first, std::size_t second,
                                double lambda, double omega, double t) {
    const HilbertSpace& s = psi.space();
    require_qubit(s, first, "joint_resonant_step");
    require_qubit(s, second, "joint_resonant_step");
    if (first == second) throw ContractViolation("joint_resonant_step: qubits must differ");

    const CVector& in = psi.amplitudes();
    CVector out = in;
    const std::size_t top = s.fock_cutoff();

    // Enumerate "anchor" indices: both addressed qubits in g, zero photons.
    // Every other qubit configuration appears exactly once among anchors.
    for (std::size_t anchor = 0; anchor < s.dimension(); ++anchor) {
        if (s.photons(anchor) != 0 || s.qubit_level(anchor, first) != QubitLevel::g ||
            s.qubit_level(anchor, second) != QubitLevel::g) {
            continue;
        }
        for (std::size_t n = 0; n <= top + 2; ++n) {
            const PairManifold m = two_qubit_resonant_eigensystem(static_cast<int>(n), omega, lambda);
            std::vector<std::size_t> idx;
            bool complete = true;
            for (const PairKet& k : m.basis) {
                if (k.photons > top) {
                    complete = false;
                    continue;
                }
                std::size_t i = s.with_qubit(anchor, first, k.first);
                i = s.with_qubit(i, second, k.second);
                idx.push_back(s.with_photons(i, k.photons));
            }
            if (!complete) {
                // Every bare ket of manifold n has resonant energy w(n - 1/2).
                double weight = 0.0;
                for (std::size_t i : idx) weight += std::norm(amp(in, i));
                if (std::sqrt(weight) > kTruncationTolerance) {
                    throw TruncationError("joint_resonant_step: populated manifold with " + std::to_string(n) +
                                          " excitations is cut by the Fock cutoff");
                }
                const Complex phase = std::polar(1.0, -omega * (static_cast<double>(n) - 0.5) * t);
                for (std::size_t i : idx) amp(out, i) = phase * amp(in, i);
                continue;
            }
            CVector local(static_cast<Eigen::Index>(idx.size()));
            for (std::size_t k = 0; k < idx.size(); ++k) local(static_cast<Eigen::Index>(k)) = amp(in, idx[k]);
            CVector coeffs = m.vectors.adjoint() * local;
            for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, -m.energies(k) * t);
            local = m.vectors * coeffs;
            for (std::size_t k = 0; k < idx.size(); ++k) amp(out, idx[k]) = local(static_cast<Eigen::Index>(k));
        }
    }
    return StateVector(s, std::move(out));
}

} // namespace cqbus::analytic
