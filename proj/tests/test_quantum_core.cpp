#include <catch_amalgamated.hpp>

#include <numbers>

#include "cqbus/bus_hamiltonian.hpp"
#include "cqbus/quantum_core.hpp"
#include "support.hpp"

using namespace cqbus;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("basis ordering puts qubit 0 first and the resonator last", "[core]") {
    const HilbertSpace s(2, 3);
    REQUIRE(s.dimension() == 16);
    REQUIRE(s.index(std::vector{QubitLevel::g, QubitLevel::g}, 0) == 0);
    REQUIRE(s.index(std::vector{QubitLevel::g, QubitLevel::g}, 2) == 2);
    REQUIRE(s.index(std::vector{QubitLevel::g, QubitLevel::e}, 0) == 4);
    REQUIRE(s.index(std::vector{QubitLevel::e, QubitLevel::g}, 1) == 9);
    REQUIRE(s.qubit_level(9, 0) == QubitLevel::e);
    REQUIRE(s.qubit_level(9, 1) == QubitLevel::g);
    REQUIRE(s.photons(9) == 1);
    REQUIRE(s.label(9) == "e,g,1");
    REQUIRE(s.excitations(s.index(std::vector{QubitLevel::e, QubitLevel::e}, 3)) == 5);
}

TEST_CASE("ket labels parse and reject malformed input", "[core]") {
    const HilbertSpace s(2, 2);
    const StateVector k = StateVector::from_label(s, "e,g,1");
    REQUIRE(std::abs(k[s.index(std::vector{QubitLevel::e, QubitLevel::g}, 1)] - 1.0) < 1e-15);
    REQUIRE_THROWS_AS(StateVector::from_label(s, "e,g"), ContractViolation);
    REQUIRE_THROWS_AS(StateVector::from_label(s, "e,x,0"), ContractViolation);
    REQUIRE_THROWS_AS(StateVector::from_label(s, "e,g,3"), ContractViolation);
    REQUIRE_THROWS_AS(StateVector::from_label(s, "e,g,-1"), ContractViolation);
}

TEST_CASE("operators reject mismatched spaces and non-hermitian input", "[core]") {
    const HilbertSpace a(1, 1), b(1, 2);
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 1) = 1.0;
    REQUIRE_THROWS_AS(HermitianOperator(a, m), ContractViolation);
    REQUIRE_THROWS_AS(HermitianOperator(b, CMatrix::Zero(4, 4)), SpaceMismatch);
    const StateVector psi = StateVector::basis(b, 0);
    const HermitianOperator h(a, CMatrix::Identity(4, 4));
    REQUIRE_THROWS_AS(propagate(h, psi, 1.0), SpaceMismatch);
    REQUIRE_THROWS_AS(UnitaryOperator(a, 2.0 * CMatrix::Identity(4, 4)), ContractViolation);
}

TEST_CASE("propagation is unitary and matches the spectral exponential", "[core]") {
    std::mt19937_64 rng(11);
    const BusConfig cfg{1.0, {{1.1, 0.07}, {0.95, 0.04}}, 4};
    const HermitianOperator h = build_multi(cfg);
    const Propagator prop(h);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = testing::random_state(h.space(), rng, 4);
        const double t = std::uniform_real_distribution<double>(0.0, 300.0)(rng);
        const StateVector out = prop.apply(psi, t);
        REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
        // Forward then backward returns to the start.
        REQUIRE(max_abs_diff(prop.apply(out, -t), psi) < 1e-10);
    }
    // t = 0 is the identity.
    REQUIRE(max_abs_diff(prop.unitary(0.0).matrix(), CMatrix::Identity(h.matrix().rows(), h.matrix().cols())) <
            1e-14);
}

TEST_CASE("eigensystem of a known 2x2 block", "[core]") {
    const HilbertSpace s(1, 0);
    CMatrix m(2, 2);
    m << 1.0, Complex(0.0, 2.0), Complex(0.0, -2.0), 1.0;
    const Eigensystem es = eig_hermitian(HermitianOperator(s, m));
    REQUIRE(es.values(0) == Approx(-1.0));
    REQUIRE(es.values(1) == Approx(3.0));
    const CMatrix recon = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    REQUIRE(max_abs_diff(recon, m) < 1e-14);
}

TEST_CASE("fidelity ignores global phase", "[core]") {
    std::mt19937_64 rng(3);
    const HilbertSpace s(2, 2);
    const StateVector psi = testing::random_state(s, rng, 2);
    const StateVector phased(s, psi.amplitudes() * std::polar(1.0, 0.7));
    REQUIRE(fidelity(psi, phased) == Approx(1.0).margin(1e-14));
    REQUIRE(fidelity(psi, testing::ket(s, "g,g,0")) <= 1.0);
}

TEST_CASE("unitary phases of a diagonal gate and the diagonality guard", "[core]") {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = std::polar(1.0, 0.25);
    d(1, 1) = std::polar(1.0, -0.5);
    d(2, 2) = std::polar(1.0, 7.0);
    const auto ph = unitary_phases_mod_2pi(d);
    REQUIRE(ph[0] == Approx(0.25));
    REQUIRE(ph[1] == Approx(2.0 * pi - 0.5));
    REQUIRE(ph[2] == Approx(7.0 - 2.0 * pi));
    d(0, 1) = 1e-6;
    REQUIRE_THROWS_AS(unitary_phases_mod_2pi(d), ContractViolation);
    REQUIRE(off_diagonal_residual(d) == Approx(1e-6));
}

TEST_CASE("reduced fidelity traces out the other qubits and the resonator", "[core]") {
    const HilbertSpace s(3, 2);
    const HilbertSpace pair(2, 0);
    // (|g,e> + |e,g>)/sqrt2 on qubits 0, 2 with qubit 1 excited and one photon.
    CVector v = CVector::Zero(static_cast<Eigen::Index>(s.dimension()));
    v(static_cast<Eigen::Index>(s.index(std::vector{QubitLevel::g, QubitLevel::e, QubitLevel::e}, 1))) = 1.0 / std::sqrt(2.0);
    v(static_cast<Eigen::Index>(s.index(std::vector{QubitLevel::e, QubitLevel::e, QubitLevel::g}, 1))) = 1.0 / std::sqrt(2.0);
    const StateVector psi(s, v);
    CVector t = CVector::Zero(4);
    t(1) = t(2) = 1.0 / std::sqrt(2.0);
    const std::array<std::size_t, 2> q{0, 2};
    REQUIRE(reduced_fidelity(psi, q, StateVector(pair, t)) == Approx(1.0));
    // Order of the target qubits matters for asymmetric targets.
    CVector u = CVector::Zero(4);
    u(1) = 1.0;
    REQUIRE(reduced_fidelity(psi, q, StateVector(pair, u)) == Approx(0.5));
    // The photon makes the vacuum-only version refuse.
    REQUIRE_THROWS_AS(partial_trace_fidelity(psi, q, StateVector(pair, t)), PhysicsError);
    REQUIRE(resonator_leakage(psi) == Approx(1.0));
}

TEST_CASE("restriction to a basis builds the effective matrix", "[core]") {
    const HilbertSpace s(1, 1);
    CMatrix u = CMatrix::Identity(4, 4);
    u(0, 0) = Complex(0.0, 1.0);
    const std::vector<StateVector> basis{testing::ket(s, "g,0"), testing::ket(s, "e,0")};
    const CMatrix r = restrict_to_basis(u, basis);
    REQUIRE(r.rows() == 2);
    REQUIRE(std::abs(r(0, 0) - Complex(0.0, 1.0)) < 1e-15);
    REQUIRE(std::abs(r(1, 1) - 1.0) < 1e-15);
}
