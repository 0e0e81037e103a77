#include "cqbus/quantum_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cqbus {

namespace {

constexpr std::size_t kMaxQubits = 16;

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
    if (!(a == b)) {
        throw SpaceMismatch(std::string(what) + ": operands live on different Hilbert spaces");
    }
}

double wrap_2pi(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace::HilbertSpace(std::size_t n_qubits, std::size_t fock_cutoff)
    : n_qubits_(n_qubits), fock_cutoff_(fock_cutoff) {
    if (n_qubits > kMaxQubits) {
        throw ContractViolation("HilbertSpace: at most 16 qubits are supported");
    }
    dimension_ = (std::size_t{1} << n_qubits) * (fock_cutoff + 1);
}

std::size_t HilbertSpace::index(std::span<const QubitLevel> qubits, std::size_t photons) const {
    if (qubits.size() != n_qubits_) {
        throw ContractViolation("HilbertSpace::index: expected one level per qubit");
    }
    if (photons > fock_cutoff_) {
        throw ContractViolation("HilbertSpace::index: photon number exceeds the Fock cutoff");
    }
    std::size_t bits = 0;
    for (QubitLevel q : qubits) bits = (bits << 1) | static_cast<std::size_t>(q);
    return bits * fock_levels() + photons;
}

QubitLevel HilbertSpace::qubit_level(std::size_t index, std::size_t qubit) const {
    const std::size_t bits = qubit_bits(index);
    return static_cast<QubitLevel>((bits >> (n_qubits_ - 1 - qubit)) & 1u);
}

std::size_t HilbertSpace::with_qubit(std::size_t index, std::size_t qubit, QubitLevel level) const {
    const std::size_t mask = std::size_t{1} << (n_qubits_ - 1 - qubit);
    std::size_t bits = qubit_bits(index);
    bits = level == QubitLevel::e ? (bits | mask) : (bits & ~mask);
    return bits * fock_levels() + photons(index);
}

std::size_t HilbertSpace::with_photons(std::size_t index, std::size_t n) const {
    return qubit_bits(index) * fock_levels() + n;
}

std::size_t HilbertSpace::excitations(std::size_t index) const {
    return static_cast<std::size_t>(std::popcount(qubit_bits(index))) + photons(index);
}

std::string HilbertSpace::label(std::size_t index) const {
    std::string out;
    for (std::size_t q = 0; q < n_qubits_; ++q) {
        out += qubit_level(index, q) == QubitLevel::e ? 'e' : 'g';
        out += ',';
    }
    out += std::to_string(photons(index));
    return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(HilbertSpace space, CVector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != space_.dimension()) {
        throw SpaceMismatch("StateVector: amplitude count does not match the space dimension");
    }
}

StateVector StateVector::basis(const HilbertSpace& space, std::span<const QubitLevel> qubits,
                               std::size_t photons) {
    return basis(space, space.index(qubits, photons));
}

StateVector StateVector::basis(const HilbertSpace& space, std::size_t index) {
    if (index >= space.dimension()) throw ContractViolation("StateVector::basis: index out of range");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dimension()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(space, std::move(v));
}

StateVector StateVector::from_label(const HilbertSpace& space, const std::string& label) {
    std::vector<std::string> parts;
    std::stringstream ss(label);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
    }
    if (parts.size() != space.n_qubits() + 1) {
        throw ContractViolation("ket label '" + label + "' must list " +
                                std::to_string(space.n_qubits()) + " qubit levels and a photon number");
    }
    std::vector<QubitLevel> levels;
    for (std::size_t q = 0; q < space.n_qubits(); ++q) {
        if (parts[q] == "g") levels.push_back(QubitLevel::g);
        else if (parts[q] == "e") levels.push_back(QubitLevel::e);
        else throw ContractViolation("ket label '" + label + "': qubit level must be 'g' or 'e'");
    }
    const std::string& n = parts.back();
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ContractViolation("ket label '" + label + "': photon number must be a non-negative integer");
    }
    return basis(space, levels, std::stoul(n));
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw ContractViolation("StateVector::normalized: zero vector");
    return StateVector(space_, amplitudes_ / n);
}

Complex StateVector::inner(const StateVector& other) const {
    require_same_space(space_, other.space_, "inner product");
    return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// Operators

HermitianOperator::HermitianOperator(HilbertSpace space, CMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(space_.dimension());
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw SpaceMismatch("HermitianOperator: matrix shape does not match the space dimension");
    }
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance * scale) {
        throw ContractViolation("HermitianOperator: matrix is not Hermitian (max |H - H^dagger| = " +
                                std::to_string(asym) + ")");
    }
}

UnitaryOperator::UnitaryOperator(HilbertSpace space, CMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(space_.dimension());
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw SpaceMismatch("UnitaryOperator: matrix shape does not match the space dimension");
    }
    const double err = max_abs_diff(matrix_.adjoint() * matrix_, CMatrix::Identity(dim, dim));
    if (err > kUnitaryTolerance) {
        throw ContractViolation("UnitaryOperator: U^dagger U deviates from identity by " +
                                std::to_string(err));
    }
}

StateVector UnitaryOperator::apply(const StateVector& psi) const {
    require_same_space(space_, psi.space(), "UnitaryOperator::apply");
    return StateVector(space_, matrix_ * psi.amplitudes());
}

Eigensystem eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw PhysicsError("eig_hermitian: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Propagator::Propagator(const HermitianOperator& h) : space_(h.space()), eig_(eig_hermitian(h)) {}

StateVector Propagator::apply(const StateVector& psi, double t) const {
    require_same_space(space_, psi.space(), "propagate");
    CVector coeffs = eig_.vectors.adjoint() * psi.amplitudes();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -eig_.values(k) * t);
    }
    return StateVector(space_, eig_.vectors * coeffs);
}

UnitaryOperator Propagator::unitary(double t) const {
    CVector phases(eig_.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -eig_.values(k) * t);
    CMatrix u = eig_.vectors * phases.asDiagonal() * eig_.vectors.adjoint();
    return UnitaryOperator(space_, std::move(u));
}

StateVector propagate(const HermitianOperator& h, const StateVector& psi, double t) {
    require_same_space(h.space(), psi.space(), "propagate");
    return Propagator(h).apply(psi, t);
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::min(1.0, std::norm(a.inner(b)));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    require_same_space(a.space(), b.space(), "max_abs_diff");
    return max_abs_diff(CMatrix(a.amplitudes()), CMatrix(b.amplitudes()));
}

CMatrix restrict_to_basis(const CMatrix& u, std::span<const StateVector> basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    CMatrix out(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const CVector col = u * basis[static_cast<std::size_t>(c)].amplitudes();
        for (Eigen::Index r = 0; r < n; ++r) {
            out(r, c) = basis[static_cast<std::size_t>(r)].amplitudes().dot(col);
        }
    }
    return out;
}

double off_diagonal_residual(const CMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (r != c) worst = std::max(worst, std::abs(m(r, c)));
    return worst;
}

std::vector<double> diagonal_phases(const CMatrix& m) {
    std::vector<double> out;
    for (Eigen::Index k = 0; k < std::min(m.rows(), m.cols()); ++k) out.push_back(wrap_2pi(std::arg(m(k, k))));
    return out;
}

std::vector<double> unitary_phases_mod_2pi(const CMatrix& restricted) {
    const double off = off_diagonal_residual(restricted);
    if (off > kDiagonalTolerance) {
        throw ContractViolation("unitary_phases_mod_2pi: operator is not diagonal on the basis "
                                "(largest off-diagonal magnitude " + std::to_string(off) + ")");
    }
    return diagonal_phases(restricted);
}

std::vector<double> unitary_phases_mod_2pi(const UnitaryOperator& u, std::span<const StateVector> basis) {
    for (const auto& b : basis) require_same_space(u.space(), b.space(), "unitary_phases_mod_2pi");
    return unitary_phases_mod_2pi(restrict_to_basis(u.matrix(), basis));
}

double resonator_leakage(const StateVector& psi) {
    const HilbertSpace& s = psi.space();
    double pop = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (s.photons(i) != 0) pop += std::norm(psi[i]);
    return pop;
}

double reduced_fidelity(const StateVector& full, std::span<const std::size_t> target_qubits,
                        const StateVector& target) {
    const HilbertSpace& s = full.space();
    const std::size_t k = target_qubits.size();
    if (target.space() != HilbertSpace(k, 0)) {
        throw SpaceMismatch("reduced_fidelity: target must be a pure state of the selected qubits");
    }
    for (std::size_t a = 0; a < k; ++a) {
        if (target_qubits[a] >= s.n_qubits()) throw ContractViolation("reduced_fidelity: qubit index out of range");
        for (std::size_t b = a + 1; b < k; ++b)
            if (target_qubits[a] == target_qubits[b]) throw ContractViolation("reduced_fidelity: repeated qubit index");
    }
    // <t|rho|t> = sum over environment configurations e of |sum_q t_q^* psi(q, e)|^2.
    // Group amplitudes by environment (other qubits + photons).
    const std::size_t env_count = s.dimension() >> k;
    std::vector<Complex> overlap(env_count, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        std::size_t sub = 0;
        for (std::size_t q : target_qubits) sub = (sub << 1) | static_cast<std::size_t>(s.qubit_level(i, q));
        std::size_t env = 0;
        for (std::size_t q = 0; q < s.n_qubits(); ++q) {
            if (std::find(target_qubits.begin(), target_qubits.end(), q) != target_qubits.end()) continue;
            env = (env << 1) | static_cast<std::size_t>(s.qubit_level(i, q));
        }
        env = env * s.fock_levels() + s.photons(i);
        overlap[env] += std::conj(target[sub]) * full[i];
    }
    double f = 0.0;
    for (const Complex& c : overlap) f += std::norm(c);
    return std::min(1.0, f);
}

double partial_trace_fidelity(const StateVector& full, std::span<const std::size_t> target_qubits,
                              const StateVector& target) {
    const double leak = std::sqrt(resonator_leakage(full));
    if (leak > kResonatorAmplitudeLeakage) {
        throw PhysicsError("partial_trace_fidelity: resonator is not in vacuum (amplitude outside |0> = " +
                           std::to_string(leak) + ")");
    }
    return reduced_fidelity(full, target_qubits, target);
}

} // namespace cqbus
