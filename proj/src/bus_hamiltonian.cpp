#include "cqbus/bus_hamiltonian.hpp"

#include <cmath>

namespace cqbus {

namespace {

// Adds the terms shared by the RWA and lab-frame builders: mode energy and
// qubit energies.
CMatrix bare_energies(const BusConfig& cfg, const HilbertSpace& s) {
    const auto dim = static_cast<Eigen::Index>(s.dimension());
    CMatrix h = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        double e = cfg.omega * (static_cast<double>(s.photons(i)) + 0.5);
        for (std::size_t q = 0; q < s.n_qubits(); ++q) {
            const double rho_z = s.qubit_level(i, q) == QubitLevel::g ? 1.0 : -1.0;
            e -= 0.5 * cfg.qubits[q].Omega * rho_z;
        }
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e;
    }
    return h;
}

void add_hermitian(CMatrix& h, std::size_t row, std::size_t col, double value) {
    const auto r = static_cast<Eigen::Index>(row);
    const auto c = static_cast<Eigen::Index>(col);
    h(r, c) += value;
    if (r != c) h(c, r) += value;
}

void require_qubits(const BusConfig& cfg) {
    if (cfg.qubits.empty()) throw ContractViolation("bus Hamiltonian needs at least one qubit");
    if (cfg.fock_cutoff < 1) throw ContractViolation("bus Hamiltonian needs fock_cutoff >= 1");
}

} // namespace

HermitianOperator build_jc(double omega, double Omega, double lambda, std::size_t fock_cutoff) {
    return build_multi(BusConfig{omega, {QubitDrive{Omega, lambda}}, fock_cutoff});
}

HermitianOperator build_multi(const BusConfig& cfg) {
    require_qubits(cfg);
    const HilbertSpace s = cfg.space();
    CMatrix h = bare_energies(cfg, s);
    // lambda (rho_+ a + h.c.): |g, n+1> -> sqrt(n+1) |e, n>
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const std::size_t n = s.photons(i);
        if (n == 0) continue;
        for (std::size_t q = 0; q < s.n_qubits(); ++q) {
            if (s.qubit_level(i, q) != QubitLevel::g) continue;
            const std::size_t j = s.with_photons(s.with_qubit(i, q, QubitLevel::e), n - 1);
            add_hermitian(h, j, i, cfg.qubits[q].lambda * std::sqrt(static_cast<double>(n)));
        }
    }
    return HermitianOperator(s, std::move(h));
}

HermitianOperator build_lab_frame(const BusConfig& cfg) {
    require_qubits(cfg);
    const HilbertSpace s = cfg.space();
    CMatrix h = bare_energies(cfg, s);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const std::size_t n = s.photons(i);
        if (n == s.fock_cutoff()) continue;
        const double amp = std::sqrt(static_cast<double>(n + 1));  // a^dag |n> = sqrt(n+1) |n+1>
        for (std::size_t q = 0; q < s.n_qubits(); ++q) {
            const QubitDrive& d = cfg.qubits[q];
            // transverse: (a + a^dag)(rho_+ + rho_-), pairs |x, n> <-> |flip x, n+1>
            const QubitLevel flipped = s.qubit_level(i, q) == QubitLevel::g ? QubitLevel::e : QubitLevel::g;
            const std::size_t j = s.with_photons(s.with_qubit(i, q, flipped), n + 1);
            add_hermitian(h, j, i, d.lambda * amp);
            // longitudinal: (a + a^dag) rho_z, pairs |x, n> <-> |x, n+1>
            const double cos_eta = std::cos(d.eta);
            if (std::abs(cos_eta) > 1e-12 && d.lambda != 0.0) {
                const double rho_z = s.qubit_level(i, q) == QubitLevel::g ? 1.0 : -1.0;
                const double longitudinal = d.lambda * std::sin(d.eta) / cos_eta;
                add_hermitian(h, s.with_photons(i, n + 1), i, longitudinal * rho_z * amp);
            }
        }
    }
    return HermitianOperator(s, std::move(h));
}

HermitianOperator excitation_number(const HilbertSpace& space) {
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    CMatrix n = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(space.excitations(i));
    }
    return HermitianOperator(space, std::move(n));
}

std::vector<std::size_t> manifold_indices(const HilbertSpace& space, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space.dimension(); ++i)
        if (space.excitations(i) == n) out.push_back(i);
    return out;
}

CMatrix extract_block(const HermitianOperator& h, std::span<const std::size_t> indices) {
    const auto k = static_cast<Eigen::Index>(indices.size());
    CMatrix block(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c)
            block(r, c) = h.matrix()(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(r)]),
                                     static_cast<Eigen::Index>(indices[static_cast<std::size_t>(c)]));
    return block;
}

PairManifold two_qubit_resonant_eigensystem(int n, double omega, double lambda) {
    using enum QubitLevel;
    if (n < 0) throw ContractViolation("two_qubit_resonant_eigensystem: negative excitation number");
    PairManifold m;
    m.excitations = static_cast<std::size_t>(n);
    if (n == 0) {
        m.basis = {{g, g, 0}};
        m.labels = {0};
        m.energies = Eigen::VectorXd::Constant(1, -0.5 * omega);
        m.vectors = CMatrix::Identity(1, 1);
        return m;
    }

    const double nn = n;
    const double center = omega * (nn - 0.5);
    const double split = lambda * std::sqrt(4.0 * nn - 2.0);
    const double a = std::sqrt(nn / (4.0 * nn - 2.0));
    const double b = std::sqrt((nn - 1.0) / (4.0 * nn - 2.0));
    const double r = 1.0 / std::sqrt(2.0);
    const auto un = static_cast<std::size_t>(n);

    if (n == 1) {
        m.basis = {{g, g, 1}, {g, e, 0}, {e, g, 0}};
        m.labels = {1, 3, 4};
        m.energies.resize(3);
        m.energies << center - split, center, center + split;
        m.vectors.resize(3, 3);
        m.vectors << -a, 0.0, a,
                     0.5, -r, 0.5,
                     0.5, r, 0.5;
        return m;
    }

    m.basis = {{g, g, un}, {g, e, un - 1}, {e, g, un - 1}, {e, e, un - 2}};
    m.labels = {1, 2, 3, 4};
    m.energies.resize(4);
    m.energies << center - split, center, center, center + split;
    const double c2 = std::sqrt((nn - 1.0) / (2.0 * nn - 1.0));
    const double d2 = std::sqrt(nn / (2.0 * nn - 1.0));
    m.vectors.resize(4, 4);
    //           psi1   psi2   psi3   psi4
    m.vectors << -a,    -c2,   0.0,   a,
                 0.5,   0.0,   -r,    0.5,
                 0.5,   0.0,   r,     0.5,
                 -b,    d2,    0.0,   b;
    return m;
}

} // namespace cqbus
