#pragma once

// Helpers shared by the unit tests.

#include <cmath>
#include <random>

#include "cqbus/bus_hamiltonian.hpp"
#include "cqbus/quantum_core.hpp"

namespace testing {

/// Random normalized state whose photon number stays at most max_photons.
inline cqbus::StateVector random_state(const cqbus::HilbertSpace& s, std::mt19937_64& rng,
                                       std::size_t max_photons) {
    std::normal_distribution<double> n(0.0, 1.0);
    cqbus::CVector v = cqbus::CVector::Zero(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (s.photons(i) <= max_photons) v(static_cast<Eigen::Index>(i)) = {n(rng), n(rng)};
    return cqbus::StateVector(s, v).normalized();
}

inline cqbus::StateVector ket(const cqbus::HilbertSpace& s, const char* label) {
    return cqbus::StateVector::from_label(s, label);
}

/// Default effective configuration (omega = 1, lambda = 0.05, Omega = 1.3, 1.6, 1.9).
inline cqbus::BusConfig default_bus(std::size_t cutoff = 4) {
    return {1.0, {{1.3, 0.05}, {1.6, 0.05}, {1.9, 0.05}}, cutoff};
}

} // namespace testing
