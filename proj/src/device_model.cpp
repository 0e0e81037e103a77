#include "cqbus/device_model.hpp"

#include <cmath>
#include <numbers>

#include "cqbus/errors.hpp"

namespace cqbus::device {

namespace {

// cos(pi f) evaluated with exact zeros at half-integer f.
double flux_cos(double f) {
    const double c = std::cos(std::numbers::pi * f);
    return std::abs(c) < 1e-12 ? 0.0 : c;
}

double flux_sin(double f) {
    const double s = std::sin(std::numbers::pi * f);
    return std::abs(s) < 1e-12 ? 0.0 : s;
}

} // namespace

void GeometryParams::validate() const {
    if (!(loop_area > 0 && distance > 0 && length > 0 && inductance > 0 && capacitance > 0)) {
        throw ContractViolation("GeometryParams: S, d, l, L and C must be strictly positive");
    }
    if (mode_index < 1) throw ContractViolation("GeometryParams: mode index must be >= 1");
}

void DeviceParams::validate() const {
    if (!(charging_energy > 0)) throw ContractViolation("DeviceParams: E_c must be positive");
    if (!(josephson_energy >= 0)) throw ContractViolation("DeviceParams: E_J must be non-negative");
    if (!std::isfinite(gate_charge) || !std::isfinite(flux_ratio)) {
        throw ContractViolation("DeviceParams: n_g and flux ratio must be finite");
    }
    if (geometry) geometry->validate();
}

double charging_energy_joules(double junction_capacitance, double gate_capacitance) {
    if (!(junction_capacitance > 0) || !(gate_capacitance > 0)) {
        throw ContractViolation("charging_energy: capacitances must be positive");
    }
    const double two_e = 2.0 * constants::elementary_charge;
    return two_e * two_e / (2.0 * (2.0 * junction_capacitance + gate_capacitance));
}

double charging_energy(double junction_capacitance, double gate_capacitance) {
    return charging_energy_joules(junction_capacitance, gate_capacitance) / constants::hbar;
}

double splitting(const DeviceParams& p) {
    p.validate();
    const double bias = 0.5 * p.charging_energy * (1.0 - 2.0 * p.gate_charge);
    const double tunnel = p.josephson_energy * flux_cos(p.flux_ratio);
    return std::hypot(bias, tunnel);
}

double mixing_angle(const DeviceParams& p) {
    p.validate();
    const double numerator = 2.0 * p.josephson_energy * flux_cos(p.flux_ratio);
    const double denominator = p.charging_energy * (1.0 - 2.0 * p.gate_charge);
    if (numerator == 0.0 && denominator == 0.0) {
        throw ContractViolation("mixing_angle: degenerate point, both 2E_J cos(pi f) and E_c(1 - 2n_g) vanish");
    }
    if (numerator < 0.0) {
        throw ContractViolation("mixing_angle: flux ratio outside the window cos(pi f) >= 0");
    }
    return std::atan2(numerator, denominator);
}

Eigen::Matrix2d eigenbasis_transform(double eta) {
    const double c = std::cos(0.5 * eta);
    const double s = std::sin(0.5 * eta);
    Eigen::Matrix2d t;
    t << c, -s,
         s,  c;
    return t;
}

Eigen::Matrix2d charge_hamiltonian(const DeviceParams& p) {
    const double bias = 0.5 * p.charging_energy * (1.0 - 2.0 * p.gate_charge);
    const double tunnel = p.josephson_energy * flux_cos(p.flux_ratio);
    Eigen::Matrix2d h;
    h << -bias, -tunnel,
         -tunnel, bias;
    return h;
}

double mode_frequency(const GeometryParams& g) {
    g.validate();
    return g.mode_index * std::numbers::pi / (g.length * std::sqrt(g.inductance * g.capacitance));
}

double coupling_lambda(double josephson_energy, double flux_ratio, double eta,
                       const GeometryParams& g, double omega) {
    g.validate();
    if (!(omega > 0)) throw ContractViolation("coupling_lambda: mode frequency must be positive");
    using namespace constants;
    const double e_j = josephson_energy * hbar;  // back to joules for the SI prefactor
    const double current = std::sqrt(hbar * omega / (g.length * g.inductance));
    const double energy = mu0 * e_j * g.loop_area / (2.0 * flux_quantum * g.distance) * current;
    double cos_eta = std::cos(eta);
    if (std::abs(cos_eta) < 1e-12) cos_eta = 0.0;
    return energy / hbar * flux_sin(flux_ratio) * cos_eta;
}

double coupling_lambda(const DeviceParams& p, double omega) {
    if (!p.geometry) throw ContractViolation("coupling_lambda: device has no geometry");
    return coupling_lambda(p.josephson_energy, p.flux_ratio, mixing_angle(p), *p.geometry, omega);
}

EffectiveQubit effective_qubit(const DeviceParams& p, std::optional<double> omega) {
    EffectiveQubit q{qubit_frequency(p), mixing_angle(p), 0.0};
    if (p.geometry) {
        const double w = omega.value_or(mode_frequency(*p.geometry));
        q.lambda_max = coupling_lambda(p.josephson_energy, p.flux_ratio, q.eta, *p.geometry, w);
    }
    return q;
}

} // namespace cqbus::device
