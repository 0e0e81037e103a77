#pragma once

// Charge qubit (Cooper-pair box with a dc-SQUID junction) reduced to two
// levels, and its flux coupling to a transmission-line resonator mode.
//
// SI values are converted to angular-frequency units (energy / hbar) exactly
// once, when a DeviceParams is built from SI input. Everything downstream uses
// hbar = 1.

#include <optional>

#include <Eigen/Dense>

namespace cqbus::device {

namespace constants {
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846; // H/m
/// Superconducting flux quantum h / 2e.
inline constexpr double flux_quantum = 2.0 * 3.14159265358979323846 * hbar / (2.0 * elementary_charge);
} // namespace constants

struct GeometryParams {
    double loop_area;          ///< S, m^2
    double distance;           ///< d, qubit to line, m
    double length;             ///< l, resonator length, m
    double inductance;         ///< L per unit length, H/m
    double capacitance;        ///< C per unit length, F/m
    int mode_index = 1;        ///< k >= 1

    void validate() const;
};

/// Energies here are in angular-frequency units (rad/s for SI input, or any
/// consistent dimensionless unit).
struct DeviceParams {
    double charging_energy;    ///< E_c > 0
    double josephson_energy;   ///< E_J >= 0
    double gate_charge;        ///< n_g
    double flux_ratio;         ///< f = Phi_e / Phi_0
    std::optional<GeometryParams> geometry;

    /// Throws ContractViolation on E_c <= 0 or E_J < 0.
    void validate() const;
    /// True when E_c <= 10 E_J, i.e. outside the charge regime E_c >> E_J.
    bool charge_regime_warning() const { return charging_energy <= 10.0 * josephson_energy; }
};

struct EffectiveQubit {
    double omega;       ///< Omega = 2E, >= 0
    double eta;         ///< mixing angle in [0, pi]
    double lambda_max;  ///< coupling at the operating point
};

/// (2e)^2 / (2 (2 C_J + C_g)) in joules.
double charging_energy_joules(double junction_capacitance, double gate_capacitance);
/// Same, divided by hbar (rad/s).
double charging_energy(double junction_capacitance, double gate_capacitance);

/// Half-splitting E = sqrt(E_c^2 (1 - 2 n_g)^2 / 4 + E_J^2 cos^2(pi f)).
/// Zero at n_g = 1/2, f = 1/2 (degenerate qubit, not an error).
double splitting(const DeviceParams& p);
inline double qubit_frequency(const DeviceParams& p) { return 2.0 * splitting(p); }
inline bool is_degenerate(const DeviceParams& p) { return splitting(p) == 0.0; }

/// eta = atan2(2 E_J cos(pi f), E_c (1 - 2 n_g)).
///
/// The principal flux window cos(pi f) >= 0 (|f| <= 1/2 mod 2) keeps eta in
/// [0, pi]; flux outside it throws ContractViolation. The degenerate point,
/// where both arguments vanish, throws ContractViolation as well.
double mixing_angle(const DeviceParams& p);

/// Columns are |g>, |e> in the charge basis (|0>, |1>):
///   |g> = cos(eta/2)|0> + sin(eta/2)|1>,  |e> = -sin(eta/2)|0> + cos(eta/2)|1>.
Eigen::Matrix2d eigenbasis_transform(double eta);

/// Reduced two-level Hamiltonian -E_c(1 - 2n_g)/2 sigma_z - E_J cos(pi f) sigma_x
/// in the charge basis.
Eigen::Matrix2d charge_hamiltonian(const DeviceParams& p);

/// k pi / (l sqrt(L C)) in rad/s.
double mode_frequency(const GeometryParams& g);

/// lambda = mu0 E_J S / (2 Phi0 d) sqrt(hbar omega / (l L)) sin(pi f) cos(eta), in rad/s.
/// `josephson_energy` is in rad/s, as stored in DeviceParams.
double coupling_lambda(double josephson_energy, double flux_ratio, double eta,
                       const GeometryParams& g, double omega);
/// Uses the DeviceParams' geometry and its own mixing angle; throws
/// ContractViolation if geometry is missing.
double coupling_lambda(const DeviceParams& p, double omega);

/// Omega, eta and (if geometry is present) lambda at resonator frequency omega.
EffectiveQubit effective_qubit(const DeviceParams& p, std::optional<double> omega = std::nullopt);

} // namespace cqbus::device
