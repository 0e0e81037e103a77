#pragma once

// Parameter files (JSON). Two forms are accepted:
//
// Effective (dimensionless or any consistent angular-frequency unit):
//   {"effective": {"omega": 1.0, "fock_cutoff": 4, "lambda": 0.05,
//                  "qubits": [{"Omega": 1.3, "lambda": 0.05, "eta": 0.0}, ...]}}
//   "lambda" (optional) is the value bound to `lambda` in schedule scripts;
//   it defaults to the first qubit's coupling. "eta" defaults to 0.
//
// SI (converted once to rad/s and seconds):
//   {"si": {"C_J": 3e-16, "C_g": 1e-16,          # or "E_c_hz": E_c/h in Hz
//           "E_J_hz": 5e9,                        # E_J/h in Hz
//           "geometry": {"S": 1e-12, "d": 1e-6, "l": 0.01, "L": 1e-6, "C_line": 1e-10, "k": 1},
//           "fock_cutoff": 4,
//           "qubits": [{"n_g": 0.3, "flux_ratio": 0.25}, ...]}}
//   Each qubit's Omega, eta and lambda follow from the device model, and
//   omega is the k-th mode of the line.

#include <string>
#include <vector>

#include "json.hpp"

#include "cqbus/bus_hamiltonian.hpp"
#include "cqbus/device_model.hpp"

namespace cqbus::io {

struct Parameters {
    std::string mode;                         ///< "effective" or "si"
    BusConfig bus;
    double lambda_binding = 0.0;              ///< bound to `lambda` in schedules
    std::vector<device::DeviceParams> devices;  ///< SI mode only, one per qubit
};

/// Throws ContractViolation on a malformed document.
Parameters parse_parameters(const nlohmann::json& doc);
Parameters load_parameters(const std::string& path);
/// omega = 1, lambda = 0.05, Omega_k = 1 + 0.3 (k + 1) for qubits k = 0, 1, 2, cutoff 4.
Parameters default_parameters();

nlohmann::json to_json(const Parameters& p);

} // namespace cqbus::io
