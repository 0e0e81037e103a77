#pragma once

// Output documents: {"meta": ..., "inputs": ..., "results": ...}.
// Doubles are written with 17 significant digits; non-finite values as null.

#include <string>

#include "json.hpp"

#include "cqbus/protocols.hpp"

namespace cqbus::io {

/// Deterministic pretty printer: two-space indent, keys sorted, trailing newline.
std::string dump(const nlohmann::json& doc);

std::string format_double(double value);

nlohmann::json to_json(const StateVector& psi);
nlohmann::json to_json(const CMatrix& m);
nlohmann::json to_json(const schedule::PulseSchedule& s);
nlohmann::json to_json(const protocols::ProtocolReport& report);

nlohmann::json make_document(const std::string& command, nlohmann::json inputs, nlohmann::json results,
                             bool stamp);

/// Rows of equal-length arrays of scalars -> CSV with a header line.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<nlohmann::json>>& rows);

} // namespace cqbus::io
