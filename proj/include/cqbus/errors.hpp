#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqbus {

/// Precondition or invariant of an operation was violated by the caller.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two objects that must live on the same Hilbert space do not.
class SpaceMismatch : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

/// Physical model broke down: population reached the Fock cutoff, the
/// resonator stayed entangled, a dispersive condition failed, ...
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TruncationError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// Error in a schedule script, positioned at a 1-based line/column.
class ScheduleError : public std::runtime_error {
public:
    ScheduleError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

} // namespace cqbus
