#pragma once

// Pulse schedules: piecewise-constant windows in which a set of qubits is
// tuned into resonance with the bus while every other qubit idles at its own
// frequency. Switching between windows is instantaneous.
//
// Text form (".sched"):
//
//   schedule "bell" {
//     # comments run to end of line
//     const t1 = pi/(2*lambda);
//     resonate q0 for t1;
//     resonate q0 q1 for pi/(2*sqrt(2)*lambda);
//     idle for 5;
//   }
//
// Expressions support + - * / unary minus, parentheses, sqrt cos sin acos asin,
// the constants pi and lambda (bound at compile time) and earlier consts.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cqbus::schedule {

struct Segment {
    std::vector<std::size_t> resonant;  ///< empty = global idle
    double duration;
    /// Coupling used by the resonant qubits in this window. When unset each
    /// resonant qubit uses its own configured coupling.
    std::optional<double> coupling;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct PulseSchedule {
    std::string name;
    double lambda = 0.0;  ///< value bound to `lambda` when compiled
    std::vector<Segment> segments;

    friend bool operator==(const PulseSchedule&, const PulseSchedule&) = default;
};

// ---------------------------------------------------------------------------
// AST

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct NumberExpr { double value; };
struct IdentExpr { std::string name; };
struct UnaryExpr { ExprPtr operand; };  // negation
struct BinaryExpr { char op; ExprPtr lhs; ExprPtr rhs; };
struct CallExpr { std::string function; ExprPtr argument; };

struct ExprNode {
    std::variant<NumberExpr, IdentExpr, UnaryExpr, BinaryExpr, CallExpr> node;
    SourcePos pos;  ///< first character of the node; the operator for BinaryExpr
};

struct ConstDecl {
    std::string name;
    ExprPtr value;
    SourcePos pos;
};

struct QubitRef {
    std::size_t index;
    SourcePos pos;
};

struct ResonateStmt {
    std::vector<QubitRef> qubits;
    ExprPtr duration;
    SourcePos pos;
};

struct IdleStmt {
    ExprPtr duration;
    SourcePos pos;
};

using Statement = std::variant<ConstDecl, ResonateStmt, IdleStmt>;

struct ScheduleAst {
    std::string name;
    SourcePos pos;
    SourcePos close_pos;  ///< the closing brace
    std::vector<Statement> statements;
};

/// Parses schedule text. Throws ScheduleError with the position of the first
/// offending token (lexical error, syntax error, duplicate const, unknown
/// identifier).
ScheduleAst parse(const std::string& source);

/// Evaluates durations and checks indices. Throws ScheduleError on a qubit
/// index >= n_qubits, a repeated qubit, a non-positive duration, division by
/// zero, a math domain error or an empty body.
PulseSchedule compile(const ScheduleAst& ast, double lambda, std::size_t n_qubits);

/// Evaluates one expression with `lambda` bound and no user consts.
double evaluate(const ExprPtr& expr, double lambda);

/// Canonical text: LF newlines, two-space indent, durations with 17
/// significant digits, so that compile(parse(emit(s)), s.lambda, n) == s.
/// Throws ContractViolation for schedules that have no text form (empty,
/// non-positive durations, per-segment coupling overrides).
std::string emit(const PulseSchedule& schedule);

/// %.17g
std::string format_number(double value);

} // namespace cqbus::schedule
