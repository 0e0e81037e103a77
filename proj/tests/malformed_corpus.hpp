#pragma once

// Malformed schedule scripts with the position each error must point at.
// Positions were worked out by hand from the source text (1-based).
// Compiled with lambda = 0.05 and three qubits.

#include <array>
#include <cstddef>

namespace testing {

struct MalformedCase {
    const char* what;
    const char* source;
    std::size_t line;
    std::size_t column;
};

inline constexpr std::array<MalformedCase, 29> kMalformed{{
    {"missing semicolon", "schedule \"a\" {\n  resonate q0 for 1\n}\n", 3, 1},
    {"unquoted name", "schedule a { }", 1, 10},
    {"no qubits", "schedule \"a\" {\n  resonate for 1;\n}", 2, 12},
    {"stray character", "schedule \"a\" {\n  resonate q0 for 2 $ 3;\n}", 2, 21},
    {"duplicate const", "schedule \"a\" {\n  const x = 1;\n  const x = 2;\n  resonate q0 for x;\n}", 3, 9},
    {"unknown identifier", "schedule \"a\" {\n  resonate q0 for tau;\n}", 2, 19},
    {"reserved const name", "schedule \"a\" { const pi = 3; resonate q0 for pi; }", 1, 22},
    {"malformed exponent", "schedule \"a\" { resonate q0 for 1e; }", 1, 32},
    {"unterminated string", "schedule \"abc { }", 1, 10},
    {"negative duration", "schedule \"a\" {\n  resonate q0 for -1;\n}", 2, 19},
    {"division by zero", "schedule \"a\" { resonate q0 for 1/(lambda-lambda); }", 1, 33},
    {"sqrt of negative", "schedule \"a\" { resonate q0 for sqrt(-1); }", 1, 32},
    {"acos domain", "schedule \"a\" { resonate q0 for acos(2)/lambda; }", 1, 32},
    {"qubit out of range", "schedule \"a\" { resonate q7 for 1; }", 1, 25},
    {"repeated qubit", "schedule \"a\" { resonate q1 q1 for 1; }", 1, 28},
    {"no segments", "schedule \"a\" {\n  const x = 1;\n}", 3, 1},
    {"with override", "schedule \"a\" { resonate q0 for 1 with lambda = 2; }", 1, 34},
    {"trailing tokens", "schedule \"a\" { idle for 1; } extra", 1, 30},
    {"unclosed parenthesis", "schedule \"a\" { idle for (1+2; }", 1, 29},
    {"unknown statement", "schedule \"a\" { wait for 1; }", 1, 16},
    {"missing keyword", "\"a\" { idle for 1; }", 1, 1},
    {"unknown function", "schedule \"a\" { idle for tan(1); }", 1, 25},
    {"qubit without index", "schedule \"a\" { resonate qx for 1; }", 1, 25},
    {"empty input", "", 1, 1},
    {"const without equals", "schedule \"a\" { const x 1; }", 1, 24},
    {"dangling operator after comment", "# header\nschedule \"a\" {\n  idle for 1 +;\n}", 3, 15},
    {"bad string escape", "schedule \"a\\q\" { idle for 1; }", 1, 10},
    {"division by zero const", "schedule \"a\" {\n  const z = 0;\n  idle for 1/z;\n}", 3, 13},
    {"use before declaration", "schedule \"a\" { idle for t; const t = 1; }", 1, 25},
}};

} // namespace testing
