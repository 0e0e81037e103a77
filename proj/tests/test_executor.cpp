#include <catch_amalgamated.hpp>

#include <numbers>

#include "cqbus/analytic_evolution.hpp"
#include "cqbus/executor.hpp"
#include "random_schedules.hpp"
#include "support.hpp"

using namespace cqbus;
using Catch::Approx;
using std::numbers::pi;

namespace {

const char* kBell = "schedule \"bell\" { resonate q0 for pi/(2*lambda); resonate q0 q1 for pi/(2*sqrt(2)*lambda); }";

schedule::PulseSchedule bell(double lambda = 0.05) { return schedule::compile(schedule::parse(kBell), lambda, 3); }

double psi_plus_population(const StateVector& psi) {
    const HilbertSpace& s = psi.space();
    const Complex a = psi[s.index(std::vector{QubitLevel::g, QubitLevel::e, QubitLevel::g}, 0)];
    const Complex b = psi[s.index(std::vector{QubitLevel::e, QubitLevel::g, QubitLevel::g}, 0)];
    return std::norm(a + b) / 2.0;
}

} // namespace

TEST_CASE("tier names", "[exec]") {
    REQUIRE(parse_tier("analytic") == Tier::analytic);
    REQUIRE(parse_tier("rwa-numeric") == Tier::rwa);
    REQUIRE(parse_tier("lab") == Tier::lab);
    REQUIRE_THROWS_AS(parse_tier("exact"), ContractViolation);
    REQUIRE(to_string(Tier::rwa) == "rwa");
}

TEST_CASE("Bell script from |e,g,0> at the analytic tier", "[exec]") {
    const BusConfig cfg = testing::default_bus();
    const ExecutionResult r = execute(bell(), cfg, testing::ket(cfg.space(), "e,g,g,0"), Tier::analytic);
    REQUIRE(r.trace.size() == 2);
    REQUIRE(fidelity(r.trace[0], testing::ket(cfg.space(), "g,g,g,1")) == Approx(1.0).margin(1e-12));
    REQUIRE(psi_plus_population(r.final_state) == Approx(1.0).margin(1e-12));
    REQUIRE(resonator_leakage(r.final_state) < 1e-24);
}

TEST_CASE("RWA tier matches the analytic tier when idle qubits are decoupled", "[exec]") {
    const BusConfig cfg = testing::default_bus();
    const StateVector psi0 = testing::ket(cfg.space(), "e,g,g,0");
    ExecuteOptions decoupled;
    decoupled.idle_coupling = false;
    const ExecutionResult a = execute(bell(), cfg, psi0, Tier::analytic);
    const ExecutionResult n = execute(bell(), cfg, psi0, Tier::rwa, decoupled);
    REQUIRE(max_abs_diff(a.final_state, n.final_state) < 1e-9);
    for (std::size_t k = 0; k < a.trace.size(); ++k) REQUIRE(max_abs_diff(a.trace[k], n.trace[k]) < 1e-9);
}

TEST_CASE("norm is conserved over random schedules", "[exec]") {
    std::mt19937_64 rng(8);
    const BusConfig cfg = testing::default_bus(5);
    for (int k = 0; k < 10; ++k) {
        schedule::PulseSchedule s = testing::random_schedule(rng, 3, k);
        for (auto& seg : s.segments) {
            seg.duration = std::fmod(seg.duration, 50.0) + 0.1;
            if (seg.resonant.size() > 2) seg.resonant.resize(2);
        }
        const StateVector psi0 = testing::random_state(cfg.space(), rng, 1);
        for (Tier tier : {Tier::analytic, Tier::rwa}) {
            const StateVector out = execute(s, cfg, psi0, tier).final_state;
            REQUIRE(std::abs(out.norm() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("executor contract violations", "[exec]") {
    const BusConfig cfg = testing::default_bus();
    const StateVector psi0 = testing::ket(cfg.space(), "e,g,g,0");
    const schedule::PulseSchedule three{"x", 0.05, {{{0, 1, 2}, 1.0, std::nullopt}}};
    REQUIRE_THROWS_AS(execute(three, cfg, psi0, Tier::analytic), ContractViolation);
    REQUIRE_NOTHROW(execute(three, cfg, psi0, Tier::rwa));

    BusConfig unequal = cfg;
    unequal.qubits[1].lambda = 0.04;
    const schedule::PulseSchedule pair{"x", 0.05, {{{0, 1}, 1.0, std::nullopt}}};
    REQUIRE_THROWS_AS(execute(pair, unequal, psi0, Tier::analytic), ContractViolation);
    // A common coupling override makes the pair valid again.
    const schedule::PulseSchedule overridden{"x", 0.05, {{{0, 1}, 1.0, 0.03}}};
    REQUIRE_NOTHROW(execute(overridden, unequal, psi0, Tier::analytic));

    const schedule::PulseSchedule outside{"x", 0.05, {{{5}, 1.0, std::nullopt}}};
    REQUIRE_THROWS_AS(execute(outside, cfg, psi0, Tier::rwa), ContractViolation);
    REQUIRE_THROWS_AS(execute(schedule::PulseSchedule{"x", 0.05, {}}, cfg, psi0, Tier::rwa), ContractViolation);
    REQUIRE_THROWS_AS(execute(bell(), cfg, testing::ket(HilbertSpace(2, 4), "e,g,0"), Tier::rwa), SpaceMismatch);
}

TEST_CASE("population at the Fock cutoff is reported", "[exec]") {
    const BusConfig cfg{1.0, {{1.0, 0.05}, {1.0, 0.05}}, 2};
    const StateVector psi0 = testing::ket(cfg.space(), "e,e,2");
    const schedule::PulseSchedule s{"x", 0.05, {{{0}, 10.0, std::nullopt}}};
    REQUIRE_THROWS_AS(execute(s, cfg, psi0, Tier::analytic), TruncationError);
    REQUIRE_THROWS_AS(execute(s, cfg, psi0, Tier::rwa), TruncationError);
}

TEST_CASE("segment configuration tunes resonant qubits", "[exec]") {
    const BusConfig cfg = testing::default_bus();
    const schedule::Segment seg{{1}, 1.0, 0.02};
    const BusConfig w = segment_config(cfg, seg);
    REQUIRE(w.qubits[1].Omega == cfg.omega);
    REQUIRE(w.qubits[1].lambda == 0.02);
    REQUIRE(w.qubits[0].Omega == 1.3);
    REQUIRE(w.qubits[0].lambda == 0.05);
    ExecuteOptions off;
    off.idle_coupling = false;
    REQUIRE(segment_config(cfg, seg, off).qubits[0].lambda == 0.0);
}

TEST_CASE("idle frame drops the free precession of idle qubits", "[exec]") {
    const BusConfig cfg = testing::default_bus();
    const StateVector psi0 = testing::ket(cfg.space(), "e,g,e,0");
    ExecuteOptions framed;
    framed.idle_frame = true;
    const schedule::PulseSchedule s{"x", 0.05, {{{0}, 7.0, std::nullopt}, {{}, 3.0, std::nullopt}}};
    const StateVector out = execute(s, cfg, psi0, Tier::analytic, framed).final_state;
    const StateVector expected =
        analytic::free_resonator(analytic::jc_resonant_step(psi0, 0, 0.05, 1.0, 7.0), 1.0, 3.0);
    REQUIRE(max_abs_diff(out, expected) < 1e-14);

    ExecuteOptions decoupled_frame = framed;
    decoupled_frame.idle_coupling = false;
    REQUIRE(max_abs_diff(execute(s, cfg, psi0, Tier::rwa, decoupled_frame).final_state, out) < 1e-9);
}
