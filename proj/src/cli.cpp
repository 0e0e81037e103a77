#include "cqbus/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cqbus/errors.hpp"
#include "cqbus/executor.hpp"
#include "cqbus/params_io.hpp"
#include "cqbus/protocols.hpp"
#include "cqbus/report_io.hpp"

namespace cqbus::cli {

namespace {

using nlohmann::json;

struct Common {
    std::string params;
    std::string out;
    std::string format = "json";
    bool stamp = false;
};

void add_common(CLI::App* sub, Common& c, bool csv) {
    sub->add_option("--params", c.params, "parameter file (JSON); built-in defaults when omitted");
    sub->add_option("--out", c.out, "write the document here instead of stdout");
    sub->add_flag("--stamp", c.stamp, "add a UTC timestamp to meta");
    auto* fmt = sub->add_option("--format", c.format, "output format")->capture_default_str();
    fmt->check(csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
}

io::Parameters load(const Common& c) {
    return c.params.empty() ? io::default_parameters() : io::load_parameters(c.params);
}

json inputs_for(const Common& c, const io::Parameters& p) {
    return {{"params_file", c.params.empty() ? json(nullptr) : json(c.params)}, {"parameters", io::to_json(p)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractViolation("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Emits the payload; the file is written only once everything succeeded.
void deliver(const Common& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ContractViolation("cannot write '" + c.out + "'");
    f << text;
    if (!f) throw ContractViolation("write to '" + c.out + "' failed");
}

void need_qubits(const io::Parameters& p, std::size_t n, const std::string& what) {
    if (p.bus.qubits.size() < n) {
        throw ContractViolation(what + " needs at least " + std::to_string(n) + " qubits in the parameters");
    }
}

std::string cmd_run(const std::string& schedule_file, const std::string& tier_text, const std::string& init,
                    std::optional<double> lambda, bool decouple_idle, const Common& c) {
    const io::Parameters p = load(c);
    const Tier tier = parse_tier(tier_text);
    const double binding = lambda.value_or(p.lambda_binding);
    const schedule::PulseSchedule s =
        schedule::compile(schedule::parse(read_file(schedule_file)), binding, p.bus.qubits.size());
    const StateVector psi0 = StateVector::from_label(p.bus.space(), init);
    ExecuteOptions options;
    options.idle_coupling = !decouple_idle;
    const ExecutionResult r = execute(s, p.bus, psi0, tier, options);

    json trace = json::array();
    double t = 0.0;
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        t += s.segments[k].duration;
        trace.push_back({{"segment", k},
                         {"resonant", s.segments[k].resonant},
                         {"duration", s.segments[k].duration},
                         {"elapsed", t},
                         {"resonator_leakage", resonator_leakage(r.trace[k])},
                         {"state", io::to_json(r.trace[k])}});
    }
    json inputs = inputs_for(c, p);
    inputs["schedule_file"] = schedule_file;
    inputs["tier"] = to_string(tier);
    inputs["init"] = init;
    inputs["idle_coupling"] = options.idle_coupling;
    inputs["schedule"] = io::to_json(s);
    json results = {{"final_state", io::to_json(r.final_state)},
                    {"resonator_leakage", resonator_leakage(r.final_state)},
                    {"trace", trace}};
    return io::dump(io::make_document("run", inputs, results, c.stamp));
}

std::string protocol_document(const std::string& command, const protocols::ProtocolReport& report,
                              const io::Parameters& p, const Common& c, json extra_inputs) {
    json inputs = inputs_for(c, p);
    for (auto& [k, v] : extra_inputs.items()) inputs[k] = v;
    inputs["tier"] = to_string(report.tier);
    return io::dump(io::make_document(command, inputs, io::to_json(report), c.stamp));
}

std::string cmd_phase_gate(const std::string& tier_text, std::vector<std::size_t> pair, const Common& c) {
    const io::Parameters p = load(c);
    need_qubits(p, 2, "phase-gate");
    const auto report = protocols::phase_gate(pair.at(0), pair.at(1), p.bus, parse_tier(tier_text));
    return protocol_document("phase-gate", report, p, c, {{"qubits", pair}});
}

std::string cmd_bell(const std::string& tier_text, std::vector<std::size_t> pair, const Common& c) {
    const io::Parameters p = load(c);
    need_qubits(p, 2, "bell");
    const auto report = protocols::bell_protocol(pair.at(0), pair.at(1), p.bus, parse_tier(tier_text));
    return protocol_document("bell", report, p, c, {{"qubits", pair}});
}

std::string cmd_wstate(const std::string& tier_text, std::vector<std::size_t> triple, const Common& c) {
    const io::Parameters p = load(c);
    need_qubits(p, 3, "wstate");
    const auto report =
        protocols::w_protocol(triple.at(0), triple.at(1), triple.at(2), p.bus, parse_tier(tier_text));
    return protocol_document("wstate", report, p, c, {{"qubits", triple}});
}

std::string cmd_spectrum(int n, const Common& c) {
    if (n < 0) throw ContractViolation("--n must be non-negative");
    const io::Parameters p = load(c);
    const double omega = p.bus.omega;
    const double lambda = p.lambda_binding;

    const PairManifold m = two_qubit_resonant_eigensystem(n, omega, lambda);
    BusConfig cfg{omega, {{omega, lambda}, {omega, lambda}}, std::max<std::size_t>(p.bus.fock_cutoff, n)};
    const HilbertSpace space = cfg.space();
    const HermitianOperator h = build_multi(cfg);
    const auto idx = manifold_indices(space, static_cast<std::size_t>(n));
    const CMatrix block = extract_block(h, idx);
    const Eigen::SelfAdjointEigenSolver<CMatrix> solver(block);
    const Eigen::VectorXd numeric = solver.eigenvalues();

    // Embed the closed-form eigenvectors in the block's index order.
    CMatrix vecs = CMatrix::Zero(static_cast<Eigen::Index>(idx.size()), m.vectors.cols());
    for (std::size_t b = 0; b < m.basis.size(); ++b) {
        const std::array<QubitLevel, 2> q{m.basis[b].first, m.basis[b].second};
        const std::size_t full = space.index(q, m.basis[b].photons);
        const auto pos = std::find(idx.begin(), idx.end(), full) - idx.begin();
        vecs.row(pos) = m.vectors.row(static_cast<Eigen::Index>(b));
    }

    Eigen::VectorXd sorted = m.energies;
    std::sort(sorted.data(), sorted.data() + sorted.size());

    std::vector<std::vector<json>> rows;
    json levels = json::array();
    for (Eigen::Index k = 0; k < m.energies.size(); ++k) {
        const double e = m.energies(k);
        const double residual = (block * vecs.col(k) - e * vecs.col(k)).norm();
        // Numeric partner: same rank in the sorted lists.
        const auto rank = std::lower_bound(sorted.data(), sorted.data() + sorted.size(), e) - sorted.data();
        const double num = numeric(rank);
        levels.push_back({{"level", m.labels[k]}, {"analytic", e}, {"numeric", num},
                          {"abs_diff", std::abs(e - num)}, {"residual", residual}});
        rows.push_back({m.labels[k], e, num, std::abs(e - num), residual});
    }
    if (c.format == "csv") {
        return io::to_csv({"level", "analytic", "numeric", "abs_diff", "residual"}, rows);
    }
    json inputs = inputs_for(c, p);
    inputs["n"] = n;
    inputs["fock_cutoff_used"] = cfg.fock_cutoff;
    json results = {{"manifold", n}, {"dimension", idx.size()}, {"levels", levels}};
    return io::dump(io::make_document("spectrum", inputs, results, c.stamp));
}

std::string cmd_dispersive(const std::vector<double>& ratios, const Common& c) {
    const io::Parameters p = load(c);
    const double lambda = p.lambda_binding;
    std::vector<std::vector<json>> rows;
    json table = json::array();
    for (double r : ratios) {
        if (!(r > 0)) throw ContractViolation("dispersive ratios must be positive");
        const double delta = r * lambda;
        const double bound = protocols::dispersive_leakage_bound(lambda, delta);
        const double observed = protocols::observed_max_transfer(lambda, delta, p.bus.omega);
        rows.push_back({r, lambda, delta, bound, observed, std::abs(bound - observed)});
        table.push_back({{"delta_over_lambda", r}, {"lambda", lambda}, {"delta", delta}, {"bound", bound},
                         {"observed", observed}, {"abs_diff", std::abs(bound - observed)}});
    }
    if (c.format == "csv") {
        return io::to_csv({"delta_over_lambda", "lambda", "delta", "bound", "observed", "abs_diff"}, rows);
    }
    json inputs = inputs_for(c, p);
    inputs["ratios"] = ratios;
    return io::dump(io::make_document("dispersive", inputs, {{"table", table}}, c.stamp));
}

std::string cmd_device(const Common& c) {
    const io::Parameters p = load(c);
    if (p.mode != "si") throw ContractViolation("device needs SI parameters ({\"si\": ...})");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const device::DeviceParams& first = p.devices.front();
    json qubits = json::array();
    for (std::size_t k = 0; k < p.devices.size(); ++k) {
        const device::DeviceParams& d = p.devices[k];
        const QubitDrive& q = p.bus.qubits[k];
        qubits.push_back({{"n_g", d.gate_charge},
                          {"flux_ratio", d.flux_ratio},
                          {"Omega", q.Omega},
                          {"Omega_hz", q.Omega / two_pi},
                          {"eta", q.eta},
                          {"lambda", q.lambda},
                          {"lambda_hz", q.lambda / two_pi},
                          {"detuning", q.Omega - p.bus.omega},
                          {"charge_regime_warning", d.charge_regime_warning()}});
    }
    json results = {{"E_c", first.charging_energy},
                    {"E_c_joules", first.charging_energy * device::constants::hbar},
                    {"E_J", first.josephson_energy},
                    {"omega_k", p.bus.omega},
                    {"omega_k_hz", p.bus.omega / two_pi},
                    {"qubits", qubits}};
    return io::dump(io::make_document("device", inputs_for(c, p), results, c.stamp));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Charge qubits on a shared resonator bus: schedules, protocols and checks", "cqbus"};
    app.require_subcommand(1);

    std::function<std::string()> action;

    Common run_c;
    std::string sched_file, run_tier = "analytic", init;
    std::optional<double> lambda;
    bool decouple = false;
    auto* run_cmd = app.add_subcommand("run", "execute a schedule file");
    run_cmd->add_option("schedule", sched_file, "schedule (.sched) file")->required();
    run_cmd->add_option("--tier", run_tier, "analytic|rwa|lab")->capture_default_str();
    run_cmd->add_option("--init", init, "initial ket, e.g. e,g,0 (default: all g, vacuum)");
    run_cmd->add_option("--lambda", lambda, "value bound to `lambda` (default: from parameters)");
    run_cmd->add_flag("--decouple-idle", decouple, "numeric tiers: zero the coupling of idle qubits");
    add_common(run_cmd, run_c, false);
    run_cmd->callback([&] {
        action = [&] {
            std::string ket = init;
            if (ket.empty()) {
                const io::Parameters p = load(run_c);
                for (std::size_t q = 0; q < p.bus.qubits.size(); ++q) ket += "g,";
                ket += "0";
            }
            return cmd_run(sched_file, run_tier, ket, lambda, decouple, run_c);
        };
    });

    Common pg_c;
    std::string pg_tier = "analytic";
    std::vector<std::size_t> pg_pair{0, 1};
    auto* pg = app.add_subcommand("phase-gate", "two-qubit phase gate from three resonant windows");
    pg->add_option("--tier", pg_tier, "analytic|rwa|lab")->capture_default_str();
    pg->add_option("--qubits", pg_pair, "qubit pair i j")->expected(2)->capture_default_str();
    add_common(pg, pg_c, false);
    pg->callback([&] { action = [&] { return cmd_phase_gate(pg_tier, pg_pair, pg_c); }; });

    Common bell_c;
    std::string bell_tier = "analytic";
    std::vector<std::size_t> bell_pair{0, 1};
    auto* bell = app.add_subcommand("bell", "Bell state from |e,g,0>");
    bell->add_option("--tier", bell_tier, "analytic|rwa|lab")->capture_default_str();
    bell->add_option("--qubits", bell_pair, "qubit pair i j")->expected(2)->capture_default_str();
    add_common(bell, bell_c, false);
    bell->callback([&] { action = [&] { return cmd_bell(bell_tier, bell_pair, bell_c); }; });

    Common w_c;
    std::string w_tier = "analytic";
    std::vector<std::size_t> w_qubits{0, 1, 2};
    auto* w = app.add_subcommand("wstate", "three-qubit W state from |g,g,e,0>");
    w->add_option("--tier", w_tier, "analytic|rwa|lab")->capture_default_str();
    w->add_option("--qubits", w_qubits, "qubits i j k (k starts excited)")->expected(3)->capture_default_str();
    add_common(w, w_c, false);
    w->callback([&] { action = [&] { return cmd_wstate(w_tier, w_qubits, w_c); }; });

    Common sp_c;
    int manifold = 1;
    auto* sp = app.add_subcommand("spectrum", "closed-form vs numeric levels of a joint-resonance manifold");
    sp->add_option("--n", manifold, "excitation number")->capture_default_str();
    add_common(sp, sp_c, true);
    sp->callback([&] { action = [&] { return cmd_spectrum(manifold, sp_c); }; });

    Common dp_c;
    dp_c.format = "csv";
    std::vector<double> ratios{3, 10, 100};
    auto* dp = app.add_subcommand("dispersive", "leakage bound vs observed transfer of a detuned qubit");
    dp->add_option("--ratios", ratios, "Delta/lambda values")->delimiter(',')->capture_default_str();
    add_common(dp, dp_c, true);
    dp->callback([&] { action = [&] { return cmd_dispersive(ratios, dp_c); }; });

    Common dev_c;
    auto* dev = app.add_subcommand("device", "derived device quantities from SI parameters");
    add_common(dev, dev_c, false);
    dev->callback([&] { action = [&] { return cmd_device(dev_c); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    // Help on a subcommand ends up here with no action.
    if (!action) return kExitOk;

    try {
        const std::string text = action();
        const Common& c = run_cmd->parsed() ? run_c
                          : pg->parsed()    ? pg_c
                          : bell->parsed()  ? bell_c
                          : w->parsed()     ? w_c
                          : sp->parsed()    ? sp_c
                          : dp->parsed()    ? dp_c
                                            : dev_c;
        deliver(c, text, out);
        return kExitOk;
    } catch (const ScheduleError& e) {
        err << "schedule error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PhysicsError& e) {
        err << "physics error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const ContractViolation& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace cqbus::cli
