// cloneray: verification suites, feasibility sweeps, the pure-state cloner
// oracle and the no-signaling bench, with machine-readable JSON reports.
//
// Exit codes: 0 all checks pass, 1 a check failed (or I/O error),
// 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <cloneray/cloneray.hpp>

using nlohmann::ordered_json;
using namespace cloneray;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("CLONERAY_SEED")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return parsed;
        std::cerr << "warning: ignoring malformed CLONERAY_SEED\n";
    }
    return flag_value;
}

int write_report(const ordered_json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out_path);
    if (!file) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return 1;
    }
    file << text;
    file.flush();
    return file.good() ? 0 : 1;
}

ordered_json json_vec(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

std::string violation_message(const std::vector<CloneInequality>& violated) {
    std::string msg;
    for (CloneInequality ineq : violated) {
        if (!msg.empty()) msg += "; ";
        const std::string label = inequality_label(ineq);  // "eq9" -> "Eq.9"
        msg += "Eq." + label.substr(2) + " violated";
    }
    return msg;
}

// ---------------------------------------------------------------------------

int cmd_verify_point(const CloneFamilyParams& p, double tol, const std::string& out_path) {
    const FeasibilityVerdict verdict = feasible(p, tol);
    const auto eigenvalues = eigen_closed_form(p);
    const PsdVerdict numeric = is_psd(universal_output(kZAxis, p), tol);

    ordered_json report;
    report["command"] = "verify";
    report["mode"] = "point";
    report["params"] = {{"s0", p.s0}, {"s1", p.s1}, {"t", p.t}, {"t_xy", p.t_xy}};
    report["tolerance"] = tol;
    report["feasible"] = verdict.ok;
    auto violated = ordered_json::array();
    for (CloneInequality ineq : verdict.violated) violated.push_back(inequality_label(ineq));
    report["violated"] = violated;
    report["message"] = verdict.ok ? "feasible" : violation_message(verdict.violated);
    report["eigenvalues"] = eigenvalues;
    report["min_eigenvalue"] = eigenvalues[0];
    report["frontier_lhs"] = frontier_lhs(p.s0, p.s1, p.t_xy);
    report["psd_cross_check_agrees"] = (numeric.psd == verdict.ok);

    const int io = write_report(report, out_path);
    if (io != 0) return io;
    if (!verdict.ok) std::cerr << report["message"].get<std::string>() << "\n";
    return verdict.ok ? 0 : 1;
}

int cmd_verify_suite(std::uint64_t seed, double tol, int samples, const std::string& out_path) {
    const auto start = Clock::now();
    const std::vector<CheckResult> checks = run_verification_suite(seed, tol, samples);

    ordered_json report;
    report["command"] = "verify";
    report["mode"] = "suite";
    report["seed"] = seed;
    report["tolerance"] = tol;
    report["samples"] = samples;
    auto arr = ordered_json::array();
    bool all_pass = true;
    for (const CheckResult& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"max_residual", c.max_residual},
                       {"samples", c.samples}});
        all_pass = all_pass && c.pass;
    }
    report["checks"] = arr;
    report["all_pass"] = all_pass;
    report["elapsed_seconds"] = seconds_since(start);

    const int io = write_report(report, out_path);
    if (io != 0) return io;
    return all_pass ? 0 : 1;
}

int cmd_sweep(const GridSpec& grid, SweepMode mode, TableFormat format, std::string out_path) {
    const auto start = Clock::now();
    const std::vector<FeasibilityRecord> records = sweep(grid, mode);

    if (out_path.empty()) out_path = format == TableFormat::csv ? "frontier.csv" : "frontier.json";
    {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return 1;
        }
        file << emit_frontier(records, format);
        file.flush();
        if (!file.good()) {
            std::cerr << "error: failed writing " << out_path << "\n";
            return 1;
        }
    }

    long feasible_count = 0;
    double max_symmetric = -1.0;
    for (const FeasibilityRecord& r : records) {
        if (!r.feasible) continue;
        ++feasible_count;
        if (r.s0 == r.s1 && r.s0 > max_symmetric) max_symmetric = r.s0;
    }

    ordered_json summary;
    summary["command"] = "sweep";
    summary["mode"] = mode == SweepMode::eq12_rule ? "eq12" : "scan";
    summary["grid"] = {{"s_min", grid.s_min},         {"s_max", grid.s_max},
                       {"s_step", grid.s_step},       {"t_scan_step", grid.t_scan_step},
                       {"t_xy", grid.t_xy},           {"psd_tol", grid.psd_tol}};
    summary["points"] = records.size();
    summary["feasible_count"] = feasible_count;
    summary["feasible_fraction"] = static_cast<double>(feasible_count) / records.size();
    summary["max_symmetric_feasible_s"] = max_symmetric;
    summary["out"] = out_path;
    summary["format"] = format == TableFormat::csv ? "csv" : "json";
    summary["elapsed_seconds"] = seconds_since(start);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_clone(std::uint64_t seed, double b, int samples, const std::string& out_path) {
    const AsymmetryWeights w = weights_from_b(b);
    Rng rng(seed);
    const SaturationReport rep = verify_saturation(w, samples, rng);

    const double worst = std::max({rep.input_independence, rep.sum_rule_residual,
                                   rep.frontier_residual, rep.max_abs_t_xy, rep.max_anisotropy,
                                   rep.shrink0_vs_weights, rep.shrink1_vs_weights});
    const bool pass = worst <= 1e-9;

    ordered_json report;
    report["command"] = "clone";
    report["seed"] = seed;
    report["b"] = rep.b;
    report["a"] = rep.a;
    report["samples"] = rep.samples;
    report["s0"] = rep.s0;
    report["s1"] = rep.s1;
    report["t"] = rep.t;
    report["t_xy_max_abs"] = rep.max_abs_t_xy;
    report["frontier_lhs"] = frontier_lhs(rep.s0, rep.s1, 0.0);
    report["frontier_residual"] = rep.frontier_residual;
    report["sum_rule_residual"] = rep.sum_rule_residual;
    report["input_independence_residual"] = rep.input_independence;
    report["tensor_anisotropy"] = rep.max_anisotropy;
    report["isotropy_residual"] = rep.max_isotropy_residual;
    report["expected_s0"] = 1.0 - rep.b * rep.b;
    report["expected_s1"] = 1.0 - rep.a * rep.a;
    report["s0_vs_expected"] = rep.shrink0_vs_weights;
    report["s1_vs_expected"] = rep.shrink1_vs_weights;
    report["pass"] = pass;

    const int io = write_report(report, out_path);
    if (io != 0) return io;
    return pass ? 0 : 1;
}

int cmd_signal(std::uint64_t seed, const std::string& family, const CloneFamilyParams& p,
               long shots, int random_pairs, double tol, const std::string& out_path) {
    const CloneChannel channel = family == "aligned"
                                     ? aligned_control_family(p.s0, p.s1, p.t)
                                     : universal_channel(p);

    Rng rng(seed);
    std::vector<std::pair<BlochVector, BlochVector>> bases;
    bases.emplace_back(kZAxis, kXAxis);
    for (int i = 0; i < random_pairs; ++i)
        bases.emplace_back(sample_unit_vector(rng), sample_unit_vector(rng));

    ordered_json report;
    report["command"] = "signal";
    report["seed"] = seed;
    report["family"] = family;
    report["params"] = {{"s0", p.s0}, {"s1", p.s1}, {"t", p.t}, {"t_xy", p.t_xy}};
    report["tolerance"] = tol;

    auto pairs = ordered_json::array();
    double max_distance = 0.0;
    for (const auto& [m1, m2] : bases) {
        const MixtureReport mix = signaling_distance(channel, m1, m2, tol);
        pairs.push_back({{"m1", json_vec(m1)},
                         {"m2", json_vec(m2)},
                         {"trace_distance", mix.trace_distance},
                         {"max_entry_diff", mix.max_entry_diff},
                         {"signaling", mix.signaling}});
        max_distance = std::max(max_distance, mix.trace_distance);
    }
    report["pairs"] = pairs;
    report["max_distance"] = max_distance;
    if (family == "aligned") report["expected_orthogonal_distance"] = std::abs(p.t) / 2.0;

    if (shots > 0) {
        const RemotePreparationReport demo_z = remote_preparation_demo(channel, kZAxis, shots, seed);
        const RemotePreparationReport demo_x = remote_preparation_demo(channel, kXAxis, shots, seed + 1);
        ordered_json mc;
        mc["shots"] = shots;
        mc["basis_pair"] = ordered_json::array({json_vec(kZAxis), json_vec(kXAxis)});
        mc["distance_to_exact_mixture"] = ordered_json::array({demo_z.distance, demo_x.distance});
        mc["empirical_distance"] = trace_distance(demo_z.average, demo_x.average);
        mc["exact_distance"] = signaling_distance(channel, kZAxis, kXAxis, tol).trace_distance;
        report["monte_carlo"] = mc;
    }

    const bool pass = family == "aligned" || max_distance <= tol;
    report["pass"] = pass;

    const int io = write_report(report, out_path);
    if (io != 0) return io;
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal asymmetric qubit cloning: verification, sweeps, oracle, signaling bench"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    double tol = 1e-10;
    std::string out_path;

    // verify
    auto* verify = app.add_subcommand("verify", "run the constraint verification suites");
    double v_s0 = 0.0, v_s1 = 0.0, v_t = 0.0, v_txy = 0.0;
    int v_samples = 100;
    auto* verify_seed = verify->add_option("--seed", seed, "random seed (CLONERAY_SEED overrides default)");
    verify->add_option("--tol", tol, "pass/fail tolerance")->check(CLI::PositiveNumber);
    auto* opt_s0 = verify->add_option("--s0", v_s0, "point check: reduction factor of the original");
    auto* opt_s1 = verify->add_option("--s1", v_s1, "point check: reduction factor of the copy");
    auto* opt_t = verify->add_option("--t", v_t, "point check: isotropic correlation");
    auto* opt_txy = verify->add_option("--txy", v_txy, "point check: antisymmetric correlation");
    verify->add_option("--samples", v_samples, "samples per randomized suite")->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "write the JSON report here instead of stdout");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "feasibility sweep over the (s0, s1) grid");
    GridSpec grid;
    std::string sweep_mode = "eq12";
    std::string sweep_format = "csv";
    sweep_cmd->add_option("--grid-step", grid.s_step, "grid step for s0 and s1")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--tscan-step", grid.t_scan_step, "t step for scan mode")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--txy", grid.t_xy, "antisymmetric correlation of the swept family");
    sweep_cmd->add_option("--tol", grid.psd_tol, "positivity tolerance")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--mode", sweep_mode, "t selection rule")
        ->check(CLI::IsMember({"eq12", "scan"}));
    sweep_cmd->add_option("--format", sweep_format, "output table format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", out_path, "output table path (default frontier.csv/.json)");

    // clone
    auto* clone_cmd = app.add_subcommand("clone", "run the pure-state cloner oracle");
    double clone_b = 1.0 / std::sqrt(3.0);
    int clone_samples = 20;
    auto* clone_seed = clone_cmd->add_option("--seed", seed, "random seed");
    clone_cmd->add_option("--b", clone_b, "asymmetry weight b in [0, 1]")->check(CLI::Range(0.0, 1.0));
    clone_cmd->add_option("--samples", clone_samples, "random input states")->check(CLI::PositiveNumber);
    clone_cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");

    // signal
    auto* signal_cmd = app.add_subcommand("signal", "no-signaling bench over basis pairs");
    std::string family = "universal";
    CloneFamilyParams sp{2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
    long shots = 0;
    int random_pairs = 20;
    double signal_tol = 1e-12;
    auto* signal_seed = signal_cmd->add_option("--seed", seed, "random seed");
    signal_cmd->add_option("--family", family, "channel family")
        ->check(CLI::IsMember({"universal", "aligned"}));
    signal_cmd->add_option("--s0", sp.s0, "reduction factor of the original");
    signal_cmd->add_option("--s1", sp.s1, "reduction factor of the copy");
    signal_cmd->add_option("--t", sp.t, "correlation strength");
    signal_cmd->add_option("--txy", sp.t_xy, "antisymmetric correlation (universal family)");
    signal_cmd->add_option("--shots", shots, "Monte-Carlo shots (0 = exact weighting)")
        ->check(CLI::NonNegativeNumber);
    signal_cmd->add_option("--pairs", random_pairs, "random basis pairs")->check(CLI::NonNegativeNumber);
    signal_cmd->add_option("--tol", signal_tol, "signaling tolerance")->check(CLI::PositiveNumber);
    signal_cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            const std::uint64_t s = resolve_seed(verify_seed->count() > 0, seed);
            const bool point_mode = opt_s0->count() || opt_s1->count() || opt_t->count() || opt_txy->count();
            if (point_mode) {
                const double t_value =
                    opt_t->count() ? v_t : maximality_t(v_s0, v_s1);
                return cmd_verify_point({v_s0, v_s1, t_value, v_txy}, tol, out_path);
            }
            return cmd_verify_suite(s, tol, v_samples, out_path);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return cmd_sweep(grid, sweep_mode == "scan" ? SweepMode::full_t_scan : SweepMode::eq12_rule,
                             sweep_format == "json" ? TableFormat::json : TableFormat::csv, out_path);
        }
        if (app.got_subcommand(clone_cmd)) {
            const std::uint64_t s = resolve_seed(clone_seed->count() > 0, seed);
            return cmd_clone(s, clone_b, clone_samples, out_path);
        }
        if (app.got_subcommand(signal_cmd)) {
            const std::uint64_t s = resolve_seed(signal_seed->count() > 0, seed);
            return cmd_signal(s, family, sp, shots, random_pairs, signal_tol, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
