// Acceptance suite: one binary, one pass/fail line per criterion.
//
//   1 closed-form spectrum equals the numeric spectrum (1e-10, under 5 s)
//   2 the symmetric point (2/3, 2/3) is feasible and maximal
//   3 bisection boundary matches the quadratic root; sweep boundary within
//     one grid step
//   4 the pure-state cloner oracle saturates the frontier
//   5 no signaling for the universal family; the aligned control signals
//     by exactly t/2
//   6 the nine tensor conditions: axis patterns and covariant nullspace
//   7 covariance and rotation-invariance residuals
//   8 end-to-end CLI: verify exits 0, sweep finds the symmetric optimum,
//     pipeline under 60 s

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include <cloneray/cloneray.hpp>

using namespace cloneray;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title, const std::function<void()>& body) {
    const auto start = Clock::now();
    std::string failure;
    try {
        body();
    } catch (const std::exception& e) {
        failure = e.what();
    } catch (...) {
        failure = "unknown error";
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (failure.empty()) {
        std::printf("[PASS] criterion %d: %s (%.2f s)\n", number, title.c_str(), elapsed);
    } else {
        std::printf("[FAIL] criterion %d: %s (%.2f s)\n       %s\n", number, title.c_str(), elapsed,
                    failure.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLONERAY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    CliResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void criterion_spectrum_equivalence() {
    const auto start = Clock::now();
    Rng rng(42);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const CloneFamilyParams p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                  rng.uniform(-1.0, 1.0 / 3.0), rng.uniform(-0.5, 0.5)};
        const auto closed = eigen_closed_form(p);
        const auto numeric = hermitian_eigenvalues(universal_output(kZAxis, p)).eigenvalues;
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(closed[k] - numeric[k]));
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    require(worst < 1e-10, "max spectrum deviation " + fmt(worst));
    require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s exceeds 5 s");
}

void criterion_symmetric_optimum() {
    const double s = 2.0 / 3.0;
    require(feasible({s, s, 1.0 / 3.0, 0.0}, 1e-10).ok, "symmetric point reported infeasible");
    require(min_eigenvalue_closed_form({s, s, 1.0 / 3.0, 0.0}) >= -1e-10,
            "symmetric point minimum eigenvalue below -1e-10");
    require(is_psd(universal_output(kZAxis, {s, s, 1.0 / 3.0, 0.0}), 1e-10).psd,
            "numeric positivity check failed at the symmetric point");

    const double eps = 1e-3;
    for (double t : t_scan_values(1e-3)) {
        const CloneFamilyParams p{s + eps, s + eps, t, 0.0};
        require(!feasible(p, 1e-10).ok,
                "point above the symmetric optimum feasible at t = " + fmt(t));
        require(!is_psd(universal_output(kZAxis, p), 1e-10).psd,
                "numeric positivity disagrees at t = " + fmt(t));
    }
}

void criterion_frontier_match() {
    for (double t_xy : {0.0, 0.1}) {
        for (int i = 0; i <= 10; ++i) {
            const double s0 = 0.1 * i;
            const BoundaryResult numeric = boundary(s0, t_xy);
            const BoundaryResult closed = boundary_closed_form(s0, t_xy);
            require(numeric.exists == closed.exists,
                    "existence mismatch at s0 = " + fmt(s0) + ", t_xy = " + fmt(t_xy));
            if (numeric.exists)
                require(std::abs(numeric.s1 - closed.s1) < 1e-8,
                        "bisection vs closed form differ by " + fmt(std::abs(numeric.s1 - closed.s1)));
        }
    }

    // full sweep boundary within one grid step of the closed-form root
    for (double t_xy : {0.0, 0.1}) {
        GridSpec grid;
        grid.t_xy = t_xy;
        const auto records = sweep(grid, SweepMode::eq12_rule);
        const auto s_values = grid_values(grid.s_min, grid.s_max, grid.s_step);
        const std::size_t n = s_values.size();
        for (std::size_t i = 0; i < n; ++i) {
            double column_boundary = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                const FeasibilityRecord& r = records[i * n + j];
                if (r.feasible) column_boundary = std::max(column_boundary, r.s1);
            }
            const BoundaryResult closed = boundary_closed_form(s_values[i], t_xy);
            if (!closed.exists) {
                require(column_boundary < 0.0,
                        "sweep found feasible points where no boundary exists, s0 = " + fmt(s_values[i]));
            } else {
                require(column_boundary >= 0.0, "no feasible points at s0 = " + fmt(s_values[i]));
                require(std::abs(column_boundary - closed.s1) <= grid.s_step + 1e-12,
                        "sweep boundary off by " + fmt(std::abs(column_boundary - closed.s1)));
            }
        }
    }
}

void criterion_oracle_saturation() {
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        const double b = static_cast<double>(i) / 49.0;
        const AsymmetryWeights w = weights_from_b(b);
        const SaturationReport rep = verify_saturation(w, 20, rng);
        require(rep.input_independence < 1e-10,
                "input dependence " + fmt(rep.input_independence) + " at b = " + fmt(b));
        require(rep.sum_rule_residual < 1e-10,
                "t differs from s0 + s1 - 1 by " + fmt(rep.sum_rule_residual));
        require(rep.frontier_residual < 1e-10, "frontier residual " + fmt(rep.frontier_residual));
        require(rep.max_abs_t_xy < 1e-12, "antisymmetric correlation " + fmt(rep.max_abs_t_xy));
        require(rep.shrink0_vs_weights < 1e-10,
                "s0 vs 1 - b^2 residual " + fmt(rep.shrink0_vs_weights));
        require(rep.shrink1_vs_weights < 1e-10,
                "s1 vs 1 - a^2 residual " + fmt(rep.shrink1_vs_weights));
    }
}

void criterion_no_signaling() {
    Rng rng(42);
    for (double t_xy : {0.0, 0.2}) {
        for (int trial = 0; trial < 100; ++trial) {
            const CloneFamilyParams p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                      rng.uniform(-1.0, 1.0 / 3.0), t_xy};
            const MixtureReport rep = signaling_distance(universal_channel(p),
                                                         sample_unit_vector(rng),
                                                         sample_unit_vector(rng));
            require(rep.trace_distance < 1e-12,
                    "universal family mixture distance " + fmt(rep.trace_distance));
        }
    }
    for (double t : {0.1, 4.0 / 9.0, -0.3, 0.75}) {
        const MixtureReport rep = signaling_distance(aligned_control_family(0.5, 0.5, t), kZAxis, kXAxis);
        require(std::abs(rep.trace_distance - std::abs(t) / 2.0) < 1e-12,
                "aligned control distance " + fmt(rep.trace_distance) + " at t = " + fmt(t));
    }
}

void criterion_tensor_conditions() {
    const std::array<bool, 9> z_zeros{false, false, true, false, false, true, true, true, false};
    const std::array<bool, 9> x_zeros{false, true, true, true, false, false, true, false, false};
    const auto check_axis = [&](InputAxis axis, const std::array<bool, 9>& zeros,
                                std::pair<int, int> eq, std::pair<int, int> opp, int free_entry) {
        const AxisConstraintReport rep = axis_constraints(axis);
        require(rep.nullspace_dim == 3, "nullspace dimension");
        require(rep.forced_zero == zeros, "zero pattern mismatch");
        require(rep.equal_pairs == std::vector<std::pair<int, int>>{eq}, "equal-pair mismatch");
        require(rep.opposite_pairs == std::vector<std::pair<int, int>>{opp}, "opposite-pair mismatch");
        require(rep.free_entries == std::vector<int>{free_entry}, "free-entry mismatch");
    };
    check_axis(InputAxis::up, z_zeros, {0, 4}, {1, 3}, 8);
    check_axis(InputAxis::down, z_zeros, {0, 4}, {1, 3}, 8);
    check_axis(InputAxis::right, x_zeros, {4, 8}, {5, 7}, 0);
    check_axis(InputAxis::left, x_zeros, {4, 8}, {5, 7}, 0);

    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const BlochVector m = sample_unit_vector(rng);
        const auto image = apply_system(tjk_linear_system(m),
                                        tensor_as_vector(covariant_tensor(
                                            rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), m)));
        for (double x : image)
            require(std::abs(x) < 1e-12, "covariant tensor not annihilated: " + fmt(std::abs(x)));
    }
}

void criterion_covariance_invariance() {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const CloneFamilyParams p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                                  rng.uniform(-1.0, 1.0 / 3.0), rng.uniform(-0.5, 0.5)};
        const Rotation r = sample_rotation(rng);
        const BlochVector m = sample_unit_vector(rng);
        const double cov = covariance_residual(p, r, m);
        require(cov < 1e-12, "covariance residual " + fmt(cov));
        const double inv = invariance_residual(universal_output(m, p), m, rng.uniform(0.0, 6.28));
        require(inv < 1e-12, "invariance residual " + fmt(inv));
    }
}

void criterion_end_to_end() {
    const auto start = Clock::now();
    const CliResult verify = run_cli("verify");
    require(verify.exit_code == 0, "verify exited " + std::to_string(verify.exit_code));

    const CliResult swept = run_cli("sweep --out acceptance_frontier.csv");
    require(swept.exit_code == 0, "sweep exited " + std::to_string(swept.exit_code));
    const auto summary = nlohmann::json::parse(swept.out);
    const double max_symmetric = summary.at("max_symmetric_feasible_s").get<double>();
    require(std::abs(max_symmetric - 2.0 / 3.0) <= 0.005,
            "max symmetric feasible s = " + fmt(max_symmetric));
    std::remove("acceptance_frontier.csv");

    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    require(elapsed < 60.0, "pipeline took " + fmt(elapsed) + " s");
}

}  // namespace

int main() {
    run_criterion(1, "spectrum equivalence over 10^4 random parameter points",
                  criterion_spectrum_equivalence);
    run_criterion(2, "symmetric optimum at s0 = s1 = 2/3", criterion_symmetric_optimum);
    run_criterion(3, "frontier boundary: bisection, closed form and sweep agree",
                  criterion_frontier_match);
    run_criterion(4, "pure-state oracle saturates the frontier", criterion_oracle_saturation);
    run_criterion(5, "no signaling for universal mixtures; control signals t/2",
                  criterion_no_signaling);
    run_criterion(6, "tensor conditions: axis patterns and covariant nullspace",
                  criterion_tensor_conditions);
    run_criterion(7, "covariance and rotation invariance", criterion_covariance_invariance);
    run_criterion(8, "end-to-end verify and sweep through the CLI", criterion_end_to_end);

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: 8/8 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d of 8 criteria FAILED\n", g_failures);
    return 1;
}
