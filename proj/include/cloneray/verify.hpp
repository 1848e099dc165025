#pragma once

// Named verification suites over the cloning family. Each check draws its
// randomness from an explicit seed and reports the worst residual it saw;
// the CLI serializes these into the machine-readable report.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bloch.hpp"
#include "cloner.hpp"
#include "matrix.hpp"
#include "network.hpp"
#include "random.hpp"
#include "signaling.hpp"

namespace cloneray {

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    int samples = 0;
};

// Parameters drawn from the full admissible box (the family need not be a
// physical state for the algebraic identities to hold).
inline CloneFamilyParams sample_params(Rng& rng) {
    return {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(-1.0, 1.0 / 3.0),
            rng.uniform(-0.5, 0.5)};
}

// Marginals of the universal family reproduce the isotropic form with the
// expected reduction factors.
inline CheckResult check_isotropy(Rng rng, int samples, double tol) {
    CheckResult res{"eq1_isotropy", true, 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        const CloneFamilyParams p = sample_params(rng);
        const BlochVector m = sample_unit_vector(rng);
        const IsotropyEstimate est = isotropy_check(universal_output(m, p), m);
        const double residual = std::max({est.residual, std::abs(est.s0 - p.s0), std::abs(est.s1 - p.s1)});
        res.max_residual = std::max(res.max_residual, residual);
    }
    res.pass = res.max_residual < tol;
    return res;
}

inline CheckResult check_covariance(Rng rng, int samples, double tol) {
    CheckResult res{"eq3_covariance", true, 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        const CloneFamilyParams p = sample_params(rng);
        const Rotation r = sample_rotation(rng);
        const BlochVector m = sample_unit_vector(rng);
        res.max_residual = std::max(res.max_residual, covariance_residual(p, r, m));
    }
    res.pass = res.max_residual < tol;
    return res;
}

inline CheckResult check_invariance(Rng rng, int samples, double tol) {
    CheckResult res{"eq4_invariance", true, 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        const CloneFamilyParams p = sample_params(rng);
        const BlochVector m = sample_unit_vector(rng);
        const double alpha = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        res.max_residual = std::max(res.max_residual, invariance_residual(universal_output(m, p), m, alpha));
    }
    res.pass = res.max_residual < tol;
    return res;
}

// The four printed special-direction constraint patterns.
inline CheckResult check_axis_constraints(double /*tol*/) {
    CheckResult res{"eq5_axis_constraints", true, 0.0, 4};
    const auto expect = [](InputAxis axis, std::array<bool, 9> zeros,
                           std::pair<int, int> equal_pair, std::pair<int, int> opposite_pair,
                           int free_entry) {
        const AxisConstraintReport rep = axis_constraints(axis);
        if (rep.nullspace_dim != 3) return false;
        if (rep.forced_zero != zeros) return false;
        if (rep.equal_pairs != std::vector<std::pair<int, int>>{equal_pair}) return false;
        if (rep.opposite_pairs != std::vector<std::pair<int, int>>{opposite_pair}) return false;
        if (rep.free_entries != std::vector<int>{free_entry}) return false;
        return true;
    };
    // entry order: xx xy xz yx yy yz zx zy zz
    const std::array<bool, 9> z_axis_zeros{false, false, true, false, false, true, true, true, false};
    const std::array<bool, 9> x_axis_zeros{false, true, true, true, false, false, true, false, false};
    bool ok = expect(InputAxis::up, z_axis_zeros, {0, 4}, {1, 3}, 8);
    ok = expect(InputAxis::down, z_axis_zeros, {0, 4}, {1, 3}, 8) && ok;
    ok = expect(InputAxis::right, x_axis_zeros, {4, 8}, {5, 7}, 0) && ok;
    ok = expect(InputAxis::left, x_axis_zeros, {4, 8}, {5, 7}, 0) && ok;
    res.pass = ok;
    res.max_residual = ok ? 0.0 : 1.0;
    return res;
}

// The covariant tensor family is annihilated by the nine conditions at
// every direction, and the solution space is three-dimensional.
inline CheckResult check_nullspace(Rng rng, int samples, double tol) {
    CheckResult res{"eq5_nullspace", true, 0.0, samples};
    bool dims_ok = true;
    for (int i = 0; i < samples; ++i) {
        const BlochVector m = sample_unit_vector(rng);
        const double t = rng.uniform(-1.0, 1.0);
        const double t_xy = rng.uniform(-1.0, 1.0);
        const TensorSystem system = tjk_linear_system(m);
        const auto image = apply_system(system, tensor_as_vector(covariant_tensor(t, t_xy, m)));
        for (double x : image) res.max_residual = std::max(res.max_residual, std::abs(x));
        if (i < 8 && tjk_nullspace(system).size() != 3) dims_ok = false;
    }
    res.pass = dims_ok && res.max_residual < tol;
    return res;
}

inline CheckResult check_spectrum(Rng rng, int samples, double tol) {
    CheckResult res{"eq8_spectrum", true, 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        const CloneFamilyParams p = sample_params(rng);
        const auto closed = eigen_closed_form(p);
        const auto numeric = hermitian_eigenvalues(universal_output(kZAxis, p)).eigenvalues;
        for (int k = 0; k < 4; ++k)
            res.max_residual = std::max(res.max_residual, std::abs(closed[k] - numeric[k]));
    }
    res.pass = res.max_residual < tol;
    return res;
}

// Universal mixtures are basis independent (and t_xy independent); the
// aligned control shows the expected distance |t|/2 for orthogonal bases.
inline CheckResult check_no_signaling(Rng rng, int pairs, double tol) {
    CheckResult res{"eq6_no_signaling", true, 0.0, pairs};
    for (int i = 0; i < pairs; ++i) {
        const CloneFamilyParams p = sample_params(rng);
        const BlochVector m = sample_unit_vector(rng);
        const BlochVector m2 = sample_unit_vector(rng);
        const double dist = signaling_distance(universal_channel(p), m, m2, tol).trace_distance;
        res.max_residual = std::max(res.max_residual, dist);

        // mixtures must not see t_xy either
        CloneFamilyParams shifted = p;
        shifted.t_xy = p.t_xy + 0.2;
        const double txy_diff =
            (mixture_output(universal_channel(p), m) - mixture_output(universal_channel(shifted), m))
                .max_abs();
        res.max_residual = std::max(res.max_residual, txy_diff);
    }
    // negative control: orthogonal bases and a representative strength
    const double t_control = 4.0 / 9.0;
    const CloneChannel control = aligned_control_family(2.0 / 3.0, 2.0 / 3.0, t_control);
    const double control_dist = signaling_distance(control, kZAxis, kXAxis, tol).trace_distance;
    res.max_residual = std::max(res.max_residual, std::abs(control_dist - t_control / 2.0));
    res.pass = res.max_residual < tol;
    return res;
}

// The order here is the report order.
inline std::vector<CheckResult> run_verification_suite(std::uint64_t seed, double tol, int samples) {
    const Rng master(seed);
    std::vector<CheckResult> checks;
    checks.push_back(check_isotropy(master.spawn(1), samples, tol));
    checks.push_back(check_covariance(master.spawn(2), samples, tol));
    checks.push_back(check_invariance(master.spawn(3), samples, tol));
    checks.push_back(check_axis_constraints(tol));
    checks.push_back(check_nullspace(master.spawn(4), samples, tol));
    checks.push_back(check_spectrum(master.spawn(5), std::max(samples, 1000), tol));
    checks.push_back(check_no_signaling(master.spawn(6), samples, tol));
    return checks;
}

}  // namespace cloneray
